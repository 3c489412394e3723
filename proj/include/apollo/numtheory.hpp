#pragma once

// Integer number theory: Kronecker symbol, deterministic 64-bit primality,
// factorization, integer roots and sums of two squares.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "apollo/checked.hpp"
#include "apollo/errors.hpp"
#include "apollo/gaussian.hpp"

namespace apollo {

struct OddPart {
    int v2;       // exponent of 2
    int64_t odd;  // odd part, keeps the sign of the input
};

inline OddPart odd_part_and_v2(int64_t n) {
    if (n == 0) throw domain_error("odd_part_and_v2: argument must be nonzero");
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    return {v, n};
}

// Kronecker symbol (a | n), defined for all integers a and n.
inline int kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    auto [v, m] = odd_part_and_v2(n);
    int k = 1;
    if (v & 1) {
        int64_t r = mod_floor(a, 8);  // (a | 2) = +1 for a = 1,7 and -1 for a = 3,5 mod 8
        if (r == 3 || r == 5) k = -k;
    }
    if (m < 0) {
        m = checked::neg(m);  // (a | -1) is the sign of a
        if (a < 0) k = -k;
    }
    a = mod_floor(a, m);  // m odd positive now; m == 1 gives a = 0
    while (a != 0) {
        auto [va, ao] = odd_part_and_v2(a);
        if (va & 1) {
            int64_t r = m & 7;
            if (r == 3 || r == 5) k = -k;
        }
        if ((ao & 3) == 3 && (m & 3) == 3) k = -k;  // quadratic reciprocity
        int64_t t = mod_floor(m, ao);
        m = ao;
        a = t;
    }
    return m == 1 ? k : 0;
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((__uint128_t)a * b % m);
}

inline uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m) {
    if (m == 1) return 0;
    uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin over the full 64-bit range.
inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % p == 0) return n == p;
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t w : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        uint64_t x = powmod_u64(w % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s && witness; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

namespace detail {

// Nontrivial factor of an odd composite n, Brent's cycle variant of Pollard rho.
inline uint64_t pollard_brent(uint64_t n) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ n);
    for (;;) {
        uint64_t y = rng() % n, c = rng() % n;
        if (c == 0) c = 1;
        uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
        const uint64_t batch = 128;
        while (g == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            for (uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                uint64_t lim = std::min(batch, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
    }
}

inline void factor_into(uint64_t n, std::vector<uint64_t>& out) {
    while (n > 1) {
        if (is_prime(n)) {
            out.push_back(n);
            return;
        }
        uint64_t d = pollard_brent(n);
        factor_into(d, out);
        n /= d;
    }
}

}  // namespace detail

struct PrimePower {
    int64_t p;
    int e;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

// Prime factorization of n >= 1, primes ascending. Trial division below 10^4,
// then Pollard rho on whatever remains.
inline Factorization factor(int64_t n) {
    if (n < 1) throw domain_error("factor: argument must be positive");
    std::vector<uint64_t> primes;
    uint64_t m = (uint64_t)n;
    for (uint64_t d = 2; d < 10000 && d * d <= m; d = d == 2 ? 3 : d + 2)
        while (m % d == 0) {
            primes.push_back(d);
            m /= d;
        }
    if (m > 1) detail::factor_into(m, primes);
    std::sort(primes.begin(), primes.end());
    Factorization out;
    for (uint64_t p : primes) {
        if (!out.empty() && out.back().p == (int64_t)p)
            ++out.back().e;
        else
            out.push_back({(int64_t)p, 1});
    }
    return out;
}

inline int64_t isqrt(int64_t n) {
    if (n < 0) throw domain_error("isqrt: argument must be nonnegative");
    int64_t r = (int64_t)std::sqrt((double)n);
    while (r > 0 && (__int128)r * r > n) --r;
    while ((__int128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(int64_t n) {
    if (n < 0) return false;
    int64_t r = isqrt(n);
    return r * r == n;
}

// Exact integer k-th root of m >= 0 when one exists.
inline std::optional<int64_t> kth_root_exact(int64_t m, int k) {
    if (m < 0 || k < 1) throw domain_error("kth_root_exact: bad arguments");
    if (m < 2 || k == 1) return m;
    int64_t guess = (int64_t)std::llround(std::pow((double)m, 1.0 / k));
    for (int64_t c = std::max<int64_t>(1, guess - 2); c <= guess + 2; ++c) {
        __int128 p = 1;
        for (int i = 0; i < k && p <= m; ++i) p *= c;
        if (p == m) return c;
    }
    return std::nullopt;
}

namespace detail {

// t with t^2 = -1 mod p for prime p = 1 mod 4, via the first quadratic nonresidue.
inline uint64_t sqrt_minus_one(uint64_t p) {
    for (uint64_t a = 2;; ++a)
        if (powmod_u64(a, (p - 1) / 2, p) == p - 1) return powmod_u64(a, (p - 1) / 4, p);
}

// x + yi with x^2 + y^2 = p for p = 2 or prime p = 1 mod 4 (Cornacchia).
inline GaussianInt prime_two_squares(uint64_t p) {
    if (p == 2) return {1, 1};
    uint64_t r0 = p, r1 = sqrt_minus_one(p);
    while ((__uint128_t)r1 * r1 > p) {
        uint64_t t = r0 % r1;
        r0 = r1;
        r1 = t;
    }
    int64_t x = (int64_t)r1;
    return {x, isqrt((int64_t)(p - r1 * r1))};
}

}  // namespace detail

// All z with norm(z) = m, one representative per unit-and-conjugation class,
// normalized to re >= im >= 0 and sorted by ascending imaginary part. Empty
// exactly when some prime p = 3 mod 4 divides m to an odd power.
inline std::vector<GaussianInt> sum_two_squares_all(int64_t m) {
    if (m < 1) throw domain_error("sum_two_squares_all: argument must be positive");
    std::vector<GaussianInt> acc = {GaussianInt{1, 0}};
    for (auto [p, e] : factor(m)) {
        if (p % 4 == 3) {
            if (e & 1) return {};
            int64_t q = 1;
            for (int i = 0; i < e / 2; ++i) q = checked::mul(q, p);
            for (auto& z : acc) z = z * GaussianInt{q, 0};
        } else {
            GaussianInt pi = detail::prime_two_squares((uint64_t)p);
            if (p == 2) {
                GaussianInt pw{1, 0};
                for (int i = 0; i < e; ++i) pw = pw * pi;
                for (auto& z : acc) z = z * pw;
            } else {
                std::vector<GaussianInt> pows(e + 1), bars(e + 1);
                pows[0] = bars[0] = {1, 0};
                for (int i = 1; i <= e; ++i) {
                    pows[i] = pows[i - 1] * pi;
                    bars[i] = bars[i - 1] * conj(pi);
                }
                std::vector<GaussianInt> next;
                next.reserve(acc.size() * (e + 1));
                for (const auto& z : acc)
                    for (int s = 0; s <= e; ++s) next.push_back(z * pows[s] * bars[e - s]);
                acc = std::move(next);
            }
        }
    }
    for (auto& z : acc) {
        int64_t x = z.re < 0 ? -z.re : z.re, y = z.im < 0 ? -z.im : z.im;
        z = {std::max(x, y), std::min(x, y)};
    }
    std::sort(acc.begin(), acc.end(),
              [](GaussianInt a, GaussianInt b) { return a.im < b.im; });
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

}  // namespace apollo

#pragma once

// Gaussian integer arithmetic and the quartic residue symbol. The symbol is
// computed by reciprocity descent and needs no factorization.

#include <cstdint>
#include <string>
#include <utility>

#include "apollo/checked.hpp"
#include "apollo/errors.hpp"

namespace apollo {

struct GaussianInt {
    int64_t re{0};
    int64_t im{0};

    friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

inline GaussianInt operator+(GaussianInt a, GaussianInt b) {
    return {checked::add(a.re, b.re), checked::add(a.im, b.im)};
}

inline GaussianInt operator-(GaussianInt a, GaussianInt b) {
    return {checked::sub(a.re, b.re), checked::sub(a.im, b.im)};
}

inline GaussianInt operator-(GaussianInt a) {
    return {checked::neg(a.re), checked::neg(a.im)};
}

inline GaussianInt operator*(GaussianInt a, GaussianInt b) {
    return {checked::sub(checked::mul(a.re, b.re), checked::mul(a.im, b.im)),
            checked::add(checked::mul(a.re, b.im), checked::mul(a.im, b.re))};
}

inline GaussianInt conj(GaussianInt a) { return {a.re, checked::neg(a.im)}; }

inline int64_t norm(GaussianInt a) {
    return checked::add(checked::mul(a.re, a.re), checked::mul(a.im, a.im));
}

inline bool is_zero(GaussianInt a) { return a.re == 0 && a.im == 0; }
inline bool is_unit(GaussianInt a) { return norm(a) == 1; }
// Odd means coprime to 1+i, which holds exactly when re+im is odd.
inline bool is_odd(GaussianInt a) { return ((a.re ^ a.im) & 1) != 0; }
inline bool is_even(GaussianInt a) { return !is_odd(a); }

// a * i^k for k in 0..3.
inline GaussianInt mul_i(GaussianInt a, int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return a;
        case 1: return {checked::neg(a.im), a.re};
        case 2: return -a;
        default: return {a.im, checked::neg(a.re)};
    }
}

inline std::string to_string(GaussianInt a) {
    std::string s = std::to_string(a.re);
    if (a.im >= 0) s += "+";
    s += std::to_string(a.im) + "i";
    return s;
}

// Quotient and remainder with each quotient component rounded to the nearest
// integer, ties toward -infinity. Then norm(r) <= norm(b) / 2.
struct GaussianDivMod {
    GaussianInt q, r;
};

inline GaussianDivMod divmod(GaussianInt a, GaussianInt b) {
    if (is_zero(b)) throw domain_error("divmod: division by zero");
    __int128 den = (__int128)b.re * b.re + (__int128)b.im * b.im;
    __int128 pr = (__int128)a.re * b.re + (__int128)a.im * b.im;
    __int128 pi = (__int128)a.im * b.re - (__int128)a.re * b.im;
    auto nearest = [&](__int128 p) -> int64_t {
        // ceil((2p - den) / (2 den)) realizes round-nearest, ties down
        __int128 num = 2 * p - den, d2 = 2 * den;
        __int128 q = num / d2;
        if (num % d2 != 0 && num > 0) ++q;
        return (int64_t)q;
    };
    GaussianInt q{nearest(pr), nearest(pi)};
    return {q, a - q * b};
}

inline GaussianInt exact_div(GaussianInt a, GaussianInt b) {
    auto [q, r] = divmod(a, b);
    if (!is_zero(r)) throw domain_error("exact_div: " + to_string(a) + " not divisible by " + to_string(b));
    return q;
}

inline GaussianInt gcd(GaussianInt a, GaussianInt b) {
    while (!is_zero(b)) {
        GaussianInt r = divmod(a, b).r;
        a = b;
        b = r;
    }
    return a;
}

// Primary: odd and congruent to 1 mod 2(1+i). Concretely (re, im) is
// (1, 0) or (3, 2) mod 4. Exactly one associate of an odd element is primary.
inline bool is_primary(GaussianInt a) {
    if (!is_odd(a)) return false;
    int64_t r = mod_floor(a.re, 4), s = mod_floor(a.im, 4);
    return (r == 1 && s == 0) || (r == 3 && s == 2);
}

struct PrimaryDecomposition {
    GaussianInt value;  // i^k * input, primary
    int k;
};

inline PrimaryDecomposition primary_associate(GaussianInt a) {
    if (!is_odd(a)) throw domain_error("primary_associate: argument must be odd");
    GaussianInt z = a;
    for (int k = 0; k < 4; ++k) {
        if (is_primary(z)) return {z, k};
        z = mul_i(z, 1);
    }
    throw internal_error("primary_associate: no primary associate of " + to_string(a));
}

// A power of i, the value group of the quartic symbol.
struct QuarticValue {
    int k{0};  // the value is i^k, k in 0..3

    friend bool operator==(const QuarticValue&, const QuarticValue&) = default;
};

inline QuarticValue qv(int k) { return {((k % 4) + 4) % 4}; }
inline QuarticValue operator*(QuarticValue a, QuarticValue b) { return qv(a.k + b.k); }
inline bool is_real(QuarticValue a) { return (a.k & 1) == 0; }
// (i^k)^2 as +1 or -1.
inline int square_sign(QuarticValue a) { return (a.k & 1) ? -1 : 1; }
inline GaussianInt to_gaussian(QuarticValue a) { return mul_i(GaussianInt{1, 0}, a.k); }

inline std::string to_string(QuarticValue a) {
    switch (a.k) {
        case 0: return "1";
        case 1: return "i";
        case 2: return "-1";
        default: return "-i";
    }
}

namespace detail {

// Exponent tables for a primary denominator beta = a + bi:
//   (i / beta)     = i^((1 - a) / 2)
//   ((1+i) / beta) = i^((a - b - b^2 - 1) / 4)
inline int unit_exponent(GaussianInt beta) {
    __int128 e = ((__int128)1 - beta.re) / 2 % 4;
    return (int)((e % 4 + 4) % 4);
}

inline int one_plus_i_exponent(GaussianInt beta) {
    __int128 e = ((__int128)beta.re - beta.im - (__int128)beta.im * beta.im - 1) / 4 % 4;
    return (int)((e % 4 + 4) % 4);
}

}  // namespace detail

// Quartic residue symbol (alpha / beta) for odd beta, extended to composite
// denominators the way the Jacobi symbol extends Legendre. Computed purely by
// reduction, supplementary laws and reciprocity flips; norms at least halve
// per round, so the loop runs O(log norm) times. Unit denominators give 1.
// Throws when beta is even or zero, or when the arguments share a factor.
inline QuarticValue quartic_symbol(GaussianInt alpha, GaussianInt beta) {
    if (is_zero(beta) || !is_odd(beta))
        throw domain_error("quartic_symbol: denominator must be odd and nonzero");
    int acc = 0;
    beta = primary_associate(beta).value;
    for (;;) {
        if (is_unit(beta)) return qv(acc);  // primary unit, i.e. 1
        alpha = divmod(alpha, beta).r;
        if (is_zero(alpha))
            throw domain_error("quartic_symbol: arguments share a factor");
        int e_i = detail::unit_exponent(beta);
        int e_1pi = detail::one_plus_i_exponent(beta);
        while (is_even(alpha)) {
            alpha = exact_div(alpha, GaussianInt{1, 1});
            acc = (acc + e_1pi) & 3;
        }
        auto [ap, k] = primary_associate(alpha);
        acc = (acc + (4 - k) % 4 * e_i) & 3;  // alpha = i^(4-k) * ap
        alpha = ap;
        if (is_unit(alpha)) return qv(acc);  // alpha == 1
        // both primary: (alpha/beta) = (-1)^((N(alpha)-1)/4 * (N(beta)-1)/4) (beta/alpha)
        if (((norm(alpha) - 1) / 4) % 2 == 1 && ((norm(beta) - 1) / 4) % 2 == 1)
            acc = (acc + 2) & 3;
        std::swap(alpha, beta);
    }
}

inline QuarticValue quartic_symbol(GaussianInt alpha, int64_t n) {
    return quartic_symbol(alpha, GaussianInt{n, 0});
}

}  // namespace apollo

#pragma once

// Descartes quadruples, the reflection moves, root reduction and the
// quadruple / quadratic form correspondence.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

#include "apollo/checked.hpp"
#include "apollo/errors.hpp"

namespace apollo {

// Curvatures (a, b, c, d) of four pairwise tangent circles.
struct Quadruple {
    std::array<int64_t, 4> v{};

    int64_t& operator[](int i) { return v[(size_t)i]; }
    int64_t operator[](int i) const { return v[(size_t)i]; }
    friend bool operator==(const Quadruple&, const Quadruple&) = default;
    friend auto operator<=>(const Quadruple&, const Quadruple&) = default;
};

inline int64_t sum(const Quadruple& q) {
    return checked::add(checked::add(q[0], q[1]), checked::add(q[2], q[3]));
}

inline std::string to_string(const Quadruple& q) {
    return "(" + std::to_string(q[0]) + ", " + std::to_string(q[1]) + ", " +
           std::to_string(q[2]) + ", " + std::to_string(q[3]) + ")";
}

// Checks the Descartes equation (a+b+c+d)^2 = 2(a^2+b^2+c^2+d^2), positive
// total curvature and primitivity. Returns its argument so call sites can
// validate and bind in one step. The parity split (two odd, two even entries)
// follows from these three and is asserted, not reported as a user error.
inline Quadruple validate(const Quadruple& q) {
    __int128 s = 0, t = 0;
    for (int i = 0; i < 4; ++i) {
        s += q[i];
        t += (__int128)q[i] * q[i];
    }
    if (s * s != 2 * t)
        throw invalid_quadruple(invalid_quadruple::reason::descartes,
                                "quadruple " + to_string(q) + " fails the Descartes equation");
    if (s <= 0)
        throw invalid_quadruple(invalid_quadruple::reason::nonpositive_sum,
                                "quadruple " + to_string(q) + " has nonpositive total curvature");
    int64_t g = 0;
    for (int i = 0; i < 4; ++i) g = std::gcd(g, q[i]);
    if (g != 1)
        throw invalid_quadruple(invalid_quadruple::reason::imprimitive,
                                "quadruple " + to_string(q) + " has entries with gcd " + std::to_string(g));
    int odd = 0;
    for (int i = 0; i < 4; ++i) odd += (int)(q[i] & 1);
    if (odd != 2)
        throw internal_error("quadruple " + to_string(q) + " does not split two odd, two even");
    return q;
}

// Replace entry i (1-based) by the other root of the Descartes equation,
// 2 (sum of the other three) - q_i. Applying the same move twice is the identity.
inline Quadruple apply_move(const Quadruple& q, int i) {
    if (i < 1 || i > 4) throw domain_error("apply_move: index must be 1..4");
    Quadruple r = q;
    r[i - 1] = checked::sub(checked::mul(2, checked::sub(sum(q), q[i - 1])), q[i - 1]);
    return r;
}

// Apply strictly sum-reducing moves until none exists, then sort ascending.
// The result is the canonical root quadruple of the packing.
inline Quadruple reduce_to_root(Quadruple q) {
    for (;;) {
        int64_t s = sum(q);
        int pick = -1;
        for (int i = 0; i < 4 && pick < 0; ++i) {
            int64_t n = checked::sub(checked::mul(2, checked::sub(s, q[i])), q[i]);
            if (n < q[i]) pick = i;
        }
        if (pick < 0) break;
        q = apply_move(q, pick + 1);
    }
    std::sort(q.v.begin(), q.v.end());
    return q;
}

// Permutation bringing position p (0-based) to the front, rest in order.
inline Quadruple with_front(const Quadruple& q, int p) {
    if (p < 0 || p > 3) throw domain_error("with_front: position must be 0..3");
    Quadruple r;
    int j = 0;
    r[j++] = q[p];
    for (int i = 0; i < 4; ++i)
        if (i != p) r[j++] = q[i];
    return r;
}

// Positive definite binary form A x^2 + B xy + C y^2.
struct QuadraticForm {
    int64_t A, B, C;

    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

inline int64_t disc(const QuadraticForm& f) {
    return checked::sub(checked::mul(f.B, f.B), checked::mul(4, checked::mul(f.A, f.C)));
}

inline int64_t eval(const QuadraticForm& f, int64_t x, int64_t y) {
    int64_t axx = checked::mul(f.A, checked::mul(x, x));
    int64_t bxy = checked::mul(f.B, checked::mul(x, y));
    int64_t cyy = checked::mul(f.C, checked::mul(y, y));
    return checked::add(checked::add(axx, bxy), cyy);
}

// Form attached to the circle at position one of a valid quadruple with
// nonzero leading curvature a: (A, B, C) = (a+b, a+b+c-d, a+c), discriminant
// -4 a^2. A and C are positive because a tangent pair sums to zero only when
// both curvatures are zero.
inline QuadraticForm form_of(const Quadruple& q) {
    if (q[0] == 0) throw domain_error("form_of: curvature at position one must be nonzero");
    QuadraticForm f{checked::add(q[0], q[1]),
                    checked::sub(checked::add(checked::add(q[0], q[1]), q[2]), q[3]),
                    checked::add(q[0], q[2])};
    if (f.A <= 0 || f.C <= 0) throw internal_error("form_of: form is not positive definite");
    return f;
}

// Inverse of form_of: the quadruple (a, A-a, C-a, A+C-B-a). Requires the
// discriminant of f to equal -4 a^2; the result is validated.
inline Quadruple quad_of(const QuadraticForm& f, int64_t a) {
    if (disc(f) != checked::mul(-4, checked::mul(a, a)))
        throw domain_error("quad_of: discriminant does not match -4 a^2");
    return validate(Quadruple{a, checked::sub(f.A, a), checked::sub(f.C, a),
                              checked::sub(checked::sub(checked::add(f.A, f.C), f.B), a)});
}

// One-parameter family of the circles tangent to both circle one and circle
// two: f(x) = (a+b) x^2 - (a+b+c-d) x + c, with f(0) = c and f(1) = d.
// Degenerate only when a = b = 0 (the two parallel lines of the strip).
struct TangentFamily {
    int64_t a2, a1, a0;  // f(x) = a2 x^2 - a1 x + a0
};

inline int64_t eval(const TangentFamily& t, int64_t x) {
    int64_t xx = checked::mul(x, x);
    return checked::add(checked::sub(checked::mul(t.a2, xx), checked::mul(t.a1, x)), t.a0);
}

inline TangentFamily tangent_family(const Quadruple& q) {
    int64_t A = checked::add(q[0], q[1]);
    if (A == 0) throw domain_error("tangent_family: degenerate family, both base curvatures are zero");
    return {A, checked::sub(checked::add(A, q[2]), q[3]), q[2]};
}

struct CoprimeNeighbor {
    int64_t x;       // family parameter
    int64_t m;       // curvature f(x), coprime to the modulus
    Quadruple quad;  // (a, b, f(x), f(x+1)), a valid quadruple
};

// Smallest |x| with gcd(f(x), modulus) = 1 in the family of the first two
// circles, positive x preferred on ties. When the first two curvatures are
// both odd, every f(x) is even and an even modulus has no solution; in every
// other case a run of 2 modulus + 3 consecutive values contains a coprime
// one, so the cap is never hit.
inline CoprimeNeighbor coprime_neighbor(const Quadruple& q, int64_t modulus) {
    if (modulus < 1) throw domain_error("coprime_neighbor: modulus must be positive");
    if (modulus % 2 == 0 && (q[0] & 1) && (q[1] & 1))
        throw domain_error(
            "coprime_neighbor: all curvatures tangent to an odd pair are even, none is "
            "coprime to an even modulus");
    TangentFamily t = tangent_family(q);
    int64_t cap = checked::add(checked::mul(2, modulus), 2);
    for (int64_t u = 0; u <= cap; ++u) {
        for (int s = 0; s < (u == 0 ? 1 : 2); ++s) {
            int64_t x = s == 0 ? u : -u;
            int64_t m = eval(t, x);
            if (std::gcd(m, modulus) != 1) continue;
            // x = 0 reproduces the input: (a, b, f(0), f(1)) = (a, b, c, d)
            return {x, m, Quadruple{q[0], q[1], m, eval(t, checked::add(x, 1))}};
        }
    }
    throw internal_error("coprime_neighbor: no coprime value within the search cap");
}

}  // namespace apollo

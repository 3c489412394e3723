#pragma once

// Packing classification: residue type mod 24, the quadratic character chi2,
// the quartic character chi4 (defined for types (6,1) and (6,17)), and the
// table of predicted quadratic and quartic obstruction families.

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <utility>
#include <vector>

#include "apollo/gaussian.hpp"
#include "apollo/numtheory.hpp"
#include "apollo/packing.hpp"

namespace apollo {

// Set of residue classes mod 24 as a bit mask.
struct ResidueClassSet {
    uint32_t mask{0};

    bool contains(int64_t m) const { return (mask >> mod_floor(m, 24)) & 1u; }
    int size() const { return std::popcount(mask); }
    std::vector<int> values() const {
        std::vector<int> out;
        for (int r = 0; r < 24; ++r)
            if ((mask >> r) & 1u) out.push_back(r);
        return out;
    }
    friend bool operator==(const ResidueClassSet&, const ResidueClassSet&) = default;
};

inline ResidueClassSet residue_classes(std::initializer_list<int> rs) {
    ResidueClassSet s;
    for (int r : rs) s.mask |= 1u << r;
    return s;
}

// Type (size, k): size is the number of admissible classes mod 24 (6 or 8),
// k the smallest admissible class coprime to 24.
struct ResidueType {
    int size;
    int k;

    friend bool operator==(const ResidueType&, const ResidueType&) = default;
};

inline bool is_quartic_type(const ResidueType& t) {
    return t.size == 6 && (t.k == 1 || t.k == 17);
}

// The residues of one quadruple pin the type: all entries not divisible by 3
// share one class r3 mod 3, and the two odd entries reduce mod 8 to {1,1},
// {5,5} or {3,7}.
inline ResidueType residue_type(const Quadruple& q) {
    validate(q);
    int r3 = 0;
    for (int i = 0; i < 4; ++i) {
        if (q[i] % 3 == 0) continue;
        int r = (int)mod_floor(q[i], 3);
        if (r3 == 0)
            r3 = r;
        else if (r3 != r)
            throw internal_error("residue_type: entries disagree mod 3 in " + to_string(q));
    }
    if (r3 == 0) throw internal_error("residue_type: no entry coprime to 3 in " + to_string(q));
    int odd[2], j = 0;
    for (int i = 0; i < 4 && j < 2; ++i)
        if (q[i] & 1) odd[j++] = (int)mod_floor(q[i], 8);
    if (odd[0] > odd[1]) std::swap(odd[0], odd[1]);
    int m8;
    if (odd[0] == 1 && odd[1] == 1)
        m8 = 0;
    else if (odd[0] == 5 && odd[1] == 5)
        m8 = 1;
    else if (odd[0] == 3 && odd[1] == 7)
        m8 = 2;
    else
        throw internal_error("residue_type: odd entries not {1,1}, {5,5} or {3,7} mod 8 in " + to_string(q));
    static const ResidueType table[3][2] = {
        {{6, 1}, {6, 17}},   // odd entries 1 mod 8
        {{6, 13}, {6, 5}},   // odd entries 5 mod 8
        {{8, 7}, {8, 11}},   // odd entries 3, 7 mod 8
    };
    return table[m8][r3 - 1];
}

// Admissible residues mod 24 per type: exactly the classes that occur, and
// each occurs for infinitely many curvatures.
inline ResidueClassSet admissible_residues(const ResidueType& t) {
    if (t.size == 6) {
        switch (t.k) {
            case 1: return residue_classes({0, 1, 4, 9, 12, 16});
            case 5: return residue_classes({0, 5, 8, 12, 20, 21});
            case 13: return residue_classes({0, 4, 12, 13, 16, 21});
            case 17: return residue_classes({0, 8, 9, 12, 17, 20});
        }
    } else if (t.size == 8) {
        switch (t.k) {
            case 7: return residue_classes({3, 6, 7, 10, 15, 18, 19, 22});
            case 11: return residue_classes({2, 3, 6, 11, 14, 15, 18, 23});
        }
    }
    throw domain_error("admissible_residues: (" + std::to_string(t.size) + ", " +
                       std::to_string(t.k) + ") is not a packing type");
}

// Tangency invariant of a coprime tangent pair: rho = n + m, always positive.
inline int64_t rho_of(int64_t n, int64_t m) {
    if (n == 0 && m == 0) throw domain_error("rho_of: degenerate pair");
    if (std::gcd(n, m) != 1) throw domain_error("rho_of: curvatures must be coprime");
    int64_t rho = checked::add(n, m);
    if (rho <= 0) throw domain_error("rho_of: tangent curvatures must have positive sum");
    return rho;
}

// chi2 of the circle at position one (any nonzero curvature n, any sign or
// parity), using the smallest coprime tangent neighbor in the family of the
// first two circles. Constant across the packing.
inline int chi2_at(const Quadruple& q) {
    int64_t n = q[0];
    if (n == 0) throw domain_error("chi2_at: curvature must be nonzero");
    CoprimeNeighbor nb = coprime_neighbor(q, n < 0 ? checked::neg(n) : n);
    int64_t rho = rho_of(n, nb.m);
    switch ((int)mod_floor(n, 4)) {
        case 0:
        case 1:
            return kronecker(rho, n);
        case 2:
            return kronecker(checked::neg(rho), n / 2);
        default:
            return kronecker(checked::mul(2, rho), n);
    }
}

// Position of a positive odd entry. Every valid quadruple has one: the two
// odd entries cannot both be nonpositive.
inline int positive_odd_position(const Quadruple& q) {
    for (int p = 0; p < 4; ++p)
        if (q[p] > 0 && (q[p] & 1)) return p;
    throw internal_error("no positive odd entry in " + to_string(q));
}

// chi2 of the packing, evaluated at a positive odd circle of q.
inline int chi2(const Quadruple& q) {
    Quadruple r = validate(q);
    return chi2_at(with_front(r, positive_odd_position(r)));
}

// Oriented basis of the tangency lattice of the circle at position one.
// With f = (A, B, C) = form_of(q) and n the leading curvature:
//   norm(beta) = A, norm(delta) = C, 2 Re(beta conj(delta)) = B,
//   |Im(conj(beta) delta)| = |n|.
struct LatticeBasis {
    GaussianInt beta, delta;
};

namespace detail {

// Deterministic search: two-squares representatives of A by ascending
// imaginary part, then unit multiples i^k (k = 0..3), then the conjugate,
// then the sign eps of n in the target B/2 + eps n i. Any exact division
// yields a basis; the Gram identities then hold automatically.
inline LatticeBasis lattice_from_form(const QuadraticForm& f, int64_t n) {
    if ((f.B & 1) != 0) throw internal_error("lattice_from_form: odd middle coefficient");
    for (GaussianInt b0 : sum_two_squares_all(f.A)) {
        for (int k = 0; k < 4; ++k) {
            for (int cj = 0; cj < 2; ++cj) {
                for (int es = 0; es < 2; ++es) {
                    GaussianInt beta = mul_i(cj ? conj(b0) : b0, k);
                    GaussianInt target{f.B / 2, es == 0 ? n : checked::neg(n)};
                    auto [quot, rem] = divmod(target, beta);
                    if (!is_zero(rem)) continue;
                    GaussianInt delta = conj(quot);
                    if (norm(beta) != f.A || norm(delta) != f.C)
                        throw internal_error("lattice_from_form: Gram norm mismatch");
                    GaussianInt cross = beta * conj(delta);
                    if (checked::mul(2, cross.re) != f.B)
                        throw internal_error("lattice_from_form: Gram cross term mismatch");
                    GaussianInt orient = conj(beta) * delta;
                    if (std::llabs(orient.im) != std::llabs(n))
                        throw internal_error("lattice_from_form: covolume mismatch");
                    return {beta, delta};
                }
            }
        }
    }
    throw internal_error("lattice_from_form: no basis for A=" + std::to_string(f.A) +
                         " B=" + std::to_string(f.B) + " C=" + std::to_string(f.C));
}

}  // namespace detail

// Lattice basis for the circle at position one; requires odd positive leading
// curvature (the classical case). Internal callers use the form variant,
// which also covers even and negative curvatures.
inline LatticeBasis lattice_of(const Quadruple& q) {
    int64_t n = q[0];
    if (n < 1 || (n & 1) == 0)
        throw domain_error("lattice_of: curvature at position one must be odd and positive");
    validate(q);
    return detail::lattice_from_form(form_of(q), n);
}

// Raw quartic character of the circle at position one of q; the packing must
// have a quartic type. The value is well defined up to conjugation: its
// square and its conjugation class are canonical, i and -i are not separated.
inline QuarticValue chi4_raw_at(const Quadruple& q) {
    int64_t n = q[0];
    if (n == 0) throw domain_error("chi4_raw_at: curvature must be nonzero");
    CoprimeNeighbor nb = coprime_neighbor(q, n < 0 ? checked::neg(n) : n);
    // quadruple with the coprime pair (n, m) in front
    Quadruple ql{q[0], nb.m, q[1], nb.quad[3]};
    GaussianInt beta = detail::lattice_from_form(form_of(ql), n).beta;
    if (n & 1) {
        // odd curvatures in quartic types are 1 mod 8
        if (mod_floor(n, 8) != 1)
            throw internal_error("chi4_raw_at: odd curvature not 1 mod 8 in " + to_string(q));
        return quartic_symbol(beta, n);
    }
    auto [e, n1] = odd_part_and_v2(n);
    GaussianInt bp = primary_associate(beta).value;
    QuarticValue v = quartic_symbol(bp, n1);
    if (mod_floor(n, 8) == 0) {
        // here Im(beta) of the primary choice is divisible by 4, and the
        // correction factor is (-1)^(e Im(beta)/4)
        if (mod_floor(bp.im, 4) != 0)
            throw internal_error("chi4_raw_at: generator not 4-divisible at " + to_string(q));
        if (((bp.im / 4) * e) & 1) v = v * qv(2);
    } else {
        // n = 4 mod 8: correction factor (-1 | n1)
        if (kronecker(-1, n1) == -1) v = v * qv(2);
    }
    return v;
}

enum class Chi4Class {
    plus_one,
    minus_one,
    imaginary,       // i or -i, not separated
    not_applicable,  // packing type is not (6,1) or (6,17)
};

inline Chi4Class chi4_class(QuarticValue v) {
    if (v.k == 0) return Chi4Class::plus_one;
    if (v.k == 2) return Chi4Class::minus_one;
    return Chi4Class::imaginary;
}

inline const char* to_string(Chi4Class c) {
    switch (c) {
        case Chi4Class::plus_one: return "1";
        case Chi4Class::minus_one: return "-1";
        case Chi4Class::imaginary: return "i*";
        default: return "n/a";
    }
}

// chi4 of the packing as a conjugation class, or not_applicable outside
// types (6,1) and (6,17).
inline Chi4Class chi4(const Quadruple& q) {
    ResidueType rt = residue_type(q);  // validates
    if (!is_quartic_type(rt)) return Chi4Class::not_applicable;
    return chi4_class(chi4_raw_at(with_front(q, positive_odd_position(q))));
}

// Full classification (size, k, chi2, chi4).
struct PackingType {
    int size;
    int k;
    int chi2;
    Chi4Class chi4;

    friend bool operator==(const PackingType&, const PackingType&) = default;
};

// Printed like the published tables: chi4 appears only when it is a real
// sign; an imaginary chi4 is implied by chi2 = -1 and stays silent.
inline std::string to_string(const PackingType& t) {
    std::string s = "(" + std::to_string(t.size) + ", " + std::to_string(t.k) + ", " +
                    (t.chi2 > 0 ? "1" : "-1");
    if (t.chi4 == Chi4Class::plus_one || t.chi4 == Chi4Class::minus_one)
        s += std::string(", ") + to_string(t.chi4);
    return s + ")";
}

inline PackingType extended_type(const Quadruple& q) {
    ResidueType rt = residue_type(q);
    int c2 = chi2(q);
    Chi4Class c4 = chi4(q);
    if (is_quartic_type(rt)) {
        // chi4^2 = chi2, so the class is imaginary exactly when chi2 = -1
        if ((c4 == Chi4Class::imaginary) != (c2 == -1))
            throw internal_error("extended_type: chi4 class inconsistent with chi2 for " + to_string(q));
    }
    return {rt.size, rt.k, c2, c4};
}

// Family of excluded values u, u w^d, u (2w)^d, ...: all v = u t^d.
struct ObstructionFamily {
    int degree;          // 2 or 4
    int64_t multiplier;  // u

    bool contains(int64_t v) const {
        if (v < 1 || v % multiplier != 0) return false;
        return kth_root_exact(v / multiplier, degree).has_value();
    }
    friend bool operator==(const ObstructionFamily&, const ObstructionFamily&) = default;
};

// Predicted obstructions for one extended type: the excluded families, the
// residue classes they rule out completely, and the classes with no known
// obstruction.
struct ObstructionReport {
    std::vector<ObstructionFamily> families;
    ResidueClassSet false_classes;
    ResidueClassSet open_classes;
};

namespace detail {

struct TypeRow {
    int size, k, chi2;
    Chi4Class chi4;
    std::vector<int64_t> quad_u;     // degree 2 multipliers
    std::vector<int64_t> quartic_u;  // degree 4 multipliers
    std::vector<int> false_cls;
    std::vector<int> open_cls;
};

inline const std::vector<TypeRow>& type_rows() {
    static const std::vector<TypeRow> rows = {
        {6, 1, 1, Chi4Class::plus_one, {}, {}, {}, {0, 1, 4, 9, 12, 16}},
        {6, 1, 1, Chi4Class::minus_one, {}, {1, 4, 9, 36}, {0, 1, 4, 9, 12, 16}, {}},
        {6, 1, -1, Chi4Class::imaginary, {1, 2, 3, 6}, {}, {0, 1, 4, 9, 12, 16}, {}},
        {6, 5, 1, Chi4Class::not_applicable, {2, 3}, {}, {0, 8, 12}, {5, 20, 21}},
        {6, 5, -1, Chi4Class::not_applicable, {1, 6}, {}, {0, 12}, {5, 8, 20, 21}},
        {6, 13, 1, Chi4Class::not_applicable, {2, 6}, {}, {0}, {4, 12, 13, 16, 21}},
        {6, 13, -1, Chi4Class::not_applicable, {1, 3}, {}, {0, 4, 12, 16}, {13, 21}},
        {6, 17, 1, Chi4Class::plus_one, {3, 6}, {9, 36}, {0, 9, 12}, {8, 17, 20}},
        {6, 17, 1, Chi4Class::minus_one, {3, 6}, {1, 4}, {0, 9, 12}, {8, 17, 20}},
        {6, 17, -1, Chi4Class::imaginary, {1, 2}, {}, {0, 8, 9, 12}, {17, 20}},
        {8, 7, 1, Chi4Class::not_applicable, {3, 6}, {}, {3, 6}, {7, 10, 15, 18, 19, 22}},
        {8, 7, -1, Chi4Class::not_applicable, {2}, {}, {18}, {3, 6, 7, 10, 15, 19, 22}},
        {8, 11, 1, Chi4Class::not_applicable, {}, {}, {}, {2, 3, 6, 11, 14, 15, 18, 23}},
        {8, 11, -1, Chi4Class::not_applicable, {2, 3, 6}, {}, {2, 3, 6, 18}, {11, 14, 15, 23}},
    };
    return rows;
}

}  // namespace detail

inline ObstructionReport obstructions_for(const PackingType& t) {
    for (const auto& row : detail::type_rows()) {
        if (row.size != t.size || row.k != t.k || row.chi2 != t.chi2) continue;
        bool quartic = is_quartic_type({t.size, t.k});
        if (quartic ? row.chi4 != t.chi4 : t.chi4 != Chi4Class::not_applicable) continue;
        ObstructionReport rep;
        for (int64_t u : row.quad_u) rep.families.push_back({2, u});
        for (int64_t u : row.quartic_u) rep.families.push_back({4, u});
        for (int r : row.false_cls) rep.false_classes.mask |= 1u << r;
        for (int r : row.open_cls) rep.open_classes.mask |= 1u << r;
        return rep;
    }
    throw domain_error("obstructions_for: " + to_string(t) + " is not a valid extended type");
}

}  // namespace apollo

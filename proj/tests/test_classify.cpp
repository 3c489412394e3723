#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "apollo/classify.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace apollo;

TEST_CASE("residue class sets") {
    ResidueClassSet s = residue_classes({0, 5, 8});
    CHECK(s.size() == 3);
    CHECK(s.contains(0));
    CHECK(s.contains(24));
    CHECK(s.contains(29));
    CHECK(s.contains(-19));  // -19 = 5 mod 24
    CHECK(!s.contains(1));
    CHECK(s.values() == std::vector<int>{0, 5, 8});
}

TEST_CASE("residue types of the representatives") {
    CHECK(residue_type(Quadruple{0, 0, 1, 1}) == ResidueType{6, 1});
    CHECK(residue_type(Quadruple{-4, 5, 20, 21}) == ResidueType{6, 5});
    CHECK(residue_type(Quadruple{-3, 4, 12, 13}) == ResidueType{6, 13});
    CHECK(residue_type(Quadruple{-4, 8, 9, 9}) == ResidueType{6, 17});
    CHECK(residue_type(Quadruple{-5, 7, 18, 18}) == ResidueType{8, 7});
    CHECK(residue_type(Quadruple{-1, 2, 2, 3}) == ResidueType{8, 11});
    CHECK(is_quartic_type(ResidueType{6, 1}));
    CHECK(is_quartic_type(ResidueType{6, 17}));
    CHECK(!is_quartic_type(ResidueType{6, 5}));
    CHECK(!is_quartic_type(ResidueType{8, 11}));
}

TEST_CASE("admissible residue sets per type") {
    CHECK(admissible_residues({6, 1}).values() == std::vector<int>{0, 1, 4, 9, 12, 16});
    CHECK(admissible_residues({6, 5}).values() == std::vector<int>{0, 5, 8, 12, 20, 21});
    CHECK(admissible_residues({6, 13}).values() == std::vector<int>{0, 4, 12, 13, 16, 21});
    CHECK(admissible_residues({6, 17}).values() == std::vector<int>{0, 8, 9, 12, 17, 20});
    CHECK(admissible_residues({8, 7}).values() == std::vector<int>{3, 6, 7, 10, 15, 18, 19, 22});
    CHECK(admissible_residues({8, 11}).values() == std::vector<int>{2, 3, 6, 11, 14, 15, 18, 23});
    CHECK_THROWS_AS(admissible_residues({6, 7}), domain_error);
    CHECK_THROWS_AS(admissible_residues({7, 1}), domain_error);
    // size field really is the cardinality, and k the smallest unit class
    for (ResidueType t : {ResidueType{6, 1}, {6, 5}, {6, 13}, {6, 17}, {8, 7}, {8, 11}}) {
        ResidueClassSet s = admissible_residues(t);
        CHECK(s.size() == t.size);
        int smallest_unit = 0;
        for (int r : s.values())
            if (std::gcd(r, 24) == 1) {
                smallest_unit = r;
                break;
            }
        CHECK(smallest_unit == t.k);
    }
}

TEST_CASE("every entry of a quadruple lands in an admissible class") {
    std::mt19937_64 rng(59);
    for (const auto& root : fixtures::walk_packings()) {
        ResidueClassSet adm = admissible_residues(residue_type(root));
        for (int trial = 0; trial < 10; ++trial) {
            Quadruple q = oracle::bounded_walk(root, 10, rng(), 100000000).back();
            for (int i = 0; i < 4; ++i) CHECK(adm.contains(q[i]));
        }
    }
}

TEST_CASE("rho of a coprime tangent pair") {
    CHECK(rho_of(3, 7) == 10);
    CHECK(rho_of(-2, 5) == 3);
    CHECK(rho_of(1, 0) == 1);
    CHECK_THROWS_AS(rho_of(0, 0), domain_error);
    CHECK_THROWS_AS(rho_of(2, 6), domain_error);   // not coprime
    CHECK_THROWS_AS(rho_of(-3, 2), domain_error);  // nonpositive sum
}

TEST_CASE("chi2 pinned values") {
    CHECK(chi2(Quadruple{0, 0, 1, 1}) == 1);
    CHECK(chi2(Quadruple{-3, 5, 8, 8}) == -1);
    CHECK(chi2(Quadruple{-2, 3, 6, 7}) == -1);
    CHECK(chi2(Quadruple{-4, 5, 20, 21}) == 1);
    CHECK(chi2(Quadruple{-1, 2, 2, 3}) == 1);
    CHECK(chi2(Quadruple{-6, 11, 14, 15}) == -1);
}

TEST_CASE("chi2 is the same at every circle of a quadruple") {
    std::mt19937_64 rng(61);
    for (const auto& root : fixtures::walk_packings()) {
        int expected = chi2(root);
        for (int trial = 0; trial < 8; ++trial) {
            Quadruple q = oracle::bounded_walk(root, 7, rng(), 10000000).back();
            CHECK(chi2(q) == expected);
            for (int p = 0; p < 4; ++p) {
                if (q[p] == 0) continue;
                CHECK(chi2_at(with_front(q, p)) == expected);
            }
        }
    }
}

TEST_CASE("lattice basis satisfies the Gram identities") {
    // strip-orbit quadruple with small odd leading curvature
    LatticeBasis lb = lattice_of(Quadruple{1, 12, 4, 1});
    CHECK(norm(lb.beta) == 13);
    CHECK(norm(lb.delta) == 5);
    GaussianInt cross = lb.beta * conj(lb.delta);
    CHECK(2 * cross.re == 16);
    CHECK(std::llabs((conj(lb.beta) * lb.delta).im) == 1);

    CHECK_THROWS_AS(lattice_of(Quadruple{-3, 5, 8, 8}), domain_error);  // negative front
    CHECK_THROWS_AS(lattice_of(Quadruple{2, 2, 3, 15}), domain_error);  // even front

    std::mt19937_64 rng(67);
    for (const auto& root : fixtures::walk_packings()) {
        for (int trial = 0; trial < 12; ++trial) {
            Quadruple q = oracle::bounded_walk(root, 6, rng(), 1000000).back();
            for (int p = 0; p < 4; ++p) {
                if (q[p] < 1 || (q[p] & 1) == 0) continue;
                Quadruple fronted = with_front(q, p);
                QuadraticForm f = form_of(fronted);
                LatticeBasis b = lattice_of(fronted);
                CHECK(norm(b.beta) == f.A);
                CHECK(norm(b.delta) == f.C);
                CHECK(2 * (b.beta * conj(b.delta)).re == f.B);
                CHECK(std::llabs((conj(b.beta) * b.delta).im) == fronted[0]);
            }
        }
    }
}

TEST_CASE("chi4 pinned values") {
    CHECK(chi4(Quadruple{0, 0, 1, 1}) == Chi4Class::plus_one);
    CHECK(chi4(Quadruple{-16, 32, 33, 41}) == Chi4Class::plus_one);
    CHECK(chi4(Quadruple{-8, 12, 25, 25}) == Chi4Class::minus_one);
    CHECK(chi4(Quadruple{-4, 8, 9, 9}) == Chi4Class::minus_one);
    CHECK(chi4(Quadruple{-15, 28, 33, 40}) == Chi4Class::imaginary);
    CHECK(chi4(Quadruple{-7, 12, 17, 20}) == Chi4Class::imaginary);
    CHECK(chi4(Quadruple{-3, 5, 8, 8}) == Chi4Class::not_applicable);
    CHECK(chi4(Quadruple{-1, 2, 2, 3}) == Chi4Class::not_applicable);
}

TEST_CASE("chi4 class is constant and squares to chi2") {
    std::mt19937_64 rng(71);
    for (const auto& root : fixtures::walk_packings()) {
        if (!is_quartic_type(residue_type(root))) continue;
        Chi4Class expected = chi4(root);
        int c2 = chi2(root);
        for (int trial = 0; trial < 8; ++trial) {
            Quadruple q = oracle::bounded_walk(root, 6, rng(), 10000000).back();
            CHECK(chi4(q) == expected);
            for (int p = 0; p < 4; ++p) {
                if (q[p] == 0) continue;
                QuarticValue v = chi4_raw_at(with_front(q, p));
                CHECK(chi4_class(v) == expected);
                CHECK(square_sign(v) == c2);
            }
        }
    }
}

TEST_CASE("extended types of all 42 fixture packings") {
    for (const auto& tp : fixtures::typed_packings()) {
        PackingType t = extended_type(tp.quad);
        CHECK(to_string(t) == tp.type);
    }
}

TEST_CASE("chi4 class strings") {
    CHECK(std::string(to_string(Chi4Class::plus_one)) == "1");
    CHECK(std::string(to_string(Chi4Class::minus_one)) == "-1");
    CHECK(std::string(to_string(Chi4Class::imaginary)) == "i*");
    CHECK(std::string(to_string(Chi4Class::not_applicable)) == "n/a");
}

TEST_CASE("obstruction family membership") {
    ObstructionFamily squares{2, 1};
    CHECK(squares.contains(1));
    CHECK(squares.contains(4));
    CHECK(squares.contains(169));
    CHECK(!squares.contains(2));
    CHECK(!squares.contains(0));
    CHECK(!squares.contains(-4));

    ObstructionFamily six_squares{2, 6};
    CHECK(six_squares.contains(6));
    CHECK(six_squares.contains(24));
    CHECK(six_squares.contains(54));
    CHECK(!six_squares.contains(12));
    CHECK(!six_squares.contains(3));

    ObstructionFamily four_fourths{4, 4};
    CHECK(four_fourths.contains(4));
    CHECK(four_fourths.contains(64));
    CHECK(four_fourths.contains(324));
    CHECK(!four_fourths.contains(16));
}

TEST_CASE("obstruction table: families, false and open classes per row") {
    struct RowCase {
        Quadruple quad;
        std::vector<ObstructionFamily> families;
        std::vector<int> false_cls;
    };
    const std::vector<RowCase> cases = {
        {{0, 0, 1, 1}, {}, {}},
        {{-8, 12, 25, 25}, {{4, 1}, {4, 4}, {4, 9}, {4, 36}}, {0, 1, 4, 9, 12, 16}},
        {{-15, 28, 33, 40}, {{2, 1}, {2, 2}, {2, 3}, {2, 6}}, {0, 1, 4, 9, 12, 16}},
        {{-4, 5, 20, 21}, {{2, 2}, {2, 3}}, {0, 8, 12}},
        {{-3, 5, 8, 8}, {{2, 1}, {2, 6}}, {0, 12}},
        {{-3, 4, 12, 13}, {{2, 2}, {2, 6}}, {0}},
        {{-8, 13, 21, 24}, {{2, 1}, {2, 3}}, {0, 4, 12, 16}},
        {{-16, 32, 33, 41}, {{2, 3}, {2, 6}, {4, 9}, {4, 36}}, {0, 9, 12}},
        {{-4, 8, 9, 9}, {{2, 3}, {2, 6}, {4, 1}, {4, 4}}, {0, 9, 12}},
        {{-7, 12, 17, 20}, {{2, 1}, {2, 2}}, {0, 8, 9, 12}},
        {{-5, 7, 18, 18}, {{2, 3}, {2, 6}}, {3, 6}},
        {{-2, 3, 6, 7}, {{2, 2}}, {18}},
        {{-1, 2, 2, 3}, {}, {}},
        {{-6, 11, 14, 15}, {{2, 2}, {2, 3}, {2, 6}}, {2, 3, 6, 18}},
    };
    REQUIRE(cases.size() == 14);
    std::set<std::string> seen_types;
    for (const auto& rc : cases) {
        PackingType t = extended_type(rc.quad);
        seen_types.insert(to_string(t));
        ObstructionReport rep = obstructions_for(t);
        CHECK(rep.families == rc.families);
        CHECK(rep.false_classes.values() == rc.false_cls);

        // false and open classes partition the admissible set
        ResidueClassSet adm = admissible_residues({t.size, t.k});
        CHECK((rep.false_classes.mask & rep.open_classes.mask) == 0u);
        CHECK((rep.false_classes.mask | rep.open_classes.mask) == adm.mask);

        // the false classes are exactly the admissible classes covered by
        // the families' residues mod 24
        uint32_t covered = 0;
        for (const auto& f : rep.families)
            for (int64_t w = 1; w <= 24; ++w) {
                int64_t v = f.multiplier;
                for (int d = 0; d < f.degree; ++d) v *= w;
                covered |= 1u << (v % 24);
            }
        CHECK((covered & adm.mask) == rep.false_classes.mask);
    }
    CHECK(seen_types.size() == 14);  // one packing per extended-type row
}

TEST_CASE("obstruction lookup rejects impossible types") {
    CHECK_THROWS_AS(obstructions_for(PackingType{6, 1, 1, Chi4Class::not_applicable}),
                    domain_error);
    CHECK_THROWS_AS(obstructions_for(PackingType{8, 7, 1, Chi4Class::plus_one}), domain_error);
    CHECK_THROWS_AS(obstructions_for(PackingType{6, 1, -1, Chi4Class::plus_one}), domain_error);
    CHECK_THROWS_AS(obstructions_for(PackingType{6, 99, 1, Chi4Class::not_applicable}),
                    domain_error);
}

TEST_CASE("extended type is an orbit invariant") {
    std::mt19937_64 rng(73);
    for (const auto& root : fixtures::walk_packings()) {
        PackingType expected = extended_type(root);
        for (int trial = 0; trial < 5; ++trial) {
            Quadruple q = oracle::bounded_walk(root, 9, rng(), 100000000).back();
            CHECK(extended_type(q) == expected);
        }
    }
}

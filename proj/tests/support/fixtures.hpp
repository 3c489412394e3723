#pragma once

// Shared fixture data: packings with independently known classifications and
// the sample sets the higher-level checks run over.

#include <string>
#include <vector>

#include "apollo/classify.hpp"
#include "apollo/packing.hpp"

namespace fixtures {

struct TypedPacking {
    apollo::Quadruple quad;
    std::string type;
};

// 42 root quadruples with known extended types, three per type row.
inline const std::vector<TypedPacking>& typed_packings() {
    static const std::vector<TypedPacking> table = {
        {{0, 0, 1, 1}, "(6, 1, 1, 1)"},
        {{-12, 16, 49, 49}, "(6, 1, 1, 1)"},
        {{-20, 36, 49, 49}, "(6, 1, 1, 1)"},
        {{-8, 12, 25, 25}, "(6, 1, 1, -1)"},
        {{-12, 25, 25, 28}, "(6, 1, 1, -1)"},
        {{-15, 24, 40, 49}, "(6, 1, 1, -1)"},
        {{-15, 28, 33, 40}, "(6, 1, -1)"},
        {{-20, 33, 52, 57}, "(6, 1, -1)"},
        {{-23, 40, 57, 60}, "(6, 1, -1)"},
        {{-4, 5, 20, 21}, "(6, 5, 1)"},
        {{-16, 29, 36, 45}, "(6, 5, 1)"},
        {{-19, 36, 44, 45}, "(6, 5, 1)"},
        {{-3, 5, 8, 8}, "(6, 5, -1)"},
        {{-12, 21, 29, 32}, "(6, 5, -1)"},
        {{-19, 32, 48, 53}, "(6, 5, -1)"},
        {{-3, 4, 12, 13}, "(6, 13, 1)"},
        {{-12, 21, 28, 37}, "(6, 13, 1)"},
        {{-11, 16, 36, 37}, "(6, 13, 1)"},
        {{-8, 13, 21, 24}, "(6, 13, -1)"},
        {{-11, 21, 24, 28}, "(6, 13, -1)"},
        {{-20, 37, 45, 52}, "(6, 13, -1)"},
        {{-16, 32, 33, 41}, "(6, 17, 1, 1)"},
        {{-7, 8, 56, 57}, "(6, 17, 1, 1)"},
        {{-16, 20, 81, 81}, "(6, 17, 1, 1)"},
        {{-4, 8, 9, 9}, "(6, 17, 1, -1)"},
        {{-7, 9, 32, 32}, "(6, 17, 1, -1)"},
        {{-15, 32, 32, 33}, "(6, 17, 1, -1)"},
        {{-7, 12, 17, 20}, "(6, 17, -1)"},
        {{-12, 17, 41, 44}, "(6, 17, -1)"},
        {{-15, 24, 41, 44}, "(6, 17, -1)"},
        {{-5, 7, 18, 18}, "(8, 7, 1)"},
        {{-6, 10, 15, 19}, "(8, 7, 1)"},
        {{-9, 18, 19, 22}, "(8, 7, 1)"},
        {{-2, 3, 6, 7}, "(8, 7, -1)"},
        {{-5, 6, 30, 31}, "(8, 7, -1)"},
        {{-14, 27, 31, 34}, "(8, 7, -1)"},
        {{-1, 2, 2, 3}, "(8, 11, 1)"},
        {{-9, 14, 26, 27}, "(8, 11, 1)"},
        {{-10, 18, 23, 27}, "(8, 11, 1)"},
        {{-6, 11, 14, 15}, "(8, 11, -1)"},
        {{-10, 14, 35, 39}, "(8, 11, -1)"},
        {{-13, 23, 30, 38}, "(8, 11, -1)"},
    };
    return table;
}

// One packing per residue type, for residue-set checks.
inline const std::vector<apollo::Quadruple>& type_representatives() {
    static const std::vector<apollo::Quadruple> reps = {
        {0, 0, 1, 1},    // (6, 1)
        {-4, 5, 20, 21},  // (6, 5)
        {-3, 4, 12, 13},  // (6, 13)
        {-4, 8, 9, 9},    // (6, 17)
        {-5, 7, 18, 18},  // (8, 7)
        {-1, 2, 2, 3},    // (8, 11)
    };
    return reps;
}

// First packing of each of the 14 extended-type rows.
inline const std::vector<apollo::Quadruple>& row_representatives() {
    static const std::vector<apollo::Quadruple> reps = {
        {0, 0, 1, 1},      {-8, 12, 25, 25},  {-15, 28, 33, 40}, {-4, 5, 20, 21},
        {-3, 5, 8, 8},     {-3, 4, 12, 13},   {-8, 13, 21, 24},  {-16, 32, 33, 41},
        {-4, 8, 9, 9},     {-7, 12, 17, 20},  {-5, 7, 18, 18},   {-2, 3, 6, 7},
        {-1, 2, 2, 3},     {-6, 11, 14, 15},
    };
    return reps;
}

// Ten packings covering every residue type, for invariant-propagation walks
// and traversal cross-checks.
inline const std::vector<apollo::Quadruple>& walk_packings() {
    static const std::vector<apollo::Quadruple> reps = {
        {0, 0, 1, 1},     {-8, 12, 25, 25}, {-15, 28, 33, 40}, {-16, 32, 33, 41},
        {-4, 8, 9, 9},    {-7, 12, 17, 20}, {-3, 5, 8, 8},     {-3, 4, 12, 13},
        {-5, 7, 18, 18},  {-1, 2, 2, 3},
    };
    return reps;
}

// All typed packings of the two apply-to-both residue types named by the
// co-occurrence rule.
inline std::vector<apollo::Quadruple> cooccurrence_packings() {
    std::vector<apollo::Quadruple> out;
    for (const auto& tp : typed_packings()) {
        apollo::ResidueType rt = apollo::residue_type(tp.quad);
        if (rt.k == 5 || rt.k == 17) out.push_back(tp.quad);
    }
    return out;
}

}  // namespace fixtures

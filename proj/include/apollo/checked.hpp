#pragma once

// Checked 64-bit signed arithmetic. All curvature-derived quantities go
// through these helpers; overflow throws instead of wrapping.

#include <cstdint>

#include "apollo/errors.hpp"

namespace apollo {

namespace checked {

inline int64_t add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error{};
    return r;
}

inline int64_t sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error{};
    return r;
}

inline int64_t mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error{};
    return r;
}

inline int64_t neg(int64_t a) { return sub(0, a); }

}  // namespace checked

// a reduced into [0, m) for m > 0, independent of the sign of a.
inline int64_t mod_floor(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace apollo

#pragma once

// Error types thrown by the library. Callers that need exit-code mapping can
// catch the specific classes; everything derives from apollo::error.

#include <stdexcept>
#include <string>

namespace apollo {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 64-bit signed arithmetic would wrap. Curvature data never gets close to the
// limit for supported bounds, so this always indicates misuse or corruption.
struct overflow_error : error {
    overflow_error() : error("arithmetic overflow in 64-bit computation") {}
};

// An input quadruple failed validation. `why` tells which invariant broke.
struct invalid_quadruple : error {
    enum class reason { descartes, nonpositive_sum, imprimitive };
    reason why;
    invalid_quadruple(reason r, const std::string& msg) : error(msg), why(r) {}
};

// An argument violated an operation's precondition.
struct domain_error : error {
    using error::error;
};

// A file could not be opened, read or written.
struct io_error : error {
    using error::error;
};

// A file was readable but is not a valid bitmap or report.
struct format_error : error {
    using error::error;
};

// A state the algorithms guarantee unreachable. Indicates a bug, not bad input.
struct internal_error : error {
    using error::error;
};

}  // namespace apollo

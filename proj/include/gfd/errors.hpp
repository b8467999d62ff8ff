#pragma once

#include <stdexcept>

namespace gfd {

// Raised when a computation cannot proceed: singular deblur denominator,
// non-real inverse transform, failed bracketing of the discrepancy root.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gfd

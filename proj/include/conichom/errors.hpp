#pragma once

#include <stdexcept>
#include <string>

namespace conichom {

// Input exceeds a configured size cap (vertex limits, PSD dimension caps, ...).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric computation lost too much accuracy to certify its own output.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace conichom

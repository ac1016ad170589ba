#pragma once

#include <stdexcept>

namespace mglasso {

inline constexpr const char* kVersion = "0.1.0";

// Error categories aligned with the CLI exit codes:
// ConfigError -> 1, DataError -> 2, NumericalError -> 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mglasso

#pragma once

#include <stdexcept>
#include <string>

namespace qpr {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad command line / unknown subcommand or target.  CLI maps this to exit 64.
struct UsageError : Error {
    explicit UsageError(const std::string& what) : Error(what) {}
};

// Invalid config file / forcing spec / frequency input.  CLI exit 2.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Lattice scan request beyond the configured bound.
struct CapExceededError : Error {
    explicit CapExceededError(const std::string& what) : Error(what) {}
};

// |omega . nu| vanished at working precision: omega is (numerically) resonant.
struct ResonantFrequencyError : Error {
    explicit ResonantFrequencyError(const std::string& what) : Error(what) {}
};

// A table does not extend far enough for the requested query.
struct InsufficientTableError : Error {
    explicit InsufficientTableError(const std::string& what) : Error(what) {}
};

// A scale index outside the certified ladder was requested.
struct ScaleRangeError : Error {
    explicit ScaleRangeError(const std::string& what) : Error(what) {}
};

// Forcing spec violates the reality (conjugate-symmetry) constraint.
struct RealityError : Error {
    explicit RealityError(const std::string& what) : Error(what) {}
};

// Newton/continuation failed to reach the requested residual.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

}  // namespace qpr

#ifndef MODEBEAM_ERRORS_HPP
#define MODEBEAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modebeam {

// Error taxonomy. The CLI maps these onto exit codes:
//   ConfigError -> 2, InfeasibleError -> 3, NumericError -> 4.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Steering request that cannot be met with the allowed ports.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Root finding, degenerate patterns, and other numeric failures.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct BracketError : NumericError {
    explicit BracketError(const std::string& what) : NumericError(what) {}
};

struct DegenerateError : NumericError {
    explicit DegenerateError(const std::string& what) : NumericError(what) {}
};

struct OpenBeamError : NumericError {
    explicit OpenBeamError(const std::string& what) : NumericError(what) {}
};

} // namespace modebeam

#endif

#ifndef MULTIBORD_ERRORS_HPP
#define MULTIBORD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace multibord {

// Error taxonomy mirrors the CLI exit-code contract:
//   input/fixture problems -> 2, degree/mode violations -> 3, genericity -> 4.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

struct FixtureError : InputError {
    explicit FixtureError(const std::string& msg) : InputError(msg) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

struct DegreeError : Error {
    explicit DegreeError(const std::string& msg) : Error(msg) {}
};

struct ModeError : Error {
    explicit ModeError(const std::string& msg) : Error(msg) {}
};

struct GenericityError : Error {
    explicit GenericityError(const std::string& msg) : Error(msg) {}
};

struct SolverError : Error {
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

}  // namespace multibord

#endif

#ifndef CANTORSPEC_ERRORS_HPP
#define CANTORSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cantorspec {

// Domain errors: invalid values fed to an operation.
struct EmptyInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadInterval : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TooFewSets : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RationalInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InsufficientLabels : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Computation errors: a numerical procedure could not deliver its contract.
struct ModelMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EdgeFindingFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoSwitchFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration errors (CLI / config files).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cantorspec

#endif

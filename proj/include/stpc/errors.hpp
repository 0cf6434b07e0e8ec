#ifndef STPC_ERRORS_HPP
#define STPC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stpc {

// Exit-code classes used by the CLI:
//   ConfigError -> 2, DataError -> 3, MathDomainError -> 4.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MathDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- data errors --------------------------------------------------------

struct ParseError : DataError {
    ParseError(const std::string& what, long line)
        : DataError("parse error (line " + std::to_string(line) + "): " + what),
          line_number(line) {}
    long line_number;
};

struct DeligneViolation : DataError {
    using DataError::DataError;
};

struct LevelDividesPrime : DataError {
    using DataError::DataError;
};

// -- math-domain errors --------------------------------------------------

struct NonSquarefreeLevel : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct BadWeight : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct NotCoprime : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct ZeroDimension : MathDomainError {
    using MathDomainError::MathDomainError;
};

struct EmptyWindow : MathDomainError {
    using MathDomainError::MathDomainError;
};

// Raised when an exact trace would exceed the configured class-number
// budget and no exact fallback applies (dimension > 1).
struct TraceBudgetExceeded : MathDomainError {
    using MathDomainError::MathDomainError;
};

} // namespace stpc

#endif

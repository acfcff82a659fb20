#pragma once

#include <stdexcept>
#include <string>

namespace kfix {

/// Caller violated a precondition: bad dimensions, parameters out of range,
/// malformed input documents.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function (e.g. zeta(t), t < 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace kfix

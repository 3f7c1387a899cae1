#pragma once

#include <stdexcept>
#include <string>

namespace flexcert {

// Caller violated an operation's preconditions (dimension mismatch etc.).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operation's mathematical precondition does not hold for the given data.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace flexcert

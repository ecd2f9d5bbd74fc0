#pragma once

#include <stdexcept>

namespace qr {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Ill-formed model or solver configuration, detected before numerics run.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical routine exhausted its accuracy or iteration budget.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable or malformed input file.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qr

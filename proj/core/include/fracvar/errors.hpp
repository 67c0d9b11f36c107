#pragma once

#include <stdexcept>
#include <string>

namespace fracvar {

/// Violated precondition or invalid argument (bad interval, grid mismatch, masked input).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation ran but could not produce a trustworthy number.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fracvar

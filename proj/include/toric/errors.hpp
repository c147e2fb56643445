#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Bad input: out-of-range states, malformed files, violated preconditions
/// that the caller controls.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configured budget (time, degree, enumeration cap, size bound) was hit.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called on an object that does not satisfy its contract,
/// e.g. normal form against a basis that is not a Groebner basis.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace toric

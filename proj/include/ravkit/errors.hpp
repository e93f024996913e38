#pragma once

#include <stdexcept>
#include <string>

namespace ravkit {

/// Malformed or invalid input: syntax errors, negative counts, unknown labels.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A well-formed input for which a quantity is mathematically undefined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace ravkit

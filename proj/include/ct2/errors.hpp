#pragma once

#include <stdexcept>
#include <string>

namespace ct2 {

/// A precondition of an operation was violated by the caller.
class ContractViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Degenerate or inconsistent geometry (zero-area triangles, dependent corners).
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point lies outside the domain of an element or surface.
class DomainError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Malformed or invalid input document.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ct2

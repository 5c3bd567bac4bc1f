#pragma once

#include <stdexcept>
#include <string>

namespace conerank {

/// Vectors, cones, weights or parameter lists of incompatible lengths.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value outside the domain of the requested operation (rho below -1/k,
/// non-positive attribute for a mean of order p, unknown label, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input files or unreadable/unwritable paths.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conerank

#pragma once

#include <stdexcept>
#include <string>

namespace fracrod {

/// Input outside the mathematical domain of an operation (s on the cut,
/// x outside [0,1], non-positive physical constants, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its tolerance (root finding,
/// quadrature, inversion) or produced a non-finite value.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace fracrod

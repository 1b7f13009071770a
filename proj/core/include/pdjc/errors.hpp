#pragma once

#include <stdexcept>
#include <string>

namespace pdjc {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The requested state does not fit the configured Fock-space truncation.
class TruncationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mandel Q requested for a state with vanishing mean excitation.
class UndefinedStatistics : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Brute-force evolution failed; almost always a non-Hermitian assembly bug.
class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

}  // namespace pdjc

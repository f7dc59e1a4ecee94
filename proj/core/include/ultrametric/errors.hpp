#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ultrametric {

/// Argument outside the mathematical domain of an operation (0^0, negative
/// base with fractional exponent, non-positive geometric ratio, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sum, integral or supremum that is infinite. `tail()` names the part of
/// the computation that diverged ("inner tail", "outer tail", "series").
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::string tail, const std::string& what)
      : std::runtime_error(what), tail_(std::move(tail)) {}

  const std::string& tail() const noexcept { return tail_; }

 private:
  std::string tail_;
};

/// Invalid configuration: non-prime p, alpha outside [0, n), mismatched
/// dimensions, malformed rational literal.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ultrametric

#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "ultrametric/real.hpp"

namespace ultrametric {

/// Working precision for values that leave the rationals.
struct MathContext {
  int digits = 60;

  /// Binary precision for `digits` decimal digits plus 32 guard bits.
  mpfr_prec_t bits() const;
};

/// A real number that is either an exact rational or an MPFR approximation.
///
/// Arithmetic between two exact values stays exact. Mixing modes promotes
/// the exact operand to the precision of the approximate one.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(const mpq_class& value) : value_(value) {  // NOLINT(implicit)
    std::get<mpq_class>(value_).canonicalize();
  }
  Scalar(long value) : value_(mpq_class(value)) {}   // NOLINT(implicit)
  Scalar(int value) : value_(mpq_class(value)) {}    // NOLINT(implicit)
  explicit Scalar(Real value) : value_(std::move(value)) {}

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  /// Precision of an approximate value; 0 for exact values.
  mpfr_prec_t approx_bits() const;

  /// Exact value; throws std::logic_error in approximate mode.
  const mpq_class& exact() const;
  /// Approximation at `bits` (or at the stored precision, if larger).
  Real to_real(mpfr_prec_t bits) const;
  double to_double() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  Scalar abs() const;
  Scalar operator-() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend std::weak_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return (a <=> b) == 0; }

  /// Exact values as "num" or "num/den"; approximations as a decimal with
  /// `digits` significant digits.
  std::string to_string(int digits) const;
  /// Always a decimal string, even for exact values.
  std::string to_decimal(int digits) const;

 private:
  std::variant<mpq_class, Real> value_;
};

// Debug output: exact values as fractions, approximations to 30 digits.
inline std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(30); }

inline const Scalar& max(const Scalar& a, const Scalar& b) { return (a < b) ? b : a; }

/// Parses "a" or "a/b" (optional sign, no decimals, b != 0) into canonical form.
mpq_class parse_rational(std::string_view text);
/// Canonical "a" or "a/b".
std::string format_rational(const mpq_class& value);

bool is_integer(const mpq_class& value);

/// x^e. Stays exact for integer e, or when numerator and denominator of an
/// exact x are perfect powers for the denominator of e; otherwise demotes.
/// Throws DomainError for x < 0 with fractional e, and for 0^e with e <= 0.
Scalar pow_rational(const Scalar& x, const mpq_class& e, const MathContext& ctx);
Scalar pow_int(const Scalar& x, long e);

/// first_term / (1 - ratio), the sum of first_term * ratio^k over k >= 0.
/// ratio <= 0 is a DomainError; ratio >= 1 is a DivergenceError.
Scalar geometric_tail_sum(const Scalar& ratio, const Scalar& first_term);

/// coefficient * prime^exponent with a rational exponent.
///
/// Products with the same prime are exact. Comparison is exact regardless of
/// the exponent, which is what keeps superlevel-set geometry exact even when
/// the lowered values are not rational.
struct PowExpr {
  long prime = 2;
  mpq_class exponent = 0;
  mpq_class coefficient = 0;

  PowExpr() = default;
  PowExpr(long p, mpq_class exp, mpq_class coef)
      : prime(p), exponent(std::move(exp)), coefficient(std::move(coef)) {
    exponent.canonicalize();
    coefficient.canonicalize();
  }

  int sign() const { return sgn(coefficient); }
  bool is_zero() const { return sign() == 0; }
  PowExpr abs() const { return {prime, exponent, ::abs(coefficient)}; }
  /// ln|value| in double precision, for search bracketing only.
  double log_abs() const;

  /// Exact if the exponent is an integer, approximate otherwise.
  Scalar lower(const MathContext& ctx) const;
  /// |value|^q as a Scalar; requires a non-negative coefficient.
  Scalar pow(const mpq_class& q, const MathContext& ctx) const;

  friend PowExpr operator*(const PowExpr& a, const PowExpr& b);
  friend std::strong_ordering operator<=>(const PowExpr& a, const PowExpr& b);
  friend bool operator==(const PowExpr& a, const PowExpr& b) { return (a <=> b) == 0; }
};

/// prime^exponent as a Scalar.
Scalar prime_power(long prime, const mpq_class& exponent, const MathContext& ctx);

}  // namespace ultrametric

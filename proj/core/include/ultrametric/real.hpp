#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace ultrametric {

/// Owning MPFR value with an explicit, per-value precision.
///
/// Binary operations round to the larger of the two operand precisions.
/// There is no global default precision: every constructor takes one.
class Real {
 public:
  explicit Real(mpfr_prec_t bits);
  Real(const mpq_class& value, mpfr_prec_t bits);
  Real(long value, mpfr_prec_t bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }

  Real abs() const;
  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    return compare(a, b);
  }
  friend bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }

  /// x^(num/den) for x >= 0, den >= 1; rounded root then rounded power.
  static Real pow_rational(const Real& base, long num, unsigned long den);
  static Real pow_int(const Real& base, long exponent);

  /// Decimal string with `digits` significant digits ("%.{digits}Rg").
  std::string to_string(int digits) const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  static std::partial_ordering compare(const Real& a, const Real& b);

  mpfr_t value_;
};

}  // namespace ultrametric

#include "ultrametric/real.hpp"

#include <algorithm>
#include <stdexcept>

namespace ultrametric {

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(const mpq_class& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // Steal the limbs and leave `other` as a valid minimal-precision zero.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::abs() const {
  Real out(precision());
  mpfr_abs(out.value_, value_, MPFR_RNDN);
  return out;
}

Real Real::operator-() const {
  Real out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

Real operator+(const Real& a, const Real& b) {
  Real out(std::max(a.precision(), b.precision()));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator-(const Real& a, const Real& b) {
  Real out(std::max(a.precision(), b.precision()));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator*(const Real& a, const Real& b) {
  Real out(std::max(a.precision(), b.precision()));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  Real out(std::max(a.precision(), b.precision()));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering Real::compare(const Real& a, const Real& b) {
  if (mpfr_nan_p(a.value_) || mpfr_nan_p(b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

Real Real::pow_rational(const Real& base, long num, unsigned long den) {
  if (den == 0) throw std::domain_error("zero exponent denominator");
  if (base.sign() < 0 && den != 1) {
    throw std::domain_error("negative base with non-integer exponent");
  }
  // 16 guard bits on the root so the second rounding dominates.
  const mpfr_prec_t bits = base.precision();
  Real root(bits + 16);
  mpfr_rootn_ui(root.value_, base.value_, den, MPFR_RNDN);
  Real out(bits);
  mpfr_pow_si(out.value_, root.value_, num, MPFR_RNDN);
  return out;
}

Real Real::pow_int(const Real& base, long exponent) {
  Real out(base.precision());
  mpfr_pow_si(out.value_, base.value_, exponent, MPFR_RNDN);
  return out;
}

std::string Real::to_string(int digits) const {
  char* buffer = nullptr;
  const int len = mpfr_asprintf(&buffer, "%.*Rg", digits, value_);
  if (len < 0 || buffer == nullptr) throw std::runtime_error("mpfr_asprintf failed");
  std::string out(buffer, static_cast<std::size_t>(len));
  mpfr_free_str(buffer);
  return out;
}

}  // namespace ultrametric

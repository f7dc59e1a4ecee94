#include "ultrametric/scalar.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ultrametric/errors.hpp"

namespace ultrametric {

namespace {

long to_long(const mpz_class& value, const char* what) {
  if (!value.fits_slong_p()) throw DomainError(std::string(what) + " out of range");
  return value.get_si();
}

mpq_class pow_exact(const mpq_class& base, long e) {
  if (e == 0) {
    if (sgn(base) == 0) throw DomainError("0^0 is undefined");
    return 1;
  }
  if (sgn(base) == 0) {
    if (e < 0) throw DomainError("0 raised to a negative power");
    return 0;
  }
  const unsigned long magnitude = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), magnitude);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), magnitude);
  mpq_class out = (e > 0) ? mpq_class(num, den) : mpq_class(den, num);
  out.canonicalize();
  return out;
}

// Natural log of |x| for a non-zero rational, in double precision.
double approx_log(const mpq_class& x) {
  long exp_num = 0;
  long exp_den = 0;
  const double mant_num = mpz_get_d_2exp(&exp_num, x.get_num_mpz_t());
  const double mant_den = mpz_get_d_2exp(&exp_den, x.get_den_mpz_t());
  return std::log(std::fabs(mant_num)) - std::log(mant_den) +
         static_cast<double>(exp_num - exp_den) * std::log(2.0);
}

std::strong_ordering compare_positive(const PowExpr& a, const PowExpr& b) {
  // a.c p^{a.e} vs b.c p^{b.e}  <=>  (a.c / b.c)^den vs p^num with
  // num/den = b.e - a.e.
  const double log_p = std::log(static_cast<double>(a.prime));
  const double la = approx_log(a.coefficient) + a.exponent.get_d() * log_p;
  const double lb = approx_log(b.coefficient) + b.exponent.get_d() * log_p;
  const double scale = 1.0 + std::fabs(la) + std::fabs(lb);
  if (la - lb > 1e-9 * scale) return std::strong_ordering::greater;
  if (lb - la > 1e-9 * scale) return std::strong_ordering::less;

  const mpq_class diff = b.exponent - a.exponent;
  const long num = to_long(diff.get_num(), "exponent");
  const long den = to_long(diff.get_den(), "exponent");
  const mpq_class ratio = a.coefficient / b.coefficient;
  const mpq_class lhs = pow_exact(ratio, den);
  const mpq_class rhs = pow_exact(mpq_class(a.prime), num);
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

mpfr_prec_t MathContext::bits() const {
  const double per_digit = 3.3219280948873623;  // log2(10)
  return static_cast<mpfr_prec_t>(std::ceil(digits * per_digit)) + 32;
}

const mpq_class& Scalar::exact() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw std::logic_error("Scalar::exact() called on an approximate value");
}

Real Scalar::to_real(mpfr_prec_t bits) const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Real(*q, bits);
  const Real& r = std::get<Real>(value_);
  if (r.precision() >= bits) return r;
  Real out(bits);
  mpfr_set(out.get(), r.get(), MPFR_RNDN);
  return out;
}

mpfr_prec_t Scalar::approx_bits() const {
  if (const auto* r = std::get_if<Real>(&value_)) return r->precision();
  return 0;
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_d();
  return std::get<Real>(value_).to_double();
}

int Scalar::sign() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q);
  return std::get<Real>(value_).sign();
}

Scalar Scalar::abs() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(::abs(*q)));
  return Scalar(std::get<Real>(value_).abs());
}

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
  return Scalar(-std::get<Real>(value_));
}

namespace {

mpfr_prec_t approx_precision(const Scalar& a, const Scalar& b) {
  return std::max(a.approx_bits(), b.approx_bits());
}

template <typename ExactOp, typename RealOp>
Scalar combine(const Scalar& a, const Scalar& b, ExactOp exact_op, RealOp real_op) {
  if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(exact_op(a.exact(), b.exact())));
  const mpfr_prec_t bits = approx_precision(a, b);
  return Scalar(real_op(a.to_real(bits), b.to_real(bits)));
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(
      a, b, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x + y); },
      [](const Real& x, const Real& y) { return x + y; });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(
      a, b, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x - y); },
      [](const Real& x, const Real& y) { return x - y; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(
      a, b, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x * y); },
      [](const Real& x, const Real& y) { return x * y; });
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return combine(
      a, b, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x / y); },
      [](const Real& x, const Real& y) { return x / y; });
}

std::weak_ordering operator<=>(const Scalar& a, const Scalar& b) {
  int c = 0;
  if (a.is_exact() && b.is_exact()) {
    c = cmp(a.exact(), b.exact());
  } else {
    const mpfr_prec_t bits = approx_precision(a, b);
    c = mpfr_cmp(a.to_real(bits).get(), b.to_real(bits).get());
  }
  if (c < 0) return std::weak_ordering::less;
  if (c > 0) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

std::string Scalar::to_string(int digits) const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return format_rational(*q);
  return std::get<Real>(value_).to_string(digits);
}

std::string Scalar::to_decimal(int digits) const {
  return to_real(MathContext{digits}.bits()).to_string(digits);
}

mpq_class parse_rational(std::string_view text) {
  if (text.empty()) throw ParameterError("empty rational literal");
  const auto slash = text.find('/');
  auto valid_int = [](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw ParameterError("malformed rational literal '" + std::string(text) +
                         "' (expected an integer or a/b)");
  }
  const std::string num_str(num[0] == '+' ? num.substr(1) : num);
  mpz_class n(num_str, 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParameterError("zero denominator in '" + std::string(text) + "'");
  mpq_class out(n, d);
  out.canonicalize();
  return out;
}

std::string format_rational(const mpq_class& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_integer(const mpq_class& value) { return value.get_den() == 1; }

Scalar pow_int(const Scalar& x, long e) {
  if (x.is_exact()) return Scalar(pow_exact(x.exact(), e));
  if (x.is_zero() && e <= 0) throw DomainError("0 raised to a non-positive power");
  return Scalar(Real::pow_int(x.to_real(x.approx_bits()), e));
}

Scalar pow_rational(const Scalar& x, const mpq_class& e, const MathContext& ctx) {
  const int s = x.sign();
  if (s == 0) {
    if (sgn(e) <= 0) throw DomainError("0 raised to a non-positive power");
    return x;
  }
  if (is_integer(e)) return pow_int(x, to_long(e.get_num(), "exponent"));
  if (s < 0) throw DomainError("negative base with non-integer exponent");

  const long num = to_long(e.get_num(), "exponent");
  const unsigned long den = static_cast<unsigned long>(to_long(e.get_den(), "exponent"));
  if (x.is_exact()) {
    const mpq_class& q = x.exact();
    mpz_class root_num;
    mpz_class root_den;
    const bool num_exact = mpz_root(root_num.get_mpz_t(), q.get_num_mpz_t(), den) != 0;
    const bool den_exact = mpz_root(root_den.get_mpz_t(), q.get_den_mpz_t(), den) != 0;
    if (num_exact && den_exact) {
      return Scalar(pow_exact(mpq_class(root_num, root_den), num));
    }
  }
  const Real base = x.to_real(ctx.bits());
  return Scalar(Real::pow_rational(base, num, den));
}

Scalar geometric_tail_sum(const Scalar& ratio, const Scalar& first_term) {
  if (ratio.sign() <= 0) throw DomainError("geometric ratio must be positive");
  if (ratio >= Scalar(1)) throw DivergenceError("series", "geometric ratio >= 1 diverges");
  return first_term / (Scalar(1) - ratio);
}

Scalar prime_power(long prime, const mpq_class& exponent, const MathContext& ctx) {
  return pow_rational(Scalar(prime), exponent, ctx);
}

Scalar PowExpr::lower(const MathContext& ctx) const {
  if (is_zero()) return Scalar(0);
  return Scalar(coefficient) * prime_power(prime, exponent, ctx);
}

Scalar PowExpr::pow(const mpq_class& q, const MathContext& ctx) const {
  if (sign() < 0) throw DomainError("PowExpr::pow needs a non-negative coefficient");
  if (is_zero()) return Scalar(0);
  return pow_rational(Scalar(coefficient), q, ctx) * prime_power(prime, exponent * q, ctx);
}

double PowExpr::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return approx_log(coefficient) + exponent.get_d() * std::log(static_cast<double>(prime));
}

PowExpr operator*(const PowExpr& a, const PowExpr& b) {
  if (a.prime != b.prime) throw std::logic_error("PowExpr product with different primes");
  return {a.prime, a.exponent + b.exponent, a.coefficient * b.coefficient};
}

std::strong_ordering operator<=>(const PowExpr& a, const PowExpr& b) {
  if (a.prime != b.prime) throw std::logic_error("PowExpr comparison with different primes");
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  if (sa > 0) return compare_positive(a, b);
  return compare_positive(b.abs(), a.abs());
}

}  // namespace ultrametric

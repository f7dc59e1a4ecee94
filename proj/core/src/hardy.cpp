#include "ultrametric/hardy.hpp"

#include "ultrametric/errors.hpp"
#include "ultrametric/norms.hpp"

namespace ultrametric {

HardyParams::HardyParams(PAdicParams params, mpq_class alpha)
    : params_(params), alpha_(std::move(alpha)) {
  alpha_.canonicalize();
  if (sgn(alpha_) < 0 || alpha_ >= params_.n()) {
    throw ParameterError("alpha = " + format_rational(alpha_) + " violates 0 <= alpha < n = " +
                         std::to_string(params_.n()));
  }
}

RadialHardyImage::RadialHardyImage(HardyParams hardy, MassProfile mass)
    : hardy_(std::move(hardy)), mass_(std::move(mass)) {
  if (!(hardy_.params() == mass_.params())) {
    throw ParameterError("Hardy parameters and function live on different spaces");
  }
}

PowExpr RadialHardyImage::value_expr(long k) const {
  return {hardy_.params().p(), -hardy_.decay() * k, mass_(k)};
}

Scalar RadialHardyImage::value(long k, const MathContext& ctx) const {
  return value_expr(k).lower(ctx);
}

RadialHardyImage::operator RadialProfile() const {
  std::vector<PowExpr> window;
  for (long k = mass_.j0() + 1; k <= mass_.jmax(); ++k) window.push_back(value_expr(k));
  return {hardy_.params(), mass_.j0() + 1, std::move(window),
          PowerRay{mass_.inner_value(), hardy_.alpha()}, PowerRay{mass_.total(), -hardy_.decay()}};
}

RadialHardyImage hardy_apply(const RadialStepFunction& f, const HardyParams& hardy) {
  if (!(f.params() == hardy.params())) {
    throw ParameterError("function and Hardy operator live on different spaces");
  }
  return {hardy, cumulative_mass(f)};
}

bool pointwise_upper_bound_check(const RadialStepFunction& f, const HardyParams& hardy,
                                 KWindow window, const std::optional<MorreyExponents>& morrey,
                                 const MathContext& ctx) {
  const RadialHardyImage image = hardy_apply(f, hardy);
  const mpq_class l1 = l1_norm(f).exact();
  // |p^{-k(n-alpha)} M(k)| <= p^{-k(n-alpha)} ||f||_1  <=>  |M(k)| <= ||f||_1.
  for (long k = window.min; k <= window.max; ++k) {
    if (::abs(image.mass()(k)) > l1) return false;
  }
  if (!morrey) return true;
  if (sgn(hardy.alpha()) != 0) {
    throw ParameterError("the central Morrey pointwise bound applies to alpha = 0 only");
  }
  const PAdicParams& params = f.params();
  const Scalar bound =
      central_morrey_norm(f, NormSpec::central_morrey(morrey->q, morrey->lambda), ctx).value;
  for (long k = window.min; k <= window.max; ++k) {
    const Scalar lhs = image.value(k, ctx).abs();
    const Scalar rhs =
        prime_power(params.p(), mpq_class(k * params.n()) * morrey->lambda, ctx) * bound;
    if (lhs.is_exact() && rhs.is_exact()) {
      if (lhs > rhs) return false;
      continue;
    }
    // Rounded comparisons get one part in 10^(digits/2) of slack.
    const Scalar slack = pow_int(Scalar(10), -ctx.digits / 2);
    if (lhs > rhs * (Scalar(1) + slack)) return false;
  }
  return true;
}

bool dilation_covariance_check(const RadialStepFunction& f, const HardyParams& hardy, long m,
                               KWindow window) {
  const RadialHardyImage direct = hardy_apply(f, hardy);
  const RadialHardyImage dilated = hardy_apply(dilate(f, m), hardy);
  const PowExpr factor{hardy.params().p(), -hardy.alpha() * m, 1};
  for (long k = window.min; k <= window.max; ++k) {
    if (dilated.value_expr(k) != factor * direct.value_expr(k + m)) return false;
  }
  return true;
}

}  // namespace ultrametric

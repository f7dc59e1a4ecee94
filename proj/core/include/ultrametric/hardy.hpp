#pragma once

#include <optional>

#include <gmpxx.h>

#include "ultrametric/padic.hpp"
#include "ultrametric/profile.hpp"
#include "ultrametric/radial.hpp"
#include "ultrametric/scalar.hpp"

namespace ultrametric {

/// Fractional order of the Hardy operator; alpha = 0 is the plain operator.
class HardyParams {
 public:
  /// Throws ParameterError unless 0 <= alpha < n.
  HardyParams(PAdicParams params, mpq_class alpha);

  const PAdicParams& params() const { return params_; }
  const mpq_class& alpha() const { return alpha_; }
  /// n - alpha, the decay rate of the image outside the support.
  mpq_class decay() const { return params_.n() - alpha_; }

 private:
  PAdicParams params_;
  mpq_class alpha_;
};

/// H_alpha f for a radial step function f:
///   (H_alpha f)(x) = |x|_p^{alpha-n} * integral of f over B(0, |x|_p),
/// i.e. value(k) = p^{-k(n-alpha)} M(k) on S_k. Below j0 this is
/// inner_value * p^{k alpha}; above jmax it is M_total * p^{-k(n-alpha)}.
class RadialHardyImage {
 public:
  RadialHardyImage(HardyParams hardy, MassProfile mass);

  const HardyParams& hardy() const { return hardy_; }
  const MassProfile& mass() const { return mass_; }

  /// Exact symbolic value on S_k.
  PowExpr value_expr(long k) const;
  /// Exact when k(n - alpha) is an integer, approximate otherwise.
  Scalar value(long k, const MathContext& ctx = {}) const;

  operator RadialProfile() const;  // NOLINT(implicit)

 private:
  HardyParams hardy_;
  MassProfile mass_;
};

/// Throws ParameterError if f and hardy live on different spaces.
RadialHardyImage hardy_apply(const RadialStepFunction& f, const HardyParams& hardy);

/// Central Morrey exponents (q, lambda) for the alpha = 0 pointwise bound.
struct MorreyExponents {
  mpq_class q;
  mpq_class lambda;
};

/// Checks |H_alpha f(p^k)| <= p^{-k(n-alpha)} ||f||_1 on the window and, when
/// `morrey` is given (alpha must be 0), |H f(p^k)| <= p^{k n lambda} ||f||_{B^{q,lambda}}.
bool pointwise_upper_bound_check(const RadialStepFunction& f, const HardyParams& hardy,
                                 KWindow window,
                                 const std::optional<MorreyExponents>& morrey = std::nullopt,
                                 const MathContext& ctx = {});

/// Checks H(dilate(f, m))(p^k) == p^{-m alpha} H(f)(p^{k+m}) exactly on the window.
bool dilation_covariance_check(const RadialStepFunction& f, const HardyParams& hardy, long m,
                               KWindow window);

}  // namespace ultrametric

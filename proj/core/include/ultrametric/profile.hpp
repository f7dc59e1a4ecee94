#pragma once

#include <vector>

#include <gmpxx.h>

#include "ultrametric/padic.hpp"
#include "ultrametric/radial.hpp"
#include "ultrametric/scalar.hpp"

namespace ultrametric {

/// Inclusive range of sphere indices.
struct KWindow {
  long min = -20;
  long max = 20;
};

/// coefficient * p^{rate * k} along a run of sphere indices.
struct PowerRay {
  mpq_class coefficient = 0;
  mpq_class rate = 0;

  bool is_zero() const { return sgn(coefficient) == 0; }
  PowExpr at(long prime, long k) const { return {prime, rate * k, coefficient}; }
};

/// The sphere values of a radial function, in the form the norm code
/// consumes: explicit values on [lo, hi], a power-law ray below lo and a
/// power-law ray above hi. Step functions have a constant inner ray and a zero
/// outer ray; Hardy images have power-law rays on both sides.
class RadialProfile {
 public:
  RadialProfile(PAdicParams params, long lo, std::vector<PowExpr> window, PowerRay inner,
                PowerRay outer);
  RadialProfile(const RadialStepFunction& f);  // NOLINT(implicit)

  const PAdicParams& params() const { return params_; }
  long lo() const { return lo_; }
  /// lo - 1 when the window is empty.
  long hi() const { return lo_ + static_cast<long>(window_.size()) - 1; }
  const std::vector<PowExpr>& window() const { return window_; }
  const PowerRay& inner() const { return inner_; }
  const PowerRay& outer() const { return outer_; }

  /// Value on the sphere S_k.
  PowExpr value(long k) const;

  /// Same values on spheres k <= top, zero above.
  RadialProfile truncated(long top) const;
  RadialProfile scaled(const mpq_class& factor) const;

 private:
  PAdicParams params_;
  long lo_;
  std::vector<PowExpr> window_;
  PowerRay inner_;
  PowerRay outer_;
};

}  // namespace ultrametric

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "ultrametric/padic.hpp"
#include "ultrametric/scalar.hpp"

namespace ultrametric {

/// A radial function on Q_p^n that is constant on the ball B_{j0}, takes an
/// arbitrary rational value on each sphere S_k with j0 < k <= jmax, and
/// vanishes for |x|_p > p^{jmax}. The value at x = 0 is never consulted.
class RadialStepFunction {
 public:
  /// Throws ParameterError if a ring index is <= j0.
  RadialStepFunction(PAdicParams params, long j0, mpq_class inner_value,
                     std::map<long, mpq_class> rings = {});

  /// chi_{B_0}: j0 = 0, inner value 1, no rings.
  static RadialStepFunction unit_ball_indicator(const PAdicParams& params);
  static RadialStepFunction zero(const PAdicParams& params);

  const PAdicParams& params() const { return params_; }
  long j0() const { return j0_; }
  const mpq_class& inner_value() const { return inner_value_; }
  const std::map<long, mpq_class>& rings() const { return rings_; }
  /// Largest ring index, or j0 without rings.
  long jmax() const;

  /// Value on the sphere S_k.
  mpq_class evaluate(long k) const;

  bool is_zero() const;
  RadialStepFunction abs() const;
  RadialStepFunction scaled(const mpq_class& factor) const;

  friend bool operator==(const RadialStepFunction& a, const RadialStepFunction& b);

 private:
  PAdicParams params_;
  long j0_;
  mpq_class inner_value_;
  std::map<long, mpq_class> rings_;
};

/// a*f + b*g on the common refinement of both step structures.
RadialStepFunction linear_combination(const mpq_class& a, const RadialStepFunction& f,
                                      const mpq_class& b, const RadialStepFunction& g);

/// M(k) = integral of f over B_k. Closed forms below j0 and above jmax.
class MassProfile {
 public:
  MassProfile(PAdicParams params, long j0, mpq_class inner_value, std::vector<mpq_class> window);

  const PAdicParams& params() const { return params_; }
  long j0() const { return j0_; }
  long jmax() const { return j0_ + static_cast<long>(window_.size()) - 1; }
  const mpq_class& inner_value() const { return inner_value_; }
  const mpq_class& total() const { return window_.back(); }

  mpq_class operator()(long k) const;

 private:
  PAdicParams params_;
  long j0_;
  mpq_class inner_value_;
  std::vector<mpq_class> window_;  // M(j0), ..., M(jmax)
};

MassProfile cumulative_mass(const RadialStepFunction& f);

/// Integral of |f|; exact.
Scalar l1_norm(const RadialStepFunction& f);

/// g with g(p^k) = f(p^{k+m}).
RadialStepFunction dilate(const RadialStepFunction& f, long m);

enum class SignMode { Nonnegative, Signed };

struct LongRange {
  long min = 0;
  long max = 0;
};

/// Shape of random_function draws. Ring values are num/den with num drawn from
/// `numerator` and den from [1, max_denominator]; every index in (j0, jmax]
/// gets a ring entry.
struct RandomFunctionConfig {
  LongRange j0_range{-4, 4};
  LongRange jmax_offset_range{0, 6};  // jmax - j0
  LongRange numerator{0, 12};
  long max_denominator = 6;
  SignMode sign_mode = SignMode::Nonnegative;
};

/// Deterministic in (seed, config, params); uses mt19937_64 with modular
/// reduction so draws do not depend on the standard library's distributions.
RadialStepFunction random_function(std::uint64_t seed, const RandomFunctionConfig& config,
                                   const PAdicParams& params);

}  // namespace ultrametric

#include "ultrametric/radial.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "ultrametric/errors.hpp"

namespace ultrametric {

RadialStepFunction::RadialStepFunction(PAdicParams params, long j0, mpq_class inner_value,
                                       std::map<long, mpq_class> rings)
    : params_(params), j0_(j0), inner_value_(std::move(inner_value)), rings_(std::move(rings)) {
  inner_value_.canonicalize();
  for (auto& [k, value] : rings_) {
    if (k <= j0_) {
      throw ParameterError("ring index " + std::to_string(k) + " must exceed j0 = " +
                           std::to_string(j0_));
    }
    value.canonicalize();
  }
}

RadialStepFunction RadialStepFunction::unit_ball_indicator(const PAdicParams& params) {
  return {params, 0, 1};
}

RadialStepFunction RadialStepFunction::zero(const PAdicParams& params) { return {params, 0, 0}; }

long RadialStepFunction::jmax() const { return rings_.empty() ? j0_ : rings_.rbegin()->first; }

mpq_class RadialStepFunction::evaluate(long k) const {
  if (k <= j0_) return inner_value_;
  const auto it = rings_.find(k);
  return it == rings_.end() ? mpq_class(0) : it->second;
}

bool RadialStepFunction::is_zero() const {
  if (sgn(inner_value_) != 0) return false;
  return std::all_of(rings_.begin(), rings_.end(),
                     [](const auto& entry) { return sgn(entry.second) == 0; });
}

RadialStepFunction RadialStepFunction::abs() const {
  std::map<long, mpq_class> rings;
  for (const auto& [k, value] : rings_) rings.emplace(k, ::abs(value));
  return {params_, j0_, ::abs(inner_value_), std::move(rings)};
}

RadialStepFunction RadialStepFunction::scaled(const mpq_class& factor) const {
  std::map<long, mpq_class> rings;
  for (const auto& [k, value] : rings_) rings.emplace(k, value * factor);
  return {params_, j0_, inner_value_ * factor, std::move(rings)};
}

bool operator==(const RadialStepFunction& a, const RadialStepFunction& b) {
  return a.params_ == b.params_ && a.j0_ == b.j0_ && a.inner_value_ == b.inner_value_ &&
         a.rings_ == b.rings_;
}

RadialStepFunction linear_combination(const mpq_class& a, const RadialStepFunction& f,
                                      const mpq_class& b, const RadialStepFunction& g) {
  if (!(f.params() == g.params())) throw ParameterError("functions live on different spaces");
  const long j0 = std::min(f.j0(), g.j0());
  const long jmax = std::max(f.jmax(), g.jmax());
  std::map<long, mpq_class> rings;
  for (long k = j0 + 1; k <= jmax; ++k) rings.emplace(k, a * f.evaluate(k) + b * g.evaluate(k));
  return {f.params(), j0, a * f.evaluate(j0) + b * g.evaluate(j0), std::move(rings)};
}

MassProfile::MassProfile(PAdicParams params, long j0, mpq_class inner_value,
                         std::vector<mpq_class> window)
    : params_(params), j0_(j0), inner_value_(std::move(inner_value)), window_(std::move(window)) {
  if (window_.empty()) throw std::logic_error("mass profile needs M(j0)");
}

mpq_class MassProfile::operator()(long k) const {
  if (k <= j0_) return inner_value_ * ball_measure(RadiusExp{k}, params_).exact();
  if (k >= jmax()) return total();
  return window_[static_cast<std::size_t>(k - j0_)];
}

MassProfile cumulative_mass(const RadialStepFunction& f) {
  const PAdicParams& params = f.params();
  std::vector<mpq_class> window;
  window.reserve(static_cast<std::size_t>(f.jmax() - f.j0() + 1));
  mpq_class running = f.inner_value() * ball_measure(RadiusExp{f.j0()}, params).exact();
  window.push_back(running);
  for (long k = f.j0() + 1; k <= f.jmax(); ++k) {
    running += f.evaluate(k) * sphere_measure(RadiusExp{k}, params).exact();
    window.push_back(running);
  }
  return {params, f.j0(), f.inner_value(), std::move(window)};
}

Scalar l1_norm(const RadialStepFunction& f) { return Scalar(cumulative_mass(f.abs()).total()); }

RadialStepFunction dilate(const RadialStepFunction& f, long m) {
  std::map<long, mpq_class> rings;
  for (const auto& [k, value] : f.rings()) rings.emplace(k - m, value);
  return {f.params(), f.j0() - m, f.inner_value(), std::move(rings)};
}

namespace {

long draw(std::mt19937_64& rng, const LongRange& range) {
  if (range.max < range.min) throw ParameterError("empty range in random function config");
  const auto span = static_cast<std::uint64_t>(range.max - range.min) + 1;
  return range.min + static_cast<long>(rng() % span);
}

mpq_class draw_value(std::mt19937_64& rng, const RandomFunctionConfig& config) {
  const long num = draw(rng, config.numerator);
  const long den = draw(rng, {1, std::max(1L, config.max_denominator)});
  mpq_class value(num, den);
  value.canonicalize();
  if (config.sign_mode == SignMode::Signed && (rng() & 1U) != 0) value = -value;
  return value;
}

}  // namespace

RadialStepFunction random_function(std::uint64_t seed, const RandomFunctionConfig& config,
                                   const PAdicParams& params) {
  std::mt19937_64 rng(seed);
  const long j0 = draw(rng, config.j0_range);
  const long jmax = j0 + std::max(0L, draw(rng, config.jmax_offset_range));
  mpq_class inner = draw_value(rng, config);
  std::map<long, mpq_class> rings;
  for (long k = j0 + 1; k <= jmax; ++k) rings.emplace(k, draw_value(rng, config));
  return {params, j0, std::move(inner), std::move(rings)};
}

}  // namespace ultrametric

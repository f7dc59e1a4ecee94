#include "ultrametric/profile.hpp"

#include <algorithm>

namespace ultrametric {

RadialProfile::RadialProfile(PAdicParams params, long lo, std::vector<PowExpr> window,
                             PowerRay inner, PowerRay outer)
    : params_(params),
      lo_(lo),
      window_(std::move(window)),
      inner_(std::move(inner)),
      outer_(std::move(outer)) {}

RadialProfile::RadialProfile(const RadialStepFunction& f)
    : params_(f.params()), lo_(f.j0() + 1), inner_{f.inner_value(), 0}, outer_{0, 0} {
  const long p = params_.p();
  for (long k = f.j0() + 1; k <= f.jmax(); ++k) window_.emplace_back(p, 0, f.evaluate(k));
}

PowExpr RadialProfile::value(long k) const {
  const long p = params_.p();
  if (k < lo_) return inner_.at(p, k);
  if (k > hi()) return outer_.at(p, k);
  return window_[static_cast<std::size_t>(k - lo_)];
}

RadialProfile RadialProfile::truncated(long top) const {
  // Below lo only the inner ray survives.
  if (top < lo_) return {params_, top + 1, {}, inner_, PowerRay{}};
  std::vector<PowExpr> window;
  window.reserve(static_cast<std::size_t>(top - lo_ + 1));
  for (long k = lo_; k <= top; ++k) window.push_back(value(k));
  return {params_, lo_, std::move(window), inner_, PowerRay{}};
}

RadialProfile RadialProfile::scaled(const mpq_class& factor) const {
  std::vector<PowExpr> window;
  window.reserve(window_.size());
  for (const auto& v : window_) window.emplace_back(v.prime, v.exponent, v.coefficient * factor);
  return {params_, lo_, std::move(window), {inner_.coefficient * factor, inner_.rate},
          {outer_.coefficient * factor, outer_.rate}};
}

}  // namespace ultrametric

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ultrametric/padic.hpp"
#include "ultrametric/profile.hpp"
#include "ultrametric/scalar.hpp"

namespace ultrametric {

enum class NormKind { Lq, WeakLq, CentralMorrey, WeakCentralMorrey };

/// "lq", "weak-lq", "morrey", "weak-morrey".
std::string_view to_string(NormKind kind);
NormKind parse_norm_kind(std::string_view text);

/// Which norm to take and its exponents. `weight` only applies to the
/// Lebesgue kinds, `lambda` only to the Morrey kinds.
struct NormSpec {
  NormKind kind = NormKind::Lq;
  mpq_class q = 1;
  WeightSpec weight;
  mpq_class lambda = 0;

  static NormSpec lq(mpq_class q, mpq_class gamma = 0);
  static NormSpec weak_lq(mpq_class q, mpq_class gamma = 0);
  static NormSpec central_morrey(mpq_class q, mpq_class lambda);
  static NormSpec weak_central_morrey(mpq_class q, mpq_class lambda);

  /// q >= 1; n + gamma > 0 for the Lebesgue kinds; -1/q <= lambda < 0 for
  /// the Morrey kinds. Throws ParameterError.
  void validate(const PAdicParams& params) const;
};

/// Where a supremum was reached.
struct Attainment {
  enum class Kind {
    Zero,       // the function vanishes
    Sum,        // strong Lq norm: no supremum involved
    Level,      // attained at the level of `sphere`
    TailLimit,  // approached as the level tends to 0 along the outer tail
  };
  Kind kind = Kind::Zero;
  std::optional<long> sphere;
  /// Ball index for the Morrey kinds; empty when the supremum over balls is
  /// the limit gamma -> +infinity.
  std::optional<long> ball;

  std::string describe() const;
};

struct NormValue {
  Scalar value;
  /// value^q: every supremum is taken on this quantity.
  Scalar power;
  Attainment attainment;
};

/// (sum_k |g(k)|^q * integral of |x|^gamma over S_k)^{1/q}, tails in closed form.
/// Throws DivergenceError naming the tail when the series diverges.
NormValue lq_norm(const RadialProfile& g, const NormSpec& spec, const MathContext& ctx = {});

/// sup_t t * w({|g| > t})^{1/q}, with w the |x|^gamma-weighted Haar measure.
///
/// The supremum is taken over the distinct levels v as v^q * w({|g| >= v})
/// in decreasing order of v. Once the explicit window is used up the
/// remaining levels are bounded in closed form, and the enumeration stops as
/// soon as that bound cannot beat the running maximum. When the outer tail
/// decays at exactly the critical rate the supremum is the limit
/// D * |A_out|^q, D = (1 - p^{-n}) / (1 - p^{-(n+gamma)}), reached as v -> 0.
NormValue weak_lq_norm(const RadialProfile& g, const NormSpec& spec,
                       const MathContext& ctx = {});

/// sup over balls B_b of |B_b|^{-lambda-1/q} (integral over B_b of |g|^q)^{1/q}.
NormValue central_morrey_norm(const RadialProfile& g, const NormSpec& spec,
                              const MathContext& ctx = {});

/// sup over balls B_b of |B_b|^{-lambda-1/q} ||g||_{WL^q(B_b)} (unweighted).
NormValue weak_central_morrey_norm(const RadialProfile& g, const NormSpec& spec,
                                   const MathContext& ctx = {});

/// Dispatch on spec.kind after spec.validate().
NormValue norm(const RadialProfile& g, const NormSpec& spec, const MathContext& ctx = {});

/// A run of ray indices; `first` is empty for a ray unbounded below.
struct RayRange {
  std::optional<long> first;
  long last = 0;
};

/// {k : |g(k)| > threshold} as window spheres plus up to two ray segments.
struct SuperlevelGeometry {
  mpq_class threshold;
  std::vector<long> spheres;
  std::optional<RayRange> inner;
  std::optional<RayRange> outer;
  Scalar measure;
};

/// threshold must be positive. Throws DivergenceError if the set has
/// infinite measure.
SuperlevelGeometry superlevel_set(const RadialProfile& g, const mpq_class& threshold,
                                  const WeightSpec& weight, const MathContext& ctx = {});

struct GridSpec {
  Scalar t_min;
  Scalar t_max;
  long steps = 2;
};

/// Brute-force lower bound for the weak kinds: maximum of t * W(t)^{1/q}
/// over a geometric grid in t, where W only counts spheres inside `window`
/// (no tails, no closed forms). For WeakCentralMorrey the balls range over
/// the window as well.
Scalar weak_norm_grid_oracle(const RadialProfile& g, const NormSpec& spec, const GridSpec& grid,
                             KWindow window, const MathContext& ctx = {});

}  // namespace ultrametric

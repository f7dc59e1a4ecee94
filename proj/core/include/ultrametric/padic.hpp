#pragma once

#include <optional>
#include <span>

#include <gmpxx.h>

#include "ultrametric/scalar.hpp"

namespace ultrametric {

/// The ambient space Q_p^n.
class PAdicParams {
 public:
  /// Throws ParameterError unless p is prime and n >= 1.
  PAdicParams(long p, int n);

  long p() const { return p_; }
  int n() const { return n_; }

  friend bool operator==(const PAdicParams&, const PAdicParams&) = default;

 private:
  long p_;
  int n_;
};

/// Deterministic trial division.
bool is_prime(long value);

/// Radius exponent: B_k and S_k have radius p^k.
struct RadiusExp {
  long k = 0;
};

/// Power weight w(x) = |x|_p^gamma.
struct WeightSpec {
  mpq_class gamma = 0;
};

/// k with x = (s/t) p^k, gcd(st, p) = 1; std::nullopt stands for +infinity (x = 0).
std::optional<long> padic_valuation(const mpq_class& x, long p);

/// |x|_p = p^{-valuation}; exact.
Scalar padic_norm(const mpq_class& x, long p);

/// max_j |x_j|_p. Throws ParameterError if x.size() != n.
Scalar vector_norm(std::span<const mpq_class> x, const PAdicParams& params);

/// |B_k| = p^{nk}.
Scalar ball_measure(RadiusExp k, const PAdicParams& params);

/// |S_k| = p^{nk} (1 - p^{-n}).
Scalar sphere_measure(RadiusExp k, const PAdicParams& params);

/// Integral of |x|_p^gamma over S_k: p^{k(n+gamma)} (1 - p^{-n}).
Scalar sphere_weighted_measure(RadiusExp k, const WeightSpec& weight, const PAdicParams& params,
                               const MathContext& ctx = {});

/// (1 - p^{-n}) / (1 - p^{-s}): the weighted ball measure at k = 0 when the
/// weight exponent is s - n. Throws DivergenceError for s <= 0.
Scalar weighted_ball_factor(const PAdicParams& params, const mpq_class& s,
                            const MathContext& ctx = {});

/// Integral of |x|_p^gamma over B_k, summed over the spheres S_j, j <= k, in
/// closed form. Throws DivergenceError when n + gamma <= 0.
Scalar ball_weighted_measure(RadiusExp k, const WeightSpec& weight, const PAdicParams& params,
                             const MathContext& ctx = {});

}  // namespace ultrametric

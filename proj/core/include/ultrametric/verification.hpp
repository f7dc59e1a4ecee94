#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ultrametric/padic.hpp"
#include "ultrametric/radial.hpp"
#include "ultrametric/scalar.hpp"

namespace ultrametric {

/// Acceptance tolerances, both exact rationals: eq = 10^{-floor(2d/3)} for
/// extremizer equality and excess = 10^{-floor(d/2)} for non-exceedance,
/// d = ctx.digits. At 60 digits these are 1e-40 and 1e-30.
struct Tolerances {
  Scalar eq;
  Scalar excess;

  static Tolerances for_context(const MathContext& ctx);
};

/// Weak endpoint bound for the fractional Hardy operator H_alpha from L^1
/// into weak L^q with weight |x|^gamma, q = (n + gamma) / (n - alpha).
struct EndpointConfig {
  /// Throws ParameterError unless 0 < alpha < n and n + gamma > 0.
  EndpointConfig(PAdicParams params, mpq_class alpha, mpq_class gamma, long trials = 1000,
                 std::uint64_t seed = 0);

  PAdicParams params;
  mpq_class alpha;
  mpq_class gamma;
  long trials;
  std::uint64_t seed;

  mpq_class q() const;
};

/// Bound of the Hardy operator from the central Morrey space into its weak
/// counterpart.
struct MorreyConfig {
  /// Throws ParameterError unless q >= 1 and -1/q <= lambda < 0.
  MorreyConfig(PAdicParams params, mpq_class q, mpq_class lambda, long trials = 1000,
               std::uint64_t seed = 0);

  PAdicParams params;
  mpq_class q;
  mpq_class lambda;
  long trials;
  std::uint64_t seed;
};

using TheoremConfig = std::variant<EndpointConfig, MorreyConfig>;

/// Largest ratio seen over one population of random functions.
struct PopulationResult {
  Scalar max_ratio;
  std::optional<RadialStepFunction> argmax;
  long trials = 0;
  long redraws = 0;
};

struct VerificationReport {
  TheoremConfig config;
  Tolerances tolerances;
  Scalar theoretical_constant;
  Scalar extremizer_ratio;
  PopulationResult nonnegative;
  PopulationResult signed_values;
  /// Hill-climbing generations, for reports produced by sharpness_search.
  std::optional<long> generations;
  /// Best ratio after each generation of a search.
  std::vector<Scalar> search_trace;

  /// Largest ratio over both populations.
  const PopulationResult& worst() const;
  bool extremizer_ok() const;
  bool random_ok() const;
  bool pass() const { return extremizer_ok() && random_ok(); }
};

/// ((1 - p^{-n}) / (1 - p^{-(n+gamma)}))^{(n-alpha)/(n+gamma)}.
Scalar endpoint_sharp_constant(const EndpointConfig& config, const MathContext& ctx = {});

/// ||H_alpha f||_{WL^q(|x|^gamma)} / ||f||_1. Throws DomainError for f = 0.
Scalar endpoint_ratio(const RadialStepFunction& f, const EndpointConfig& config,
                      const MathContext& ctx = {});

/// ||H f||_{WB^{q,lambda}} / ||f||_{B^{q,lambda}}. Throws DomainError for f = 0.
Scalar morrey_ratio(const RadialStepFunction& f, const MorreyConfig& config,
                    const MathContext& ctx = {});

Scalar ratio(const RadialStepFunction& f, const TheoremConfig& config, const MathContext& ctx = {});
Scalar theoretical_constant(const TheoremConfig& config, const MathContext& ctx = {});

/// Extremizer ratio plus `trials` random functions from each population.
/// Zero draws are redrawn and counted.
VerificationReport verify_endpoint(const EndpointConfig& config, const MathContext& ctx = {});
VerificationReport verify_morrey(const MorreyConfig& config, const MathContext& ctx = {});
VerificationReport verify(const TheoremConfig& config, const MathContext& ctx = {});

enum class SearchStart { Extremizer, Random };

/// Hill climbing over single edits of a step function (ring added or removed,
/// one value changed, j0 moved by one). Each generation draws a batch of
/// edits and keeps the best one if it beats the incumbent by more than a
/// factor 1 + tol_eq. The best function is reported in `nonnegative`; the
/// signed population is left empty.
VerificationReport sharpness_search(const TheoremConfig& config, long generations,
                                    SearchStart start = SearchStart::Random,
                                    const MathContext& ctx = {});

}  // namespace ultrametric

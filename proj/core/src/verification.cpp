#include "ultrametric/verification.hpp"

#include <random>

#include "ultrametric/errors.hpp"
#include "ultrametric/hardy.hpp"
#include "ultrametric/norms.hpp"

namespace ultrametric {

Tolerances Tolerances::for_context(const MathContext& ctx) {
  return {pow_int(Scalar(10), -(2 * ctx.digits) / 3), pow_int(Scalar(10), -ctx.digits / 2)};
}

EndpointConfig::EndpointConfig(PAdicParams params_, mpq_class alpha_, mpq_class gamma_,
                               long trials_, std::uint64_t seed_)
    : params(params_), alpha(std::move(alpha_)), gamma(std::move(gamma_)), trials(trials_),
      seed(seed_) {
  alpha.canonicalize();
  gamma.canonicalize();
  if (sgn(alpha) <= 0 || alpha >= params.n()) {
    throw ParameterError("alpha = " + format_rational(alpha) + " violates 0 < alpha < n = " +
                         std::to_string(params.n()));
  }
  if (params.n() + gamma <= 0) {
    throw ParameterError("gamma = " + format_rational(gamma) + " violates n + gamma > 0");
  }
  if (trials < 0) throw ParameterError("trials must be non-negative");
}

mpq_class EndpointConfig::q() const {
  mpq_class out = (params.n() + gamma) / (params.n() - alpha);
  out.canonicalize();
  return out;
}

MorreyConfig::MorreyConfig(PAdicParams params_, mpq_class q_, mpq_class lambda_, long trials_,
                           std::uint64_t seed_)
    : params(params_), q(std::move(q_)), lambda(std::move(lambda_)), trials(trials_), seed(seed_) {
  q.canonicalize();
  lambda.canonicalize();
  if (q < 1) throw ParameterError("q = " + format_rational(q) + " violates q >= 1");
  if (lambda < -1 / q || sgn(lambda) >= 0) {
    throw ParameterError("lambda = " + format_rational(lambda) +
                         " violates -1/q <= lambda < 0 with q = " + format_rational(q));
  }
  if (trials < 0) throw ParameterError("trials must be non-negative");
}

const PopulationResult& VerificationReport::worst() const {
  if (signed_values.trials > 0 && signed_values.max_ratio > nonnegative.max_ratio) {
    return signed_values;
  }
  return nonnegative;
}

bool VerificationReport::extremizer_ok() const {
  return (extremizer_ratio - theoretical_constant).abs() <= tolerances.eq;
}

bool VerificationReport::random_ok() const {
  const Scalar limit = theoretical_constant * (Scalar(1) + tolerances.excess);
  return nonnegative.max_ratio <= limit && signed_values.max_ratio <= limit;
}

Scalar endpoint_sharp_constant(const EndpointConfig& config, const MathContext& ctx) {
  const int n = config.params.n();
  const mpq_class s = n + config.gamma;
  const Scalar base = weighted_ball_factor(config.params, s, ctx);
  mpq_class exponent = (n - config.alpha) / s;
  exponent.canonicalize();
  return pow_rational(base, exponent, ctx);
}

Scalar endpoint_ratio(const RadialStepFunction& f, const EndpointConfig& config,
                      const MathContext& ctx) {
  const Scalar l1 = l1_norm(f);
  if (l1.is_zero()) throw DomainError("ratio undefined for the zero function");
  const RadialHardyImage image = hardy_apply(f, HardyParams(config.params, config.alpha));
  const NormValue weak = weak_lq_norm(image, NormSpec::weak_lq(config.q(), config.gamma), ctx);
  return weak.value / l1;
}

Scalar morrey_ratio(const RadialStepFunction& f, const MorreyConfig& config,
                    const MathContext& ctx) {
  const Scalar denominator =
      central_morrey_norm(f, NormSpec::central_morrey(config.q, config.lambda), ctx).value;
  if (denominator.is_zero()) throw DomainError("ratio undefined for the zero function");
  const RadialHardyImage image = hardy_apply(f, HardyParams(config.params, 0));
  const NormValue weak = weak_central_morrey_norm(
      image, NormSpec::weak_central_morrey(config.q, config.lambda), ctx);
  return weak.value / denominator;
}

Scalar ratio(const RadialStepFunction& f, const TheoremConfig& config, const MathContext& ctx) {
  return std::visit(
      [&](const auto& c) -> Scalar {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, EndpointConfig>) {
          return endpoint_ratio(f, c, ctx);
        } else {
          return morrey_ratio(f, c, ctx);
        }
      },
      config);
}

Scalar theoretical_constant(const TheoremConfig& config, const MathContext& ctx) {
  if (const auto* endpoint = std::get_if<EndpointConfig>(&config)) {
    return endpoint_sharp_constant(*endpoint, ctx);
  }
  return Scalar(1);
}

namespace {

const PAdicParams& params_of(const TheoremConfig& config) {
  return std::visit([](const auto& c) -> const PAdicParams& { return c.params; }, config);
}

long trials_of(const TheoremConfig& config) {
  return std::visit([](const auto& c) { return c.trials; }, config);
}

std::uint64_t seed_of(const TheoremConfig& config) {
  return std::visit([](const auto& c) { return c.seed; }, config);
}

PopulationResult run_population(const TheoremConfig& config, SignMode mode,
                                const MathContext& ctx) {
  const PAdicParams& params = params_of(config);
  RandomFunctionConfig shape;
  shape.sign_mode = mode;
  const std::uint64_t seed = seed_of(config);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(mode == SignMode::Signed ? 2 : 1)};
  std::mt19937_64 seeds(seq);

  PopulationResult out{Scalar(0), std::nullopt, 0, 0};
  const long trials = trials_of(config);
  for (long i = 0; i < trials; ++i) {
    RadialStepFunction f = random_function(seeds(), shape, params);
    while (f.is_zero()) {
      ++out.redraws;
      f = random_function(seeds(), shape, params);
    }
    Scalar r = ratio(f, config, ctx);
    ++out.trials;
    if (!out.argmax || r > out.max_ratio) {
      out.max_ratio = std::move(r);
      out.argmax = std::move(f);
    }
  }
  return out;
}

VerificationReport base_report(const TheoremConfig& config, const MathContext& ctx) {
  const RadialStepFunction f0 = RadialStepFunction::unit_ball_indicator(params_of(config));
  VerificationReport report{config,
                            Tolerances::for_context(ctx),
                            theoretical_constant(config, ctx),
                            ratio(f0, config, ctx),
                            {},
                            {},
                            std::nullopt,
                            {}};
  return report;
}

}  // namespace

VerificationReport verify(const TheoremConfig& config, const MathContext& ctx) {
  VerificationReport report = base_report(config, ctx);
  report.nonnegative = run_population(config, SignMode::Nonnegative, ctx);
  report.signed_values = run_population(config, SignMode::Signed, ctx);
  return report;
}

VerificationReport verify_endpoint(const EndpointConfig& config, const MathContext& ctx) {
  return verify(config, ctx);
}

VerificationReport verify_morrey(const MorreyConfig& config, const MathContext& ctx) {
  return verify(config, ctx);
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

mpq_class random_value(std::mt19937_64& rng) {
  const long num = static_cast<long>(draw(rng, 13));
  const long den = 1 + static_cast<long>(draw(rng, 6));
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

mpq_class nudged(const mpq_class& value, std::mt19937_64& rng) {
  static const mpq_class factors[] = {mpq_class(1, 2), mpq_class(9, 10), mpq_class(11, 10),
                                      mpq_class(2)};
  if (draw(rng, 2) == 0) return random_value(rng);
  mpq_class out = value * factors[draw(rng, 4)];
  out.canonicalize();
  return out;
}

/// One random edit; may return f unchanged when the edit does not apply.
RadialStepFunction mutate(const RadialStepFunction& f, std::mt19937_64& rng) {
  std::map<long, mpq_class> rings = f.rings();
  long j0 = f.j0();
  mpq_class inner = f.inner_value();
  switch (draw(rng, 4)) {
    case 0: {  // add or overwrite a ring
      const long k = j0 + 1 + static_cast<long>(draw(rng, static_cast<std::uint64_t>(
                                                             f.jmax() - j0 + 3)));
      rings[k] = random_value(rng);
      break;
    }
    case 1: {  // remove a ring
      if (rings.empty()) break;
      auto it = rings.begin();
      std::advance(it, static_cast<long>(draw(rng, rings.size())));
      rings.erase(it);
      break;
    }
    case 2: {  // change a value
      const std::uint64_t slot = draw(rng, rings.size() + 1);
      if (slot == rings.size()) {
        inner = nudged(inner, rng);
      } else {
        auto it = rings.begin();
        std::advance(it, static_cast<long>(slot));
        it->second = nudged(it->second, rng);
      }
      break;
    }
    default: {  // move j0; the inner value absorbs or releases one sphere
      if (draw(rng, 2) == 0) {
        rings[j0] = inner;
        --j0;
      } else {
        ++j0;
        rings.erase(j0);
      }
      break;
    }
  }
  return {f.params(), j0, inner, std::move(rings)};
}

}  // namespace

VerificationReport sharpness_search(const TheoremConfig& config, long generations,
                                    SearchStart start, const MathContext& ctx) {
  if (generations < 1) throw ParameterError("generations must be >= 1");
  constexpr int kBatch = 16;
  VerificationReport report = base_report(config, ctx);
  report.generations = generations;
  const PAdicParams& params = params_of(config);
  const std::uint64_t seed = seed_of(config);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    std::uint32_t{3}};
  std::mt19937_64 rng(seq);

  RadialStepFunction best = RadialStepFunction::unit_ball_indicator(params);
  if (start == SearchStart::Random) {
    best = random_function(rng(), RandomFunctionConfig{}, params);
    while (best.is_zero()) {
      ++report.nonnegative.redraws;
      best = random_function(rng(), RandomFunctionConfig{}, params);
    }
  }
  Scalar best_ratio = ratio(best, config, ctx);
  long evaluated = 1;
  const Scalar gain = Scalar(1) + report.tolerances.eq;
  for (long g = 0; g < generations; ++g) {
    std::optional<RadialStepFunction> candidate;
    Scalar candidate_ratio(0);
    for (int i = 0; i < kBatch; ++i) {
      RadialStepFunction next = mutate(best, rng);
      if (next.is_zero() || next == best) continue;
      Scalar r = ratio(next, config, ctx);
      ++evaluated;
      if (!candidate || r > candidate_ratio) {
        candidate_ratio = std::move(r);
        candidate = std::move(next);
      }
    }
    if (candidate && candidate_ratio > best_ratio * gain) {
      best = std::move(*candidate);
      best_ratio = std::move(candidate_ratio);
    }
    report.search_trace.push_back(best_ratio);
  }
  report.nonnegative.max_ratio = best_ratio;
  report.nonnegative.argmax = best;
  report.nonnegative.trials = evaluated;
  return report;
}

}  // namespace ultrametric

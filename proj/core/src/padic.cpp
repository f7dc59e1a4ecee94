#include "ultrametric/padic.hpp"

#include <string>

#include "ultrametric/errors.hpp"

namespace ultrametric {

bool is_prime(long value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (long d = 3; d <= value / d; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

PAdicParams::PAdicParams(long p, int n) : p_(p), n_(n) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw ParameterError("dimension n must be >= 1, got " + std::to_string(n));
}

std::optional<long> padic_valuation(const mpq_class& x, long p) {
  if (sgn(x) == 0) return std::nullopt;
  const mpz_class prime(p);
  mpz_class rest;
  const auto up = mpz_remove(rest.get_mpz_t(), x.get_num_mpz_t(), prime.get_mpz_t());
  const auto down = mpz_remove(rest.get_mpz_t(), x.get_den_mpz_t(), prime.get_mpz_t());
  return static_cast<long>(up) - static_cast<long>(down);
}

Scalar padic_norm(const mpq_class& x, long p) {
  const auto v = padic_valuation(x, p);
  if (!v) return Scalar(0);
  return pow_int(Scalar(p), -*v);
}

Scalar vector_norm(std::span<const mpq_class> x, const PAdicParams& params) {
  if (x.size() != static_cast<std::size_t>(params.n())) {
    throw ParameterError("vector has " + std::to_string(x.size()) + " components, expected " +
                         std::to_string(params.n()));
  }
  Scalar out(0);
  for (const auto& component : x) out = max(out, padic_norm(component, params.p()));
  return out;
}

Scalar ball_measure(RadiusExp k, const PAdicParams& params) {
  return pow_int(Scalar(params.p()), params.n() * k.k);
}

Scalar sphere_measure(RadiusExp k, const PAdicParams& params) {
  return ball_measure(k, params) - ball_measure(RadiusExp{k.k - 1}, params);
}

Scalar sphere_weighted_measure(RadiusExp k, const WeightSpec& weight, const PAdicParams& params,
                               const MathContext& ctx) {
  const long p = params.p();
  const Scalar shell = Scalar(1) - pow_int(Scalar(p), -params.n());
  const mpq_class exponent = mpq_class(k.k) * (params.n() + weight.gamma);
  return shell * prime_power(p, exponent, ctx);
}

Scalar weighted_ball_factor(const PAdicParams& params, const mpq_class& s,
                            const MathContext& ctx) {
  if (sgn(s) <= 0) {
    throw DivergenceError("inner tail", "weighted ball measure diverges: n + gamma <= 0");
  }
  const long p = params.p();
  const Scalar shell = Scalar(1) - pow_int(Scalar(p), -params.n());
  return geometric_tail_sum(prime_power(p, -s, ctx), shell);
}

Scalar ball_weighted_measure(RadiusExp k, const WeightSpec& weight, const PAdicParams& params,
                             const MathContext& ctx) {
  const mpq_class s = params.n() + weight.gamma;
  const Scalar factor = weighted_ball_factor(params, s, ctx);
  return factor * prime_power(params.p(), mpq_class(k.k) * s, ctx);
}

}  // namespace ultrametric

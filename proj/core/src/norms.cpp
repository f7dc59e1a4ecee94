#include "ultrametric/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ultrametric/errors.hpp"

namespace ultrametric {

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Lq:
      return "lq";
    case NormKind::WeakLq:
      return "weak-lq";
    case NormKind::CentralMorrey:
      return "morrey";
    case NormKind::WeakCentralMorrey:
      return "weak-morrey";
  }
  return "?";
}

NormKind parse_norm_kind(std::string_view text) {
  if (text == "lq") return NormKind::Lq;
  if (text == "weak-lq") return NormKind::WeakLq;
  if (text == "morrey") return NormKind::CentralMorrey;
  if (text == "weak-morrey") return NormKind::WeakCentralMorrey;
  throw ParameterError("unknown norm kind '" + std::string(text) +
                       "' (expected lq, weak-lq, morrey or weak-morrey)");
}

NormSpec NormSpec::lq(mpq_class q, mpq_class gamma) {
  return {NormKind::Lq, std::move(q), WeightSpec{std::move(gamma)}, 0};
}

NormSpec NormSpec::weak_lq(mpq_class q, mpq_class gamma) {
  return {NormKind::WeakLq, std::move(q), WeightSpec{std::move(gamma)}, 0};
}

NormSpec NormSpec::central_morrey(mpq_class q, mpq_class lambda) {
  return {NormKind::CentralMorrey, std::move(q), WeightSpec{}, std::move(lambda)};
}

NormSpec NormSpec::weak_central_morrey(mpq_class q, mpq_class lambda) {
  return {NormKind::WeakCentralMorrey, std::move(q), WeightSpec{}, std::move(lambda)};
}

void NormSpec::validate(const PAdicParams& params) const {
  if (q < 1) throw ParameterError("q = " + format_rational(q) + " must be >= 1");
  switch (kind) {
    case NormKind::Lq:
    case NormKind::WeakLq:
      if (params.n() + weight.gamma <= 0) {
        throw ParameterError("weight exponent gamma = " + format_rational(weight.gamma) +
                             " violates n + gamma > 0");
      }
      break;
    case NormKind::CentralMorrey:
    case NormKind::WeakCentralMorrey:
      if (lambda < -1 / q || sgn(lambda) >= 0) {
        throw ParameterError("lambda = " + format_rational(lambda) +
                             " violates -1/q <= lambda < 0 with q = " + format_rational(q));
      }
      break;
  }
}

std::string Attainment::describe() const {
  std::string out;
  switch (kind) {
    case Kind::Zero:
      out = "zero function";
      break;
    case Kind::Sum:
      out = "sum";
      break;
    case Kind::Level:
      out = "level on sphere " + std::to_string(sphere.value_or(0));
      break;
    case Kind::TailLimit:
      out = "limit along the outer tail";
      break;
  }
  if (ball) out += ", ball " + std::to_string(*ball);
  return out;
}

namespace {

/// Haar measure weighted by |x|^{s-n}, restricted to spheres and balls.
class Measure {
 public:
  Measure(const PAdicParams& params, mpq_class s, const MathContext& ctx)
      : prime_(params.p()),
        s_(std::move(s)),
        ctx_(ctx),
        shell_(Scalar(1) - pow_int(Scalar(params.p()), -params.n())),
        ball_factor_(weighted_ball_factor(params, s_, ctx)) {}

  Scalar sphere(long k) const { return shell_ * prime_power(prime_, mpq_class(k) * s_, ctx_); }
  /// Measure of B_k, i.e. of all spheres j <= k.
  Scalar ball(long k) const { return ball_factor_ * prime_power(prime_, mpq_class(k) * s_, ctx_); }
  const Scalar& shell() const { return shell_; }
  const Scalar& ball_factor() const { return ball_factor_; }

 private:
  long prime_;
  mpq_class s_;
  MathContext ctx_;
  Scalar shell_;
  Scalar ball_factor_;
};

struct Power {
  Scalar value;
  Attainment attainment;
};

Attainment level_at(long sphere) { return {Attainment::Kind::Level, sphere, std::nullopt}; }

/// sup_v v^q * mu_s({|g| >= v}), see weak_lq_norm.
Power weak_power(const RadialProfile& g, const mpq_class& q, const mpq_class& s,
                 const MathContext& ctx) {
  const long p = g.params().p();
  const Measure mu(g.params(), s, ctx);
  const PowerRay inner{::abs(g.inner().coefficient), g.inner().rate};
  const PowerRay outer{::abs(g.outer().coefficient), g.outer().rate};

  if (!inner.is_zero() && sgn(inner.rate) < 0) {
    throw DivergenceError("inner tail", "values are unbounded near the origin");
  }
  mpq_class critical_exponent;  // rate_out * q + s
  if (!outer.is_zero()) {
    if (sgn(outer.rate) >= 0) {
      throw DivergenceError("outer tail",
                            "outer tail does not decay; superlevel sets have infinite measure");
    }
    critical_exponent = outer.rate * q + s;
    if (sgn(critical_exponent) > 0) {
      throw DivergenceError("outer tail", "outer tail decays too slowly for the weak norm");
    }
  }

  struct Entry {
    PowExpr level;
    long sphere;
    Scalar measure;
  };
  std::vector<Entry> entries;
  for (long k = g.lo(); k <= g.hi(); ++k) {
    PowExpr level = g.value(k).abs();
    if (!level.is_zero()) entries.push_back({std::move(level), k, mu.sphere(k)});
  }
  // A constant inner ray is a single level carried by the whole ball B_{lo-1}.
  if (!inner.is_zero() && sgn(inner.rate) == 0) {
    entries.push_back({inner.at(p, 0), g.lo() - 1, mu.ball(g.lo() - 1)});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.level > b.level; });

  const bool inner_stream = !inner.is_zero() && sgn(inner.rate) > 0;
  const bool outer_stream = !outer.is_zero();
  const Scalar tail_scale =
      outer_stream ? mu.ball_factor() * pow_rational(Scalar(outer.coefficient), q, ctx) : Scalar(0);

  long next_inner = g.lo() - 1;
  long next_outer = g.hi() + 1;
  std::size_t next_entry = 0;
  Scalar measure(0);
  Scalar last_power(0);
  bool processed = false;
  Power best{Scalar(0), {}};

  while (true) {
    if (next_entry == entries.size() && processed) {
      if (outer_stream) {
        // Past the window and the first outer level, every superlevel set lies
        // in B_K with K the last outer index above the level, so
        // v^q * mu <= D |A|^q p^{K (rate q + s)}.
        if (next_outer > g.hi() + 1) {
          if (sgn(critical_exponent) == 0) {
            if (tail_scale > best.value) {
              best = {tail_scale, {Attainment::Kind::TailLimit, std::nullopt, std::nullopt}};
            }
            break;
          }
          const Scalar bound =
              tail_scale * prime_power(p, mpq_class(next_outer - 1) * critical_exponent, ctx);
          if (bound <= best.value) break;
        }
      } else {
        if (!inner_stream) break;
        const Scalar bound = last_power * (measure + mu.ball(next_inner));
        if (bound <= best.value) break;
      }
    }

    std::optional<PowExpr> top;
    if (next_entry < entries.size()) top = entries[next_entry].level;
    if (inner_stream) {
      PowExpr v = inner.at(p, next_inner);
      if (!top || v > *top) top = std::move(v);
    }
    if (outer_stream) {
      PowExpr v = outer.at(p, next_outer);
      if (!top || v > *top) top = std::move(v);
    }
    if (!top) break;

    std::optional<long> sphere;
    while (next_entry < entries.size() && entries[next_entry].level == *top) {
      measure += entries[next_entry].measure;
      if (!sphere) sphere = entries[next_entry].sphere;
      ++next_entry;
    }
    if (inner_stream && inner.at(p, next_inner) == *top) {
      measure += mu.sphere(next_inner);
      if (!sphere) sphere = next_inner;
      --next_inner;
    }
    if (outer_stream && outer.at(p, next_outer) == *top) {
      measure += mu.sphere(next_outer);
      if (!sphere) sphere = next_outer;
      ++next_outer;
    }
    processed = true;
    last_power = top->pow(q, ctx);
    const Scalar objective = last_power * measure;
    if (objective > best.value) best = {objective, level_at(*sphere)};
  }
  return best;
}

/// Sum of |g(k)|^q mu_s(S_k) over k < lo.
Scalar inner_tail_power(const RadialProfile& g, const mpq_class& q, const mpq_class& s,
                        const Measure& mu, const MathContext& ctx) {
  if (g.inner().is_zero()) return Scalar(0);
  const long p = g.params().p();
  const mpq_class rho = g.inner().rate * q + s;
  if (sgn(rho) <= 0) {
    throw DivergenceError("inner tail", "q-th power integral diverges near the origin");
  }
  const Scalar amplitude = pow_rational(Scalar(mpq_class(::abs(g.inner().coefficient))), q, ctx);
  return amplitude * mu.shell() *
         geometric_tail_sum(prime_power(p, -rho, ctx),
                            prime_power(p, mpq_class(g.lo() - 1) * rho, ctx));
}

/// Sum of |g(k)|^q mu_s(S_k) over k > hi.
Scalar outer_tail_power(const RadialProfile& g, const mpq_class& q, const mpq_class& s,
                        const Measure& mu, const MathContext& ctx) {
  if (g.outer().is_zero()) return Scalar(0);
  const long p = g.params().p();
  const mpq_class rho = g.outer().rate * q + s;
  if (sgn(rho) >= 0) {
    throw DivergenceError("outer tail", "q-th power integral diverges at infinity");
  }
  const Scalar amplitude = pow_rational(Scalar(mpq_class(::abs(g.outer().coefficient))), q, ctx);
  return amplitude * mu.shell() *
         geometric_tail_sum(prime_power(p, rho, ctx),
                            prime_power(p, mpq_class(g.hi() + 1) * rho, ctx));
}

Scalar window_term(const RadialProfile& g, long k, const mpq_class& q, const Measure& mu,
                   const MathContext& ctx) {
  const PowExpr v = g.value(k).abs();
  if (v.is_zero()) return Scalar(0);
  return v.pow(q, ctx) * mu.sphere(k);
}

Scalar lq_power(const RadialProfile& g, const mpq_class& q, const mpq_class& s,
                const MathContext& ctx) {
  const Measure mu(g.params(), s, ctx);
  Scalar total = inner_tail_power(g, q, s, mu, ctx);
  for (long k = g.lo(); k <= g.hi(); ++k) total += window_term(g, k, q, mu, ctx);
  return total + outer_tail_power(g, q, s, mu, ctx);
}

NormValue finish(Power power, const mpq_class& q, const MathContext& ctx) {
  if (power.value.is_zero()) return {Scalar(0), Scalar(0), {}};
  Scalar value = pow_rational(power.value, 1 / q, ctx);
  return {std::move(value), std::move(power.value), std::move(power.attainment)};
}

/// -lambda q - 1, so that |B_b|^{-lambda-1/q} raised to q is p^{n b beta}.
mpq_class morrey_beta(const NormSpec& spec) { return -spec.lambda * spec.q - 1; }

Power central_morrey_power(const RadialProfile& g, const NormSpec& spec,
                           const MathContext& ctx) {
  const PAdicParams& params = g.params();
  const long p = params.p();
  const int n = params.n();
  const mpq_class& q = spec.q;
  const mpq_class s(n);
  const mpq_class beta = morrey_beta(spec);
  const Measure mu(params, s, ctx);

  if (sgn(beta) == 0) {
    // The normalization is constant and the local integral grows with the
    // ball, so the supremum is the full L^q integral.
    Power out{lq_power(g, q, s, ctx), {Attainment::Kind::Sum, std::nullopt, std::nullopt}};
    if (g.outer().is_zero()) out.attainment.ball = g.hi();
    return out;
  }

  auto scale = [&](long b) { return prime_power(p, mpq_class(n * b) * beta, ctx); };

  // Below lo the objective is increasing in the ball index, so the inner
  // branch peaks at b = lo - 1.
  Scalar local = inner_tail_power(g, q, s, mu, ctx);
  Power best{scale(g.lo() - 1) * local, {Attainment::Kind::Sum, std::nullopt, g.lo() - 1}};
  for (long b = g.lo(); b <= g.hi(); ++b) {
    local += window_term(g, b, q, mu, ctx);
    Scalar candidate = scale(b) * local;
    if (candidate > best.value) best = {std::move(candidate), {Attainment::Kind::Sum, std::nullopt, b}};
  }
  if (g.outer().is_zero()) return best;  // nonincreasing beyond hi

  const mpq_class e = g.outer().rate * q + n;
  const Scalar amplitude =
      pow_rational(Scalar(mpq_class(::abs(g.outer().coefficient))), q, ctx) * mu.shell();
  const Scalar local_hi = local;
  const Scalar total = sgn(e) < 0 ? local_hi + outer_tail_power(g, q, s, mu, ctx) : Scalar(0);
  if (sgn(e) > 0 && sgn(n * beta + e) >= 0) {
    if (sgn(n * beta + e) > 0) {
      throw DivergenceError("outer tail", "central Morrey norm diverges along the outer tail");
    }
    throw DomainError("central Morrey norm with a critically decaying outer tail is not supported");
  }

  Scalar previous = best.value;
  for (long b = g.hi() + 1;; ++b) {
    local += amplitude * prime_power(p, mpq_class(b) * e, ctx);
    Scalar candidate = scale(b) * local;
    if (candidate > best.value) best = {candidate, {Attainment::Kind::Sum, std::nullopt, b}};
    // Bound on every later ball.
    if (sgn(e) < 0) {
      if (scale(b + 1) * total <= best.value) break;
    } else if (sgn(e) > 0) {
      const Scalar bound =
          scale(b + 1) * local_hi +
          amplitude * prime_power(p, mpq_class(b + 1) * (n * beta + e), ctx) /
              (Scalar(1) - prime_power(p, -e, ctx));
      if (bound <= best.value) break;
    } else {
      // e == 0: objective p^{n beta b}(I + c (b - hi)) has a decreasing
      // step ratio, so once it stops growing it never grows again.
      if (b > g.hi() + 1 && candidate <= previous) break;
    }
    previous = std::move(candidate);
  }
  return best;
}

Power weak_central_morrey_power(const RadialProfile& g, const NormSpec& spec,
                                const MathContext& ctx) {
  const PAdicParams& params = g.params();
  const long p = params.p();
  const int n = params.n();
  const mpq_class& q = spec.q;
  const mpq_class s(n);
  const mpq_class beta = morrey_beta(spec);

  if (sgn(beta) == 0) {
    // The local weak norm grows with the ball: the supremum is the global one.
    Power out = weak_power(g, q, s, ctx);
    if (g.outer().is_zero()) out.attainment.ball = g.hi();
    return out;
  }

  auto scale = [&](long b) { return prime_power(p, mpq_class(n * b) * beta, ctx); };
  auto local = [&](long b) { return weak_power(g.truncated(b), q, s, ctx); };

  Power best{Scalar(0), {}};
  Scalar local_hi(0);
  for (long b = g.lo() - 1; b <= g.hi(); ++b) {
    Power w = local(b);
    if (b == g.hi()) local_hi = w.value;
    Scalar candidate = scale(b) * w.value;
    if (candidate > best.value) {
      best = {std::move(candidate), std::move(w.attainment)};
      best.attainment.ball = b;
    }
  }
  if (g.outer().is_zero()) return best;

  const mpq_class e = g.outer().rate * q + n;
  Scalar global(0);
  if (sgn(e) <= 0) {
    global = weak_power(g, q, s, ctx).value;
  } else if (sgn(n * beta + e) >= 0) {
    if (sgn(n * beta + e) > 0) {
      throw DivergenceError("outer tail", "weak central Morrey norm diverges along the outer tail");
    }
    throw DomainError(
        "weak central Morrey norm with a critically decaying outer tail is not supported");
  }
  const Scalar amplitude =
      sgn(e) > 0 ? pow_rational(Scalar(mpq_class(::abs(g.outer().coefficient))), q, ctx)
                 : Scalar(0);

  for (long b = g.hi() + 1;; ++b) {
    // Bound on this and every later ball.
    const Scalar bound = sgn(e) <= 0
                             ? scale(b) * global
                             : scale(b) * local_hi +
                                   amplitude * prime_power(p, mpq_class(b) * (n * beta + e), ctx);
    if (bound <= best.value) break;
    Power w = local(b);
    Scalar candidate = scale(b) * w.value;
    if (candidate > best.value) {
      best = {std::move(candidate), std::move(w.attainment)};
      best.attainment.ball = b;
    }
  }
  return best;
}

}  // namespace

NormValue lq_norm(const RadialProfile& g, const NormSpec& spec, const MathContext& ctx) {
  spec.validate(g.params());
  const mpq_class s = g.params().n() + spec.weight.gamma;
  Power power{lq_power(g, spec.q, s, ctx), {Attainment::Kind::Sum, std::nullopt, std::nullopt}};
  return finish(std::move(power), spec.q, ctx);
}

NormValue weak_lq_norm(const RadialProfile& g, const NormSpec& spec, const MathContext& ctx) {
  spec.validate(g.params());
  const mpq_class s = g.params().n() + spec.weight.gamma;
  return finish(weak_power(g, spec.q, s, ctx), spec.q, ctx);
}

NormValue central_morrey_norm(const RadialProfile& g, const NormSpec& spec,
                              const MathContext& ctx) {
  spec.validate(g.params());
  return finish(central_morrey_power(g, spec, ctx), spec.q, ctx);
}

NormValue weak_central_morrey_norm(const RadialProfile& g, const NormSpec& spec,
                                   const MathContext& ctx) {
  spec.validate(g.params());
  return finish(weak_central_morrey_power(g, spec, ctx), spec.q, ctx);
}

NormValue norm(const RadialProfile& g, const NormSpec& spec, const MathContext& ctx) {
  switch (spec.kind) {
    case NormKind::Lq:
      return lq_norm(g, spec, ctx);
    case NormKind::WeakLq:
      return weak_lq_norm(g, spec, ctx);
    case NormKind::CentralMorrey:
      return central_morrey_norm(g, spec, ctx);
    case NormKind::WeakCentralMorrey:
      return weak_central_morrey_norm(g, spec, ctx);
  }
  throw std::logic_error("unhandled norm kind");
}

namespace {

// Smallest k <= top with level(k) > t on an increasing ray (rate > 0).
long first_above(const PowerRay& ray, long prime, const PowExpr& threshold, long top) {
  const double slope = ray.rate.get_d() * std::log(static_cast<double>(prime));
  const double offset = ray.at(prime, 0).log_abs();
  double guess = std::floor((threshold.log_abs() - offset) / slope);
  guess = std::clamp(guess, -1e15, static_cast<double>(top));
  long k = static_cast<long>(guess);
  while (k > std::numeric_limits<long>::min() && ray.at(prime, k - 1) > threshold) --k;
  while (k <= top && ray.at(prime, k) <= threshold) ++k;
  return k;
}

// Largest k >= bottom with level(k) > t on a decreasing ray (rate < 0).
long last_above(const PowerRay& ray, long prime, const PowExpr& threshold, long bottom) {
  const double slope = ray.rate.get_d() * std::log(static_cast<double>(prime));
  const double offset = ray.at(prime, 0).log_abs();
  double guess = std::ceil((threshold.log_abs() - offset) / slope);
  guess = std::clamp(guess, static_cast<double>(bottom), 1e15);
  long k = static_cast<long>(guess);
  while (ray.at(prime, k + 1) > threshold) ++k;
  while (k >= bottom && ray.at(prime, k) <= threshold) --k;
  return k;
}

}  // namespace

SuperlevelGeometry superlevel_set(const RadialProfile& g, const mpq_class& threshold,
                                  const WeightSpec& weight, const MathContext& ctx) {
  if (sgn(threshold) <= 0) throw DomainError("superlevel threshold must be positive");
  const long p = g.params().p();
  const mpq_class s = g.params().n() + weight.gamma;
  const Measure mu(g.params(), s, ctx);
  const PowExpr t{p, 0, threshold};

  SuperlevelGeometry out{threshold, {}, std::nullopt, std::nullopt, Scalar(0)};
  for (long k = g.lo(); k <= g.hi(); ++k) {
    if (g.value(k).abs() > t) {
      out.spheres.push_back(k);
      out.measure += mu.sphere(k);
    }
  }

  const PowerRay inner{::abs(g.inner().coefficient), g.inner().rate};
  if (!inner.is_zero()) {
    const long top = g.lo() - 1;
    if (sgn(inner.rate) < 0) {
      throw DivergenceError("inner tail", "values are unbounded near the origin");
    }
    if (sgn(inner.rate) == 0) {
      if (inner.at(p, 0) > t) {
        out.inner = RayRange{std::nullopt, top};
        out.measure += mu.ball(top);
      }
    } else if (inner.at(p, top) > t) {
      const long first = first_above(inner, p, t, top);
      out.inner = RayRange{first, top};
      out.measure += mu.ball(top) - mu.ball(first - 1);
    }
  }

  const PowerRay outer{::abs(g.outer().coefficient), g.outer().rate};
  if (!outer.is_zero()) {
    const long bottom = g.hi() + 1;
    if (sgn(outer.rate) >= 0) {
      if (sgn(outer.rate) > 0 || outer.at(p, 0) > t) {
        throw DivergenceError("outer tail", "superlevel set has infinite measure");
      }
    } else if (outer.at(p, bottom) > t) {
      const long last = last_above(outer, p, t, bottom);
      out.outer = RayRange{bottom, last};
      out.measure += mu.ball(last) - mu.ball(bottom - 1);
    }
  }
  return out;
}

Scalar weak_norm_grid_oracle(const RadialProfile& g, const NormSpec& spec, const GridSpec& grid,
                             KWindow window, const MathContext& ctx) {
  if (spec.kind != NormKind::WeakLq && spec.kind != NormKind::WeakCentralMorrey) {
    throw ParameterError("the grid oracle only covers the weak norms");
  }
  if (grid.steps < 2) throw ParameterError("grid needs at least 2 steps");
  if (grid.t_min.sign() <= 0 || grid.t_max <= grid.t_min) {
    throw ParameterError("grid needs 0 < t_min < t_max");
  }
  spec.validate(g.params());
  const PAdicParams& params = g.params();
  const mpfr_prec_t bits = ctx.bits();
  const bool morrey = spec.kind == NormKind::WeakCentralMorrey;
  const mpq_class s = morrey ? mpq_class(params.n()) : params.n() + spec.weight.gamma;
  const Real q(spec.q, bits);

  auto log_of = [&](const Real& x) {
    Real out(bits);
    mpfr_log(out.get(), x.get(), MPFR_RNDN);
    return out;
  };

  // (ln |g(k)|, sphere measure) for the non-zero spheres of the window.
  struct Sphere {
    long k;
    Real log_level;
    Real measure;
  };
  std::vector<Sphere> spheres;
  // 1 - p^{-n}
  Real shell(bits);
  mpfr_ui_pow_ui(shell.get(), static_cast<unsigned long>(params.p()),
                 static_cast<unsigned long>(params.n()), MPFR_RNDN);
  mpfr_ui_div(shell.get(), 1, shell.get(), MPFR_RNDN);
  mpfr_ui_sub(shell.get(), 1, shell.get(), MPFR_RNDN);
  const Real base(params.p(), bits);
  for (long k = window.min; k <= window.max; ++k) {
    const Scalar level = g.value(k).abs().lower(ctx);
    if (level.is_zero()) continue;
    Real measure(bits);
    const Real exponent(mpq_class(k) * s, bits);
    mpfr_pow(measure.get(), base.get(), exponent.get(), MPFR_RNDN);
    measure = measure * shell;
    spheres.push_back({k, log_of(level.to_real(bits)), std::move(measure)});
  }
  if (spheres.empty()) return Scalar(0);

  const Real log_min = log_of(grid.t_min.to_real(bits));
  const Real log_max = log_of(grid.t_max.to_real(bits));
  const Real step = (log_max - log_min) / Real(grid.steps - 1, bits);
  const Real log_p = log_of(Real(params.p(), bits));

  std::optional<Real> best;  // best q-th power objective, in log form
  auto scan = [&](std::vector<const Sphere*> ball, const Real& offset) {
    std::sort(ball.begin(), ball.end(),
              [](const Sphere* a, const Sphere* b) { return a->log_level < b->log_level; });
    // suffix[i] = total measure of ball[i..]
    Real running(bits);
    std::vector<Real> suffix(ball.size() + 1, Real(bits));
    for (std::size_t i = ball.size(); i-- > 0;) {
      running = running + ball[i]->measure;
      suffix[i] = running;
    }
    std::size_t first_above = 0;  // first sphere with level > t
    for (long i = 0; i < grid.steps; ++i) {
      const Real log_t = log_min + step * Real(i, bits);
      while (first_above < ball.size() && !(ball[first_above]->log_level > log_t)) ++first_above;
      if (first_above == ball.size()) break;
      const Real objective = q * log_t + log_of(suffix[first_above]) + offset;
      if (!best || objective > *best) best = objective;
    }
  };

  if (!morrey) {
    std::vector<const Sphere*> all;
    for (const auto& sphere : spheres) all.push_back(&sphere);
    scan(std::move(all), Real(bits));
  } else {
    const mpq_class beta = -spec.lambda * spec.q - 1;
    for (long b = window.min; b <= window.max; ++b) {
      std::vector<const Sphere*> ball;
      for (const auto& sphere : spheres) {
        if (sphere.k <= b) ball.push_back(&sphere);
      }
      if (ball.empty()) continue;
      const Real offset = Real(mpq_class(params.n() * b) * beta, bits) * log_p;
      scan(std::move(ball), offset);
    }
  }
  if (!best) return Scalar(0);
  Real out(bits);
  const Real scaled = *best / q;
  mpfr_exp(out.get(), scaled.get(), MPFR_RNDN);
  return Scalar(std::move(out));
}

}  // namespace ultrametric

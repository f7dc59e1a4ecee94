#pragma once

// Direct evaluations used as oracles by the tests. Everything here works on
// sampled sphere values over a finite window with raw MPFR arithmetic; none
// of it goes through the closed-form tails or the level-merging code of the
// library.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "ultrametric/radial.hpp"
#include "ultrametric/real.hpp"

namespace brute {

using ultrametric::Real;

constexpr mpfr_prec_t kBits = 300;

inline Real real(const mpq_class& x) { return Real(x, kBits); }

inline Real pow(const Real& base, const mpq_class& e) {
  Real out(kBits);
  const Real exponent(e, kBits);
  mpfr_pow(out.get(), base.get(), exponent.get(), MPFR_RNDN);
  return out;
}

inline Real p_pow(long p, const mpq_class& e) { return pow(Real(p, kBits), e); }

/// |g| on the spheres k in [kmin, kmax].
struct Samples {
  long p;
  int n;
  long kmin;
  long kmax;
  std::map<long, Real> values;

  /// mu_s(S_k) = (1 - p^{-n}) p^{ks}.
  Real sphere(long k, const mpq_class& s) const {
    return (Real(1, kBits) - p_pow(p, -n)) * p_pow(p, mpq_class(k) * s);
  }
};

inline Samples sample(const ultrametric::RadialStepFunction& f, long kmin, long kmax) {
  Samples out{f.params().p(), f.params().n(), kmin, kmax, {}};
  for (long k = kmin; k <= kmax; ++k) out.values.emplace(k, real(abs(f.evaluate(k))));
  return out;
}

/// |H_alpha f| on the window, summing f over the ball sphere by sphere.
inline Samples sample_hardy(const ultrametric::RadialStepFunction& f, const mpq_class& alpha,
                            long kmin, long kmax) {
  const long p = f.params().p();
  const int n = f.params().n();
  Samples out{p, n, kmin, kmax, {}};
  for (long k = kmin; k <= kmax; ++k) {
    // integral of f over B_k
    Real mass(kBits);
    const long top = std::min(k, f.j0());
    mass = real(f.inner_value()) * p_pow(p, mpq_class(n * top));
    for (long j = f.j0() + 1; j <= k; ++j) {
      mass = mass + real(f.evaluate(j)) * (p_pow(p, mpq_class(n * j)) - p_pow(p, mpq_class(n * (j - 1))));
    }
    Real value = mass * p_pow(p, mpq_class(k) * (alpha - n));
    out.values.emplace(k, value.abs());
  }
  return out;
}

inline Real lq_power(const Samples& g, const mpq_class& q, const mpq_class& s) {
  Real total(0L, kBits);
  for (const auto& [k, v] : g.values) {
    if (!v.is_zero()) total = total + pow(v, q) * g.sphere(k, s);
  }
  return total;
}

/// max over the distinct levels v of v^q * mu_s({|g| >= v}), spheres <= top.
inline Real weak_power(const Samples& g, const mpq_class& q, const mpq_class& s, long top) {
  std::vector<std::pair<const Real*, Real>> spheres;
  for (const auto& [k, v] : g.values) {
    if (k <= top && !v.is_zero()) spheres.emplace_back(&v, g.sphere(k, s));
  }
  std::sort(spheres.begin(), spheres.end(),
            [](const auto& a, const auto& b) { return *a.first > *b.first; });
  Real best(0L, kBits);
  Real measure(0L, kBits);
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    measure = measure + spheres[i].second;
    // Only evaluate once every sphere at this level has been added.
    if (i + 1 < spheres.size() && *spheres[i + 1].first == *spheres[i].first) continue;
    const Real objective = pow(*spheres[i].first, q) * measure;
    if (objective > best) best = objective;
  }
  return best;
}

inline Real weak_power(const Samples& g, const mpq_class& q, const mpq_class& s) {
  return weak_power(g, q, s, g.kmax);
}

/// max over balls b in the window of p^{n beta b} * local power, beta = -lambda q - 1.
inline Real morrey_power(const Samples& g, const mpq_class& q, const mpq_class& lambda,
                         bool weak) {
  const mpq_class beta = -lambda * q - 1;
  const mpq_class s(g.n);
  Real best(0L, kBits);
  Real local(0L, kBits);
  for (long b = g.kmin; b <= g.kmax; ++b) {
    const Real& v = g.values.at(b);
    if (!v.is_zero()) local = local + pow(v, q) * g.sphere(b, s);
    const Real inner = weak ? weak_power(g, q, s, b) : local;
    const Real objective = p_pow(g.p, mpq_class(g.n * b) * beta) * inner;
    if (objective > best) best = objective;
  }
  return best;
}

inline Real root(const Real& power, const mpq_class& q) { return pow(power, 1 / q); }

/// |a - b| <= tol * max(|a|, |b|)
inline bool close(const Real& a, const Real& b, double tol) {
  const Real scale = a.abs() > b.abs() ? a.abs() : b.abs();
  return (a - b).abs() <= scale * Real(mpq_class(tol), kBits);
}

}  // namespace brute

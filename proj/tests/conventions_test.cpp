// Regression tests for three conventions where a careless reading of the
// endpoint argument gives a different answer:
//   1. the operator-norm exponent is (n - alpha)/(n + gamma), not a free 1/q;
//   2. the denominator is the unweighted L^1 norm, not an L^1 norm carrying
//      the |x|^gamma weight;
//   3. the superlevel set of H_alpha chi_{B_0} inside the unit ball is
//      |x| > lambda^{1/alpha}, not |x| > lambda^{1/n}.

#include <cmath>

#include <gtest/gtest.h>

#include "ultrametric/hardy.hpp"
#include "ultrametric/norms.hpp"
#include "ultrametric/verification.hpp"

namespace ultrametric {
namespace {

const MathContext kCtx;

TEST(Conventions, ConstantExponentIsDecayOverWeightedDimension) {
  const Scalar tol = Tolerances::for_context(kCtx).eq;
  for (long p : {2L, 3L, 5L}) {
    for (int n : {1, 2, 3}) {
      for (const mpq_class alpha : {mpq_class(1, 2), mpq_class(1), mpq_class(3, 2)}) {
        if (alpha >= n) continue;
        for (long gamma : {1L, 2L}) {
          const EndpointConfig config(PAdicParams(p, n), alpha, gamma);
          const Scalar base = weighted_ball_factor(config.params, n + gamma, kCtx);
          const Scalar ratio =
              endpoint_ratio(RadialStepFunction::unit_ball_indicator(config.params), config, kCtx);
          const mpq_class exponent = (n - alpha) / (n + gamma);
          EXPECT_LE((ratio - pow_rational(base, exponent, kCtx)).abs(), tol);
          // Reading the exponent as 1 (q = 1) or as 1/(n + gamma) gives
          // visibly different numbers, except that the latter coincides
          // when n - alpha = 1.
          EXPECT_GT((ratio - base).abs(), tol);
          if (n - alpha != 1)
            EXPECT_GT((ratio - pow_rational(base, mpq_class(1) / (n + gamma), kCtx)).abs(), tol)
              << p << ' ' << n << ' ' << alpha << ' ' << gamma;
          // log(ratio) / log(base) recovers the exponent.
          EXPECT_NEAR(std::log(ratio.to_double()) / std::log(base.to_double()),
                      exponent.get_d(), 1e-12);
        }
      }
    }
  }
}

TEST(Conventions, DenominatorIsUnweightedL1) {
  // The ratio is dilation invariant with the plain L^1 norm. A weighted L^1
  // denominator scales differently under dilation, so it cannot be the one
  // the constant refers to.
  const PAdicParams params(3, 1);
  const mpq_class gamma(2);
  const EndpointConfig config(params, mpq_class(1, 2), gamma);
  const Scalar constant = endpoint_sharp_constant(config, kCtx);
  const Scalar tol = Tolerances::for_context(kCtx).eq;
  const auto f0 = RadialStepFunction::unit_ball_indicator(params);
  for (long m = -3; m <= 3; ++m) {
    const auto f = dilate(f0, m);
    EXPECT_LE((endpoint_ratio(f, config, kCtx) - constant).abs(), tol) << m;
    const Scalar weak =
        weak_lq_norm(hardy_apply(f, HardyParams(params, config.alpha)),
                     NormSpec::weak_lq(config.q(), gamma), kCtx)
            .value;
    const Scalar weighted_ratio = weak / lq_norm(f, NormSpec::lq(1, gamma), kCtx).value;
    EXPECT_GT((weighted_ratio - constant).abs(), tol) << m;
  }
}

TEST(Conventions, ExtremizerSuperlevelUsesAlphaRoot) {
  struct Case {
    long p;
    int n;
    mpq_class alpha;
    mpq_class level;
  };
  const Case cases[] = {{2, 2, mpq_class(1, 2), mpq_class(1, 4)},
                        {3, 3, mpq_class(1), mpq_class(1, 10)},
                        {5, 2, mpq_class(3, 2), mpq_class(1, 1000000)},
                        {2, 3, mpq_class(3, 2), mpq_class(1, 100)}};
  for (const auto& c : cases) {
    const PAdicParams params(c.p, c.n);
    const auto image = hardy_apply(RadialStepFunction::unit_ball_indicator(params),
                                   HardyParams(params, c.alpha));
    const auto geometry = superlevel_set(image, c.level, WeightSpec{}, kCtx);
    ASSERT_TRUE(geometry.inner.has_value());
    ASSERT_TRUE(geometry.inner->first.has_value());
    // Smallest k with p^k > level^{1/alpha}, and the same with 1/n.
    auto first_above = [&](double root) {
      const double bound = std::pow(c.level.get_d(), root);
      long k = -200;
      while (std::pow(static_cast<double>(c.p), static_cast<double>(k)) <= bound) ++k;
      return k;
    };
    const long with_alpha = first_above(1.0 / c.alpha.get_d());
    const long with_n = first_above(1.0 / c.n);
    EXPECT_EQ(*geometry.inner->first, with_alpha);
    EXPECT_NE(*geometry.inner->first, with_n);
    // Every sphere in the reported range is above the level; the next one is not.
    const PowExpr t(c.p, 0, c.level);
    EXPECT_GT(image.value_expr(with_alpha), t);
    EXPECT_LE(image.value_expr(with_alpha - 1), t);
  }
}

}  // namespace
}  // namespace ultrametric

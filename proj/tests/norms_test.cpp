#include <gtest/gtest.h>

#include "support/rational.hpp"
#include "support/brute.hpp"
#include "ultrametric/errors.hpp"
#include "ultrametric/hardy.hpp"
#include "ultrametric/norms.hpp"

namespace ultrametric {
namespace {

const MathContext kCtx;

Real lowered(const Scalar& x) { return x.to_real(brute::kBits); }

RadialStepFunction random_signed(std::uint64_t seed, const PAdicParams& params) {
  RandomFunctionConfig config;
  config.sign_mode = seed % 2 ? SignMode::Signed : SignMode::Nonnegative;
  return random_function(seed, config, params);
}

TEST(NormSpec, Validation) {
  const PAdicParams params(2, 1);
  EXPECT_THROW(NormSpec::lq(mpq_class(1, 2)).validate(params), ParameterError);
  EXPECT_THROW(NormSpec::lq(2, -1).validate(params), ParameterError);
  EXPECT_NO_THROW(NormSpec::lq(2, mpq_class(-1, 2)).validate(params));
  EXPECT_THROW(NormSpec::central_morrey(2, 0).validate(params), ParameterError);
  EXPECT_THROW(NormSpec::central_morrey(2, mpq_class(-3, 4)).validate(params), ParameterError);
  EXPECT_NO_THROW(NormSpec::central_morrey(2, mpq_class(-1, 2)).validate(params));
  EXPECT_EQ(parse_norm_kind("weak-morrey"), NormKind::WeakCentralMorrey);
  EXPECT_EQ(to_string(NormKind::WeakLq), "weak-lq");
  EXPECT_THROW(parse_norm_kind("lp"), ParameterError);
}

TEST(LqNorm, Examples) {
  const auto f0 = RadialStepFunction::unit_ball_indicator(PAdicParams(2, 1));
  EXPECT_EQ(lq_norm(f0, NormSpec::lq(1)).value, Scalar(1));
  EXPECT_EQ(lq_norm(f0, NormSpec::lq(2)).value, Scalar(1));
  EXPECT_TRUE(lq_norm(f0, NormSpec::lq(2)).value.is_exact());
  EXPECT_EQ(lq_norm(RadialStepFunction::zero(PAdicParams(2, 1)), NormSpec::lq(3)).value, Scalar(0));
  // sum_{k<=0} 2^{2k} / 2 = 2/3 with weight |x|^1
  EXPECT_EQ(lq_norm(f0, NormSpec::lq(1, 1)).value.exact(), mpq_class(2, 3));
}

TEST(LqNorm, MatchesDirectSum) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PAdicParams params(seed % 2 ? 2 : 3, 1 + static_cast<int>(seed % 2));
    const auto f = random_signed(seed, params);
    const mpq_class q = testing_support::ratio(2 + static_cast<long>(seed % 3), 1 + static_cast<long>(seed % 2));
    const mpq_class gamma = testing_support::ratio(static_cast<long>(seed % 3), 2);
    const mpq_class s = params.n() + gamma;
    const Real want = brute::root(brute::lq_power(brute::sample(f, -400, 20), q, s), q);
    const Real got = lowered(lq_norm(f, NormSpec::lq(q, gamma), kCtx).value);
    EXPECT_TRUE(brute::close(got, want, 1e-18)) << seed << ' ' << got.to_string(30) << ' ' << want.to_string(30);
  }
}

TEST(LqNorm, HardyImageTails) {
  // Both tails converge for q > (n + gamma) / (n - alpha).
  const PAdicParams params(3, 1);
  const auto f = RadialStepFunction(params, -1, 2, {{0, 1}, {2, mpq_class(1, 3)}});
  const mpq_class alpha(1, 2);
  const auto image = hardy_apply(f, HardyParams(params, alpha));
  const mpq_class q(3);
  const Real want = brute::root(brute::lq_power(brute::sample_hardy(f, alpha, -120, 120), q, 1), q);
  EXPECT_TRUE(brute::close(lowered(lq_norm(image, NormSpec::lq(q), kCtx).value), want, 1e-25));
  // At q = (n + gamma)/(n - alpha) = 2 the outer tail diverges.
  try {
    lq_norm(image, NormSpec::lq(2), kCtx);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.tail(), "outer tail");
  }
}

TEST(LqNorm, InnerTailDivergence) {
  const PAdicParams params(2, 1);
  // Constant inner value with weight |x|^{-1}: n + gamma = 0 is rejected up front,
  // a negative inner rate diverges at the origin.
  const RadialProfile g(params, 0, {}, PowerRay{1, -1}, PowerRay{});
  try {
    lq_norm(g, NormSpec::lq(1), kCtx);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.tail(), "inner tail");
  }
}

TEST(WeakLqNorm, Examples) {
  const PAdicParams params(2, 1);
  const auto f0 = RadialStepFunction::unit_ball_indicator(params);
  EXPECT_EQ(weak_lq_norm(f0, NormSpec::weak_lq(1)).value, Scalar(1));
  EXPECT_EQ(weak_lq_norm(RadialStepFunction::zero(params), NormSpec::weak_lq(2)).value, Scalar(0));
  // Two levels: 2 on B_0 (measure 1) and 1 on S_1 (measure 1).
  const RadialStepFunction f(params, 0, 2, {{1, 1}});
  const NormValue v = weak_lq_norm(f, NormSpec::weak_lq(1));
  EXPECT_EQ(v.value, Scalar(2));  // max(2 * 1, 1 * 2)
  const NormValue v2 = weak_lq_norm(f, NormSpec::weak_lq(2));
  EXPECT_EQ(v2.power, Scalar(4));  // max(4 * 1, 1 * 2)
  EXPECT_EQ(v2.attainment.kind, Attainment::Kind::Level);
  EXPECT_EQ(v2.attainment.sphere, 0);
}

TEST(WeakLqNorm, EndpointExtremizer) {
  // Frozen from 70-digit mpmath evaluations of the closed form.
  struct Case {
    long p;
    int n;
    mpq_class alpha;
    mpq_class gamma;
    const char* value;
  };
  const Case cases[] = {
      {2, 1, mpq_class(1, 2), 1, "0.9036020036098448319622180528914441902220170406031435157043"},
      {2, 2, mpq_class(1, 2), 1, "0.9258200997725514615665667765839995225293149010083352213873"},
      {3, 1, mpq_class(1, 2), 2, "0.9405528264406003547607878522826953353890293768779981399289"},
      {5, 3, mpq_class(3, 2), 2, "0.9976890382472842729978458478045016347109952751596246551637"},
      {2, 3, mpq_class(1), 1, "0.9660917830792959049145776104779847815426755249839315392464"},
  };
  for (const auto& c : cases) {
    const PAdicParams params(c.p, c.n);
    const auto image = hardy_apply(RadialStepFunction::unit_ball_indicator(params),
                                   HardyParams(params, c.alpha));
    const mpq_class q = (c.n + c.gamma) / (c.n - c.alpha);
    const NormValue v = weak_lq_norm(image, NormSpec::weak_lq(q, c.gamma), kCtx);
    EXPECT_EQ(v.value.to_string(58), c.value) << c.p << ' ' << c.n;
    EXPECT_EQ(v.attainment.kind, Attainment::Kind::TailLimit);
  }
}

TEST(WeakLqNorm, MatchesDirectLevels) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PAdicParams params(seed % 2 ? 2 : 5, 1 + static_cast<int>(seed % 3));
    const auto f = random_signed(seed, params);
    const mpq_class q = testing_support::ratio(1 + static_cast<long>(seed % 4), 1 + static_cast<long>(seed % 3));
    if (q < 1) continue;
    const mpq_class gamma = testing_support::ratio(static_cast<long>(seed % 5) - 1, 2);
    const mpq_class s = params.n() + gamma;
    const Real want = brute::root(brute::weak_power(brute::sample(f, -400, 20), q, s), q);
    const Real got = lowered(weak_lq_norm(f, NormSpec::weak_lq(q, gamma), kCtx).value);
    EXPECT_TRUE(brute::close(got, want, 1e-18)) << seed << ' ' << got.to_string(30) << ' ' << want.to_string(30);
  }
}

TEST(WeakLqNorm, HardyImageMatchesWideWindow) {
  // Non-critical outer decay: q above the endpoint exponent.
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const PAdicParams params(seed % 2 ? 2 : 3, 1);
    const auto f = random_function(seed, RandomFunctionConfig{}, params);
    if (f.is_zero()) continue;
    const mpq_class alpha(1, 2);
    const mpq_class q(3 + static_cast<long>(seed % 2));
    const auto image = hardy_apply(f, HardyParams(params, alpha));
    const Real want =
        brute::root(brute::weak_power(brute::sample_hardy(f, alpha, -100, 100), q, 1), q);
    const Real got = lowered(weak_lq_norm(image, NormSpec::weak_lq(q), kCtx).value);
    EXPECT_TRUE(brute::close(got, want, 1e-20)) << seed;
  }
}

TEST(WeakLqNorm, Divergence) {
  const PAdicParams params(2, 1);
  const auto image = hardy_apply(RadialStepFunction::unit_ball_indicator(params),
                                 HardyParams(params, mpq_class(1, 2)));
  // Endpoint q is 2 for gamma = 0; smaller q decays too slowly.
  try {
    weak_lq_norm(image, NormSpec::weak_lq(mpq_class(3, 2)), kCtx);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.tail(), "outer tail");
  }
  const RadialProfile flat(params, 0, {}, PowerRay{1, 0}, PowerRay{1, 0});
  EXPECT_THROW(weak_lq_norm(flat, NormSpec::weak_lq(1), kCtx), DivergenceError);
}

TEST(CentralMorreyNorm, UnitBallIsOne) {
  for (long p : {2L, 3L, 5L}) {
    for (int n : {1, 2}) {
      const auto f0 = RadialStepFunction::unit_ball_indicator(PAdicParams(p, n));
      for (long qi : {1L, 2L, 3L}) {
        for (long d : {1L, 2L, 4L}) {
          const mpq_class q(qi);
          const mpq_class lambda = -1 / (q * d);
          const NormValue v = central_morrey_norm(f0, NormSpec::central_morrey(q, lambda), kCtx);
          EXPECT_EQ(v.value, Scalar(1));
          EXPECT_TRUE(v.value.is_exact());
        }
      }
    }
  }
}

TEST(CentralMorreyNorm, BoundaryReducesToLq) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const PAdicParams params(seed % 2 ? 3 : 2, 1 + static_cast<int>(seed % 2));
    const auto f = random_signed(seed, params);
    const mpq_class q(1 + static_cast<long>(seed % 3));
    EXPECT_EQ(central_morrey_norm(f, NormSpec::central_morrey(q, -1 / q), kCtx).value,
              lq_norm(f, NormSpec::lq(q), kCtx).value);
    EXPECT_EQ(weak_central_morrey_norm(f, NormSpec::weak_central_morrey(q, -1 / q), kCtx).value,
              weak_lq_norm(f, NormSpec::weak_lq(q), kCtx).value);
  }
}

TEST(CentralMorreyNorm, MatchesDirectBalls) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const PAdicParams params(seed % 2 ? 2 : 3, 1 + static_cast<int>(seed % 2));
    const auto f = random_signed(seed, params);
    const mpq_class q = testing_support::ratio(1 + static_cast<long>(seed % 3), 1 + static_cast<long>(seed % 2));
    if (q < 1) continue;
    const mpq_class lambda = -1 / (q * (2 + static_cast<long>(seed % 3)));
    const auto samples = brute::sample(f, -60, 20);
    const Real strong = brute::root(brute::morrey_power(samples, q, lambda, false), q);
    const Real weak = brute::root(brute::morrey_power(samples, q, lambda, true), q);
    EXPECT_TRUE(brute::close(
        lowered(central_morrey_norm(f, NormSpec::central_morrey(q, lambda), kCtx).value), strong,
        1e-15))
        << seed;
    EXPECT_TRUE(brute::close(
        lowered(weak_central_morrey_norm(f, NormSpec::weak_central_morrey(q, lambda), kCtx).value),
        weak, 1e-15))
        << seed;
  }
}

TEST(WeakCentralMorreyNorm, HardyImageOfUnitBall) {
  for (long p : {2L, 3L, 5L}) {
    for (int n : {1, 2}) {
      const PAdicParams params(p, n);
      const auto image =
          hardy_apply(RadialStepFunction::unit_ball_indicator(params), HardyParams(params, 0));
      for (long qi : {1L, 2L, 3L}) {
        const mpq_class q(qi);
        for (long d : {1L, 2L, 4L}) {
          const NormValue v =
              weak_central_morrey_norm(image, NormSpec::weak_central_morrey(q, -1 / (q * d)), kCtx);
          EXPECT_EQ(v.value, Scalar(1)) << p << ' ' << n << ' ' << q << ' ' << d;
        }
      }
    }
  }
}

TEST(WeakCentralMorreyNorm, HardyImagesMatchDirectBalls) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PAdicParams params(seed % 2 ? 2 : 3, 1);
    const auto f = random_signed(seed, params);
    if (f.is_zero()) continue;
    const mpq_class q(1 + static_cast<long>(seed % 3));
    const mpq_class lambda = -1 / (q * 2);
    const auto image = hardy_apply(f, HardyParams(params, 0));
    const Real want = brute::root(
        brute::morrey_power(brute::sample_hardy(f, 0, -140, 25), q, lambda, true), q);
    const Real got = lowered(
        weak_central_morrey_norm(image, NormSpec::weak_central_morrey(q, lambda), kCtx).value);
    EXPECT_TRUE(brute::close(got, want, 1e-15)) << seed << ' ' << got.to_string(30) << ' ' << want.to_string(30);
  }
}

TEST(Norms, ChebyshevAndEmbedding) {
  // weak <= strong for the Lebesgue and the Morrey pairs, 500 cases each.
  const Scalar slack = Scalar(1) + pow_int(Scalar(10), -50);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const PAdicParams params(seed % 3 == 0 ? 5 : (seed % 3 == 1 ? 2 : 3),
                             1 + static_cast<int>(seed % 2));
    const auto f = random_signed(seed, params);
    const mpq_class q = testing_support::ratio(1 + static_cast<long>(seed % 5), 1 + static_cast<long>(seed % 2));
    if (q < 1) continue;
    const mpq_class gamma = testing_support::ratio(static_cast<long>(seed % 4) - 1, 2);
    // Equality is common (single-step profiles), so allow rounding slack.
    EXPECT_LE(weak_lq_norm(f, NormSpec::weak_lq(q, gamma), kCtx).value,
              lq_norm(f, NormSpec::lq(q, gamma), kCtx).value * slack);
    const mpq_class lambda = -1 / (q * (1 + static_cast<long>(seed % 4)));
    EXPECT_LE(weak_central_morrey_norm(f, NormSpec::weak_central_morrey(q, lambda), kCtx).value,
              central_morrey_norm(f, NormSpec::central_morrey(q, lambda), kCtx).value * slack);
  }
}

TEST(Norms, Homogeneity) {
  const Scalar tol = pow_int(Scalar(10), -50);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const PAdicParams params(seed % 2 ? 2 : 3, 1);
    const auto f = random_signed(seed, params);
    const mpq_class c = testing_support::ratio(static_cast<long>(seed % 11) - 5, 1 + static_cast<long>(seed % 4));
    const mpq_class q = testing_support::ratio(1 + static_cast<long>(seed % 3), 1 + static_cast<long>(seed % 2));
    if (q < 1) continue;
    const mpq_class lambda = -1 / (2 * q);
    for (const NormSpec& spec :
         {NormSpec::lq(q), NormSpec::weak_lq(q, 1), NormSpec::central_morrey(q, lambda),
          NormSpec::weak_central_morrey(q, lambda)}) {
      const Scalar lhs = norm(f.scaled(c), spec, kCtx).value;
      const Scalar rhs = Scalar(abs(c)) * norm(f, spec, kCtx).value;
      if (lhs.is_exact() && rhs.is_exact()) {
        EXPECT_EQ(lhs, rhs);
      } else {
        EXPECT_LE((lhs - rhs).abs(), tol * (rhs.abs() + Scalar(1)));
      }
    }
  }
}

TEST(Norms, CriticalMorreyTailUnsupported) {
  // A profile whose outer tail makes the Morrey objective tend to a finite,
  // non-attained limit is reported rather than guessed.
  const PAdicParams params(2, 1);
  const mpq_class q(2);
  const mpq_class lambda(-1, 4);  // beta = -1/2
  // e = rate q + n = 1/2, n beta + e = 0 for rate = -1/4.
  const RadialProfile g(params, 0, {}, PowerRay{1, 0}, PowerRay{1, mpq_class(-1, 4)});
  EXPECT_THROW(central_morrey_norm(g, NormSpec::central_morrey(q, lambda), kCtx), DomainError);
  // Slower decay diverges.
  const RadialProfile slow(params, 0, {}, PowerRay{1, 0}, PowerRay{1, mpq_class(-1, 8)});
  EXPECT_THROW(central_morrey_norm(slow, NormSpec::central_morrey(q, lambda), kCtx),
               DivergenceError);
}

TEST(SuperlevelSet, StepFunction) {
  const PAdicParams params(2, 1);
  const RadialStepFunction f(params, 0, 3, {{1, 1}, {2, 5}, {3, mpq_class(1, 2)}});
  const auto geometry = superlevel_set(f, 2, WeightSpec{}, kCtx);
  EXPECT_EQ(geometry.spheres, std::vector<long>{2});
  ASSERT_TRUE(geometry.inner.has_value());
  EXPECT_FALSE(geometry.inner->first.has_value());
  EXPECT_EQ(geometry.inner->last, 0);
  EXPECT_EQ(geometry.measure, Scalar(3));  // |B_0| + |S_2| = 1 + 2
  EXPECT_THROW(superlevel_set(f, 0, WeightSpec{}, kCtx), DomainError);
}

TEST(GridOracle, Examples) {
  const PAdicParams params(2, 1);
  const auto f0 = RadialStepFunction::unit_ball_indicator(params);
  const GridSpec grid{Scalar(mpq_class(1, 1000)), Scalar(mpq_class(999, 1000)), 10000};
  const Scalar oracle = weak_norm_grid_oracle(f0, NormSpec::weak_lq(1), grid, KWindow{-60, 60});
  EXPECT_LE(oracle, Scalar(1));
  EXPECT_GE(oracle, Scalar(mpq_class(998, 1000)));
  EXPECT_EQ(weak_norm_grid_oracle(RadialStepFunction::zero(params), NormSpec::weak_lq(1), grid,
                                  KWindow{-60, 60}),
            Scalar(0));
  EXPECT_THROW(weak_norm_grid_oracle(f0, NormSpec::lq(1), grid, KWindow{}), ParameterError);
  EXPECT_THROW(weak_norm_grid_oracle(f0, NormSpec::weak_lq(1), GridSpec{Scalar(1), Scalar(1), 10},
                                     KWindow{}),
               ParameterError);
}

}  // namespace
}  // namespace ultrametric

#include <gtest/gtest.h>

#include "support/rational.hpp"
#include "support/brute.hpp"
#include "ultrametric/errors.hpp"
#include "ultrametric/hardy.hpp"

namespace ultrametric {
namespace {

const MathContext kCtx;

TEST(HardyParams, Validation) {
  EXPECT_NO_THROW(HardyParams(PAdicParams(2, 1), 0));
  EXPECT_NO_THROW(HardyParams(PAdicParams(2, 2), mpq_class(3, 2)));
  EXPECT_THROW(HardyParams(PAdicParams(2, 1), 1), ParameterError);
  EXPECT_THROW(HardyParams(PAdicParams(2, 1), mpq_class(-1, 2)), ParameterError);
}

TEST(HardyApply, UnitBallFractional) {
  for (long p : {2L, 3L, 5L}) {
    for (int n : {1, 2, 3}) {
      for (const mpq_class alpha : {mpq_class(1, 2), mpq_class(1), mpq_class(3, 2)}) {
        if (alpha >= n) continue;
        const PAdicParams params(p, n);
        const auto image =
            hardy_apply(RadialStepFunction::unit_ball_indicator(params), HardyParams(params, alpha));
        for (long k = -6; k <= 6; ++k) {
          // |x|^alpha inside the unit ball, |x|^{alpha - n} outside.
          const PowExpr expected(p, k <= 0 ? mpq_class(alpha * k) : mpq_class((alpha - n) * k), 1);
          EXPECT_EQ(image.value_expr(k), expected) << p << ' ' << n << ' ' << alpha << ' ' << k;
        }
      }
    }
  }
}

TEST(HardyApply, UnitBallPlain) {
  const PAdicParams params(3, 2);
  const auto image =
      hardy_apply(RadialStepFunction::unit_ball_indicator(params), HardyParams(params, 0));
  for (long k = -4; k <= 0; ++k) EXPECT_EQ(image.value(k, kCtx), Scalar(1));
  EXPECT_EQ(image.value(1, kCtx).exact(), mpq_class(1, 9));
  EXPECT_EQ(image.value(2, kCtx).exact(), mpq_class(1, 81));
}

TEST(HardyApply, ZeroFunction) {
  const PAdicParams params(2, 2);
  const auto image = hardy_apply(RadialStepFunction::zero(params), HardyParams(params, 1));
  for (long k = -5; k <= 5; ++k) EXPECT_TRUE(image.value_expr(k).is_zero());
}

TEST(HardyApply, MismatchedSpaces) {
  EXPECT_THROW(hardy_apply(RadialStepFunction::unit_ball_indicator(PAdicParams(2, 1)),
                           HardyParams(PAdicParams(3, 1), 0)),
               ParameterError);
}

TEST(HardyApply, MatchesDirectSummation) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const PAdicParams params(seed % 3 == 0 ? 5 : 3, 1 + static_cast<int>(seed % 2));
    RandomFunctionConfig config;
    config.sign_mode = SignMode::Signed;
    const auto f = random_function(seed, config, params);
    const mpq_class alpha = seed % 2 ? mpq_class(1, 2) : mpq_class(0);
    const auto image = hardy_apply(f, HardyParams(params, alpha));
    const auto direct = brute::sample_hardy(f, alpha, -8, 12);
    for (long k = -8; k <= 12; ++k) {
      const Real lib = image.value(k, kCtx).abs().to_real(brute::kBits);
      const Real& want = direct.values.at(k);
      if (want.is_zero()) {
        EXPECT_TRUE(lib.is_zero());
      } else {
        EXPECT_TRUE(brute::close(lib, want, 1e-55)) << seed << ' ' << k;
      }
    }
  }
}

TEST(HardyApply, Linearity) {
  const PAdicParams params(2, 2);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    RandomFunctionConfig config;
    config.sign_mode = SignMode::Signed;
    const auto f = random_function(seed, config, params);
    const auto g = random_function(seed + 7777, config, params);
    const mpq_class a = testing_support::ratio(static_cast<long>(seed % 9) - 4, 3);
    const mpq_class b = testing_support::ratio(1 + static_cast<long>(seed % 5), 2);
    const HardyParams hardy(params, seed % 2 ? mpq_class(1) : mpq_class(1, 2));
    const auto lhs = hardy_apply(linear_combination(a, f, b, g), hardy);
    const auto hf = hardy_apply(f, hardy);
    const auto hg = hardy_apply(g, hardy);
    for (long k = -8; k <= 14; ++k) {
      // All three share the exponent -k(n - alpha), so compare mass profiles.
      EXPECT_EQ(lhs.mass()(k), a * hf.mass()(k) + b * hg.mass()(k));
    }
  }
}

TEST(PointwiseBound, Examples) {
  const KWindow window{-20, 20};
  for (long p : {2L, 3L, 5L}) {
    const PAdicParams params(p, 2);
    const auto f0 = RadialStepFunction::unit_ball_indicator(params);
    EXPECT_TRUE(pointwise_upper_bound_check(f0, HardyParams(params, 1), window));
    EXPECT_TRUE(pointwise_upper_bound_check(RadialStepFunction::zero(params),
                                            HardyParams(params, 1), window));
  }
  // Inner -1 and ring +1 cancel beyond the ring, so the bound is strict there.
  const PAdicParams params(2, 1);
  const RadialStepFunction f(params, 0, -1, {{1, 1}});
  const HardyParams hardy(params, mpq_class(1, 2));
  EXPECT_TRUE(pointwise_upper_bound_check(f, hardy, window));
  const auto image = hardy_apply(f, hardy);
  EXPECT_LT(abs(image.mass()(5)), l1_norm(f).exact());
}

TEST(PointwiseBound, MorreyForm) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const PAdicParams params(seed % 2 ? 2 : 3, 1 + static_cast<int>(seed % 2));
    RandomFunctionConfig config;
    config.sign_mode = SignMode::Signed;
    const auto f = random_function(seed, config, params);
    const mpq_class q = 1 + static_cast<long>(seed % 3);
    const mpq_class lambda = -1 / (q * (1 + static_cast<long>(seed % 4)));
    EXPECT_TRUE(pointwise_upper_bound_check(f, HardyParams(params, 0), KWindow{-15, 15},
                                            MorreyExponents{q, lambda}, kCtx));
  }
  EXPECT_THROW(pointwise_upper_bound_check(RadialStepFunction::unit_ball_indicator(PAdicParams(2, 2)),
                                           HardyParams(PAdicParams(2, 2), 1), KWindow{},
                                           MorreyExponents{2, mpq_class(-1, 4)}),
               ParameterError);
}

TEST(DilationCovariance, Examples) {
  const PAdicParams params(2, 1);
  const auto f0 = RadialStepFunction::unit_ball_indicator(params);
  EXPECT_TRUE(dilation_covariance_check(f0, HardyParams(params, 0), 0, KWindow{}));
  EXPECT_TRUE(dilation_covariance_check(f0, HardyParams(params, 0), 3, KWindow{}));
}

TEST(DilationCovariance, RandomFunctions) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const PAdicParams params(seed % 3 == 0 ? 2 : 5, 1 + static_cast<int>(seed % 3));
    RandomFunctionConfig config;
    config.sign_mode = SignMode::Signed;
    const auto f = random_function(seed, config, params);
    const long m = static_cast<long>(seed % 11) - 5;
    const mpq_class alpha = testing_support::ratio(static_cast<long>(seed % (2 * params.n())), 2);
    EXPECT_TRUE(dilation_covariance_check(f, HardyParams(params, alpha), m, KWindow{-20, 20}));
  }
}

}  // namespace
}  // namespace ultrametric

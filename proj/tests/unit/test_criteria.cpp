#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "fracstab/criteria.hpp"
#include "fracstab/error.hpp"
#include "oracles.hpp"

namespace fracstab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CommensurateTF g3(double alpha) { return tf_make(RealPoly{6.0}, RealPoly{6.0, 11.0, 6.0, 1.0}, alpha); }
CommensurateTF lag(double gain, double pole, double alpha = 1.0) {
  return tf_make(RealPoly{gain}, RealPoly{pole, 1.0}, alpha);
}
// 1e-6 + 1/(w+1) + 2/(w+2)
CommensurateTF zf1_plant(double alpha) {
  return tf_make(RealPoly{4.000002, 3.000003, 1e-6}, RealPoly{2.0, 3.0, 1.0}, alpha);
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::invalid_input;
}

std::vector<CommensurateTF> random_suite(unsigned seed, int n, double alpha) {
  std::mt19937 rng(seed);
  std::vector<CommensurateTF> out;
  for (int i = 0; i < n; ++i) {
    const auto p = oracle::random_stable_plant(rng);
    out.push_back(tf_make(RealPoly(p.num), RealPoly(p.den), alpha));
  }
  return out;
}

// Dense-grid infimum of f((i omega)^alpha) over [1e-4, 1e6] computed without the library.
template <class F>
double dense_inf(double alpha, F&& f) {
  double m = kInf;
  for (int k = 0; k <= 200000; ++k) {
    const double w = std::pow(10.0, -4.0 + 10.0 * k / 200000.0);
    m = std::min(m, f(w, oracle::principal_pow(w, alpha)));
  }
  return m;
}

TEST(Circle, SectorBoundsForThirdOrderLag) {
  const SweepConfig cfg;
  const auto pass = circle_criterion(g3(1.0), {0.0, 4.5}, cfg);
  EXPECT_TRUE(pass.pass);
  EXPECT_EQ(pass.case_used, CriterionCase::circle_b);
  EXPECT_NEAR(*pass.detail("inf_re"), -0.2147, 1e-3);
  const auto fail = circle_criterion(g3(1.0), {0.0, 5.0}, cfg);
  EXPECT_FALSE(fail.pass);
  EXPECT_FALSE(fail.precondition_failed);
  EXPECT_LT(fail.margin, 0.0);
  EXPECT_NEAR(fail.witness_omega, 1.779, 1e-2);
  EXPECT_TRUE(circle_criterion(g3(0.7), {0.0, 26.7}, cfg).pass);
  EXPECT_FALSE(circle_criterion(g3(0.7), {0.0, 26.8}, cfg).pass);
}

TEST(Circle, DiskContainmentCase) {
  const auto v = circle_criterion(lag(0.5, 1.0), {-1.0, 2.0}, SweepConfig{});
  EXPECT_EQ(v.case_used, CriterionCase::circle_c);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(*v.detail("disk_center"), 0.25, 1e-15);
  EXPECT_NEAR(*v.detail("disk_radius"), 0.75, 1e-15);
  EXPECT_NEAR(v.margin, 0.5, 1e-8);
  EXPECT_FALSE(circle_criterion(lag(2.0, 1.0), {-1.0, 2.0}, SweepConfig{}).pass);
}

TEST(Circle, SymmetricSectorIsUnsupported) {
  EXPECT_EQ(code_of([] { (void)circle_criterion(lag(0.5, 1.0), {-1.0, 1.0}, SweepConfig{}); }),
            ErrorCode::unsupported_case);
  EXPECT_EQ(code_of([] { (void)circle_criterion(lag(0.5, 1.0), {-2.0, -1.0}, SweepConfig{}); }),
            ErrorCode::unsupported_case);
}

TEST(Circle, DiskExclusionCase) {
  // Disk between -10 and -0.25; the locus stays right of -0.2147.
  const auto v = circle_criterion(g3(1.0), {0.1, 4.0}, SweepConfig{});
  EXPECT_EQ(v.case_used, CriterionCase::circle_a);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(*v.detail("winding"), 0.0);
  // Disk between -2 and -0.1 cuts the locus.
  EXPECT_FALSE(circle_criterion(g3(1.0), {0.5, 10.0}, SweepConfig{}).pass);
  EXPECT_EQ(code_of([] { (void)circle_criterion(lag(1.0, -1.0), {0.5, 2.0}, SweepConfig{}); }),
            ErrorCode::unsupported_case);
}

TEST(Circle, UnstablePlantFailsPrecondition) {
  const auto v = circle_criterion(lag(1.0, -1.0), {0.0, 1.0}, SweepConfig{});
  EXPECT_TRUE(v.precondition_failed);
  EXPECT_FALSE(v.pass);
}

TEST(MaxSectorGamma, Values) {
  EXPECT_NEAR(max_sector_gamma(g3(1.0), SweepConfig{}), 4.6577, 1e-2);
  EXPECT_NEAR(max_sector_gamma(g3(1.0), SweepConfig{}), 4.657822249, 1e-8);
  EXPECT_NEAR(max_sector_gamma(g3(0.7), SweepConfig{}), 26.7023, 5e-2);
  EXPECT_NEAR(max_sector_gamma(g3(0.7), SweepConfig{}), 26.70300188, 1e-6);
  EXPECT_EQ(max_sector_gamma(lag(1.0, 1.0), SweepConfig{}), kInf);
  EXPECT_EQ(code_of([] { (void)max_sector_gamma(lag(1.0, -1.0), SweepConfig{}); }),
            ErrorCode::precondition);
}

TEST(CircleProperty, SectorMonotonicityAndMaximalGammaConsistency) {
  const SweepConfig cfg;
  for (double alpha : {1.0, 0.7}) {
    for (const auto& g : random_suite(31, 20, alpha)) {
      const double gmax = max_sector_gamma(g, cfg);
      if (std::isinf(gmax)) {
        EXPECT_TRUE(circle_criterion(g, {0.0, 1e6}, cfg).pass);
        continue;
      }
      for (double f : {0.1, 0.5, 0.9, 0.999}) EXPECT_TRUE(circle_criterion(g, {0.0, f * gmax}, cfg).pass);
      EXPECT_FALSE(circle_criterion(g, {0.0, 1.001 * gmax}, cfg).pass);
    }
  }
}

TEST(Popov, ExactCancellation) {
  const std::vector<double> q{0.0, 0.5, 1.0};
  const auto v = popov_check(lag(1.0, 1.0), 10.0, q, SweepConfig{});
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(*v.detail("q"), 1.0);
  EXPECT_NEAR(v.margin, 1.1 - 1e-9, 1e-12);
}

TEST(Popov, RelativeDegreeBelowOneIsPrecondition) {
  const auto q = default_popov_q_grid();
  const auto v = popov_check(lag(1.0, 1.0, 0.7), 1.0, q, SweepConfig{});
  EXPECT_TRUE(v.precondition_failed);
  EXPECT_FALSE(v.pass);
}

TEST(Popov, FractionalSecondOrderAgainstDenseOracle) {
  const auto g = tf_make(RealPoly{1.0}, RealPoly{2.0, 3.0, 1.0}, 0.7);
  std::vector<double> q;
  for (int i = 0; i <= 100; ++i) q.push_back(0.1 * i);
  const auto v = popov_check(g, 5.0, q, SweepConfig{});
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(*v.detail("q"), 0.1, 1e-12);
  EXPECT_NEAR(v.margin, 0.2 - 1e-9, 1e-8);

  auto popov_re = [](double qv) {
    return [qv](double w, std::complex<double> s) {
      const auto gv = 1.0 / ((s + 1.0) * (s + 2.0));
      return (std::complex<double>(1.0, qv * w) * gv).real() + 0.2;
    };
  };
  // q = 0.1 keeps Re{(1 + i q omega) G} nonnegative; q = 0 does not.
  EXPECT_GE(dense_inf(0.7, popov_re(0.1)), 0.2 - 1e-9);
  EXPECT_LT(dense_inf(0.7, popov_re(0.0)), 0.2);
}

TEST(Popov, InvalidArguments) {
  const auto q = default_popov_q_grid();
  EXPECT_EQ(code_of([&] { (void)popov_check(g3(1.0), 0.0, q, SweepConfig{}); }), ErrorCode::invalid_sector);
  EXPECT_EQ(code_of([&] { (void)popov_check(g3(1.0), -1.0, q, SweepConfig{}); }), ErrorCode::invalid_sector);
  EXPECT_EQ(q.front(), 0.0);
  EXPECT_EQ(q[1], 0.01);
  EXPECT_LE(q.back(), 1000.0);
}

TEST(PopovProperty, ZeroMultiplierMatchesCircleCaseB) {
  const SweepConfig cfg;
  const std::vector<double> q0{0.0};
  for (double alpha : {1.0, 0.7}) {
    for (const auto& g : random_suite(32, 20, alpha)) {
      if (!stability_report(g).popov_applicable) continue;
      const double gmax = max_sector_gamma(g, cfg);
      for (double k : {0.5 * std::min(gmax, 1e3), 2.0 * std::min(gmax, 1e3)}) {
        EXPECT_EQ(popov_check(g, k, q0, cfg).pass, circle_criterion(g, {0.0, k}, cfg).pass);
      }
    }
  }
}

TEST(ZamesFalb, ZeroMultiplierOnBiproperPlant) {
  const auto v = zames_falb_check(zf1_plant(0.7), MultiplierZ::zero(0.7), false, SweepConfig{});
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(*v.detail("l1_norm"), 0.0);
}

TEST(ZamesFalb, LagMultiplierOnWrappedPlant) {
  const auto g = tf_make(RealPoly{16.000008, 16.000014, 3.000007, 1e-6}, RealPoly{6.0, 11.0, 6.0, 1.0}, 0.7);
  const auto z = certify_nonneg(lag(1.0, 4.0, 0.7), SimConfig{});
  EXPECT_EQ(z.method, CertificationMethod::structural);
  const auto v = zames_falb_check(g, z, false, SweepConfig{});
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(*v.detail("l1_norm"), 0.25, 1e-15);
}

TEST(ZamesFalb, NormAtLeastOneFails) {
  const auto z = MultiplierZ::declared(lag(2.0, 1.0), 2.0, true);
  const auto v = zames_falb_check(zf1_plant(1.0), z, false, SweepConfig{});
  EXPECT_FALSE(v.pass);
  EXPECT_FALSE(v.precondition_failed);
  EXPECT_LT(v.margin, 0.0);
}

TEST(ZamesFalb, UncertifiedSignNeedsOddNonlinearity) {
  const auto g = tf_make(RealPoly{1.001, 0.001}, RealPoly{1.0, 1.0}, 1.0);
  const auto z = MultiplierZ::declared(lag(0.1, 1.0), 0.1, false);
  EXPECT_FALSE(zames_falb_check(g, z, false, SweepConfig{}).pass);
  EXPECT_TRUE(zames_falb_check(g, z, true, SweepConfig{}).pass);
}

TEST(ZamesFalb, UnknownNormNeedsCertification) {
  const auto z = MultiplierZ::declared(lag(0.1, 1.0), std::nullopt, false);
  EXPECT_EQ(code_of([&] { (void)zames_falb_check(g3(1.0), z, false, SweepConfig{}); }),
            ErrorCode::needs_certification);
}

TEST(ZamesFalbProperty, ZeroMultiplierAgreesWithRealPartInfimum) {
  const SweepConfig cfg;
  for (double alpha : {1.0, 0.7, 0.5}) {
    auto suite = random_suite(33, 20, alpha);
    std::mt19937 rng(34);
    std::uniform_real_distribution<double> d0(-0.05, 0.3);
    // Adding feedthrough makes both outcomes occur.
    for (auto& g : suite) g = g + CommensurateTF::constant(d0(rng), alpha);
    for (const auto& g : suite) {
      const auto v = zames_falb_check(g, MultiplierZ::zero(alpha), false, cfg);
      if (v.precondition_failed) continue;
      const double inf_re = extremum_re(g, Direction::min, cfg).value;
      EXPECT_EQ(v.pass, inf_re - cfg.epsilon_margin >= 0.0);
    }
  }
}

// 0.5 (w^2 + 4w + 6)/(w^2 + 3w + 5) and (1 - Z)(1/(w+1) + 2/(w+2)).
CommensurateTF gzf_z(double alpha) {
  return tf_make(RealPoly{3.0, 2.0, 0.5}, RealPoly{5.0, 3.0, 1.0}, alpha);
}
CommensurateTF gzf_plant(double alpha) {
  return tf_make(RealPoly{2.0, 1.0, 0.5}, RealPoly{5.0, 3.0, 1.0}, alpha) *
         tf_make(RealPoly{4.0, 3.0}, RealPoly{2.0, 3.0, 1.0}, alpha);
}

TEST(Gzf, QuasiMonotoneBoundSelectsVerdict) {
  const auto z = certify_nonneg(gzf_z(0.7), SimConfig{});
  ASSERT_TRUE(z.l1_norm);
  EXPECT_NEAR(dc_value(z.tf), 0.6, 1e-15);
  const auto pass = gzf_check(gzf_plant(0.7), z, QuasiMonotoneBound{0.0}, SweepConfig{});
  EXPECT_TRUE(pass.pass);
  EXPECT_EQ(*pass.detail("ratio_route_enabled"), 1.0);
  EXPECT_EQ(*pass.detail("ratio_route_agrees"), 1.0);
  EXPECT_NEAR(*pass.detail("sup_ratio_re"), 2.0, 1e-9);
  const auto fail = gzf_check(gzf_plant(0.7), z, QuasiMonotoneBound{0.5}, SweepConfig{});
  EXPECT_FALSE(fail.pass);
  EXPECT_NEAR(*fail.detail("l1_bound"), 1.0 / 9.0, 1e-15);
}

TEST(Gzf, ZeroMultiplierOnLag) {
  const auto v = gzf_check(lag(1.0, 1.0), MultiplierZ::zero(), QuasiMonotoneBound{0.0}, SweepConfig{});
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(*v.detail("inf_weighted_re"), 1.0, 1e-12);
}

TEST(Gzf, InvalidBound) {
  EXPECT_EQ(code_of([] {
              (void)gzf_check(lag(1.0, 1.0), MultiplierZ::zero(), QuasiMonotoneBound{1.0}, SweepConfig{});
            }),
            ErrorCode::invalid_bound);
}

TEST(Gzf, RatioRouteDisabledWhenOneMinusZVanishes) {
  // Z = 1/(w + 1) has 1 - Z = w/(w + 1), zero at DC.
  const auto z = MultiplierZ::declared(lag(1.0, 1.0), 1.0, true);
  const auto v = gzf_check(lag(1.0, 1.0), z, QuasiMonotoneBound{0.0}, SweepConfig{});
  EXPECT_EQ(*v.detail("ratio_route_enabled"), 0.0);
  EXPECT_TRUE(v.detail("inf_weighted_re").has_value());
}

TEST(GzfProperty, RoutesAgreeOnRandomSuite) {
  std::mt19937 rng(35);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  std::uniform_real_distribution<double> p(0.2, 5.0);
  const SweepConfig cfg;
  int compared = 0;
  for (double alpha : {1.0, 0.7, 0.5}) {
    for (const auto& g : random_suite(36, 20, alpha)) {
      const double pole = p(rng);
      const auto ztf = lag(u(rng) * pole, pole, alpha);
      const auto v = gzf_check(g, MultiplierZ::declared(ztf, dc_value(ztf), true), QuasiMonotoneBound{0.0}, cfg);
      if (v.detail("ratio_route_enabled").value_or(0.0) == 1.0) {
        ++compared;
        EXPECT_EQ(*v.detail("ratio_route_agrees"), 1.0);
      }
    }
  }
  EXPECT_GT(compared, 30);
}

TEST(RlDecompose, SingleFactor) {
  const RLMultiplier m{{1.0}, {2.0}, false};
  const auto k = rl_residues(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_NEAR(k[0], -1.0, 1e-15);
  const auto z = rl_decompose(m);
  EXPECT_NEAR(*z.l1_norm, 0.5, 1e-15);
  EXPECT_EQ(z.tf.num(), (RealPoly{1.0}));
  EXPECT_EQ(z.tf.den(), (RealPoly{2.0, 1.0}));
}

TEST(RlDecompose, TwoFactors) {
  const RLMultiplier m{{1.0, 3.0}, {2.0, 4.0}, false};
  const auto k = rl_residues(m);
  ASSERT_EQ(k.size(), 2u);
  EXPECT_NEAR(k[0], -0.5, 1e-15);
  EXPECT_NEAR(k[1], -1.5, 1e-15);
  const auto z = rl_decompose(m);
  EXPECT_NEAR(*z.l1_norm, 0.625, 1e-15);
  EXPECT_NEAR(dc_value(z.tf), 0.5 / 2.0 + 1.5 / 4.0, 1e-15);
}

TEST(RlDecompose, InterlacingViolation) {
  EXPECT_EQ(code_of([] { (void)rl_decompose(RLMultiplier{{2.0}, {1.0}, false}); }),
            ErrorCode::invalid_multiplier);
  EXPECT_EQ(code_of([] { (void)rl_decompose(RLMultiplier{{1.0, 1.5}, {2.0, 3.0}, false}); }),
            ErrorCode::invalid_multiplier);
}

TEST(RlDecomposeProperty, RandomInterlacedMultipliers) {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> nd(1, 6);
  std::uniform_real_distribution<double> gap(0.05, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    RLMultiplier m;
    double x = 0.0;
    for (int i = 0, n = nd(rng); i < n; ++i) {
      m.zeros.push_back(x += gap(rng));
      m.poles.push_back(x += gap(rng));
    }
    const auto k = rl_residues(m);
    for (double ki : k) EXPECT_LT(ki, 0.0);
    const auto z = rl_decompose(m);
    EXPECT_GT(*z.l1_norm, 0.0);
    EXPECT_LT(*z.l1_norm, 1.0);
    EXPECT_NEAR(dc_value(z.tf), *z.l1_norm, 1e-9);
    // (1 - Z) cleared over den(Z) must equal num(M) with den(M) = den(Z).
    const auto mt = m.rl_tf();
    const RealPoly recon = z.tf.den() - z.tf.num();
    for (int i = 0; i <= mt.num().degree(); ++i) {
      EXPECT_NEAR(recon[i], mt.num()[i], 1e-9 * std::max(1.0, std::abs(mt.num()[i])));
      EXPECT_NEAR(z.tf.den()[i], mt.den()[i], 1e-9 * std::max(1.0, std::abs(mt.den()[i])));
    }
  }
}

// (s + 2)/((s + 1)(s + 3))
CommensurateTF skeleton_plant() { return tf_make(RealPoly{2.0, 1.0}, RealPoly{3.0, 4.0, 1.0}, 1.0); }

double skeleton_oracle(bool rc) {
  return dense_inf(1.0, [rc](double, std::complex<double> s) {
    const auto g = (s + 2.0) / ((s + 1.0) * (s + 3.0));
    const auto gt = 10.0 * g + 1.0;
    const auto m = rc ? (s + 2.0) / (s + 1.0) : (s + 1.0) / (s + 2.0);
    return (gt * m).real();
  });
}

TEST(Skeleton, TrivialMultiplierReducesToZeroMultiplierCheck) {
  const auto g = g3(1.0);
  const auto v = skeleton_check(g, RLMultiplier{}, 0.0, 2.0, SweepConfig{});
  const auto gt = g.scaled(2.0) + CommensurateTF::constant(1.0, 1.0);
  const auto ref = zames_falb_check(gt, MultiplierZ::zero(1.0), false, SweepConfig{});
  EXPECT_EQ(v.case_used, CriterionCase::skeleton_rl);
  EXPECT_EQ(v.pass, ref.pass);
  EXPECT_NEAR(v.margin, ref.margin, 1e-12);
  EXPECT_TRUE(v.pass);
}

TEST(Skeleton, LeadLagRouteAgainstDenseOracle) {
  const auto v = skeleton_check(skeleton_plant(), RLMultiplier{{1.0}, {2.0}, false}, 0.0, 10.0, SweepConfig{});
  const double oracle_inf = skeleton_oracle(false);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.case_used, CriterionCase::skeleton_rl);
  EXPECT_LE(*v.detail("inf_re_multiplied"), oracle_inf + 1e-9);
  EXPECT_NEAR(*v.detail("inf_re_multiplied"), oracle_inf, 1e-4);
  EXPECT_NEAR(v.margin, 0.5, 1e-12);
}

TEST(Skeleton, LagLeadRouteAgainstDenseOracle) {
  const auto v = skeleton_check(skeleton_plant(), RLMultiplier{{1.0}, {2.0}, true}, 0.0, 10.0, SweepConfig{});
  const double oracle_inf = skeleton_oracle(true);
  EXPECT_EQ(v.case_used, CriterionCase::skeleton_rc);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(*v.detail("inf_re_multiplied"), oracle_inf, 1e-4);
  EXPECT_TRUE(v.detail("gzf_pass").has_value());
}

TEST(Skeleton, Errors) {
  EXPECT_EQ(code_of([] { (void)skeleton_check(skeleton_plant(), RLMultiplier{}, 2.0, 1.0, SweepConfig{}); }),
            ErrorCode::invalid_sector);
  // 1 - 2/(s + 1) = (s - 1)/(s + 1) has a right-half-plane zero.
  EXPECT_EQ(code_of([] { (void)skeleton_check(lag(1.0, 1.0), RLMultiplier{}, -2.0, 1.0, SweepConfig{}); }),
            ErrorCode::loop_transformation);
}

TEST(SmallGain, Examples) {
  const SweepConfig cfg;
  const auto a = smallgain_a1(lag(1.0, 1.0), 0.0, 0.5, cfg);
  EXPECT_TRUE(a.pass);
  EXPECT_NEAR(*a.detail("sup_abs_hk"), 1.0, 1e-12);
  const auto b = smallgain_a1(lag(1.0, 1.0), 1.0, 1.9, cfg);
  EXPECT_TRUE(b.pass);
  EXPECT_NEAR(*b.detail("sup_abs_hk"), 0.5, 1e-12);
  const auto c = smallgain_a1(lag(1.0, 1.0), -1.0, 0.1, cfg);
  EXPECT_FALSE(c.pass);
  EXPECT_NEAR(*c.detail("inf_abs_1_plus_kg"), 0.0, 1e-12);
  // Symmetric sector {-1, 1} about a half-gain lag, handled as a small-gain problem.
  EXPECT_TRUE(smallgain_a1(lag(0.5, 1.0), 0.0, 1.0, cfg).pass);
}

TEST(CertifyNonneg, StructuralLag) {
  const auto z = certify_nonneg(lag(1.0, 4.0, 0.7), SimConfig{});
  EXPECT_TRUE(z.nonneg_certified);
  EXPECT_EQ(z.method, CertificationMethod::structural);
  EXPECT_NEAR(*z.l1_norm, 0.25, 1e-15);
}

TEST(CertifyNonneg, ProbeCertifiesNegativeResidueProduct) {
  const auto z = certify_nonneg(tf_make(RealPoly{8.0}, RealPoly{15.0, 8.0, 1.0}, 0.7), SimConfig{});
  EXPECT_TRUE(z.nonneg_certified);
  EXPECT_EQ(z.method, CertificationMethod::probe);
  EXPECT_NEAR(*z.l1_norm, 8.0 / 15.0, 1e-15);
}

TEST(CertifyNonneg, SignChangingImpulseIsIntegrated) {
  const auto z = certify_nonneg(tf_make(RealPoly{-1.0, 1.0}, RealPoly{2.0, 3.0, 1.0}, 1.0), SimConfig{});
  EXPECT_FALSE(z.nonneg_certified);
  EXPECT_NEAR(*z.l1_norm, 5.0 / 6.0, 0.01 * 5.0 / 6.0);
}

TEST(CertifyNonneg, UnstableMultiplier) {
  EXPECT_EQ(code_of([] { (void)certify_nonneg(lag(1.0, -1.0), SimConfig{}); }), ErrorCode::precondition);
}

}  // namespace
}  // namespace fracstab

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fracstab/classlib.hpp"
#include "fracstab/error.hpp"

namespace fracstab {
namespace {

std::vector<FirstOrderTerm> base_terms(double alpha) { return {{1.0, 1.0, alpha}, {2.0, 2.0, alpha}}; }

ClassSpec first_class(double alpha) { return ClassSpec::zf1(1e-6, base_terms(alpha)); }
ClassSpec lead_class(double alpha) { return ClassSpec::zf2(1e-6, base_terms(alpha), 3.0, 4.0, alpha); }
ClassSpec second_order_class(double alpha) {
  return ClassSpec::zf3(1e-6, base_terms(alpha), 8.0, std::nullopt, 3.0, 5.0, alpha);
}
ClassSpec generalized_class(double alpha) {
  return ClassSpec::gzf_poly(0.5, RealPoly{6.0, 4.0, 1.0}, RealPoly{5.0, 3.0, 1.0}, base_terms(alpha), alpha);
}

void expect_poly_near(const RealPoly& got, const RealPoly& want, double rel = 1e-12) {
  ASSERT_EQ(got.degree(), want.degree()) << "degree";
  for (int i = 0; i <= want.degree(); ++i) {
    EXPECT_NEAR(got[i], want[i], rel * std::max(1.0, std::abs(want[i]))) << "coefficient " << i;
  }
}

std::string violation_of(const ClassSpec& s) {
  try {
    s.validate();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::constraint_violation);
    return e.what();
  }
  ADD_FAILURE() << "no violation reported";
  return {};
}

bool mentions(const std::vector<std::string>& notes, const std::string& needle) {
  for (const auto& n : notes) {
    if (n.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(ClassGen, FirstClassPlantCoefficients) {
  const auto inst = gen_stable_class(first_class(0.7));
  EXPECT_EQ(inst.plant.alpha(), 0.7);
  expect_poly_near(inst.plant.num(), RealPoly{4.000002, 3.000003, 1e-6});
  expect_poly_near(inst.plant.den(), RealPoly{2.0, 3.0, 1.0});
  EXPECT_TRUE(inst.multiplier.tf.is_zero());
  EXPECT_EQ(*inst.multiplier.l1_norm, 0.0);
  EXPECT_EQ(inst.required, RequiredCheck::zf);
}

TEST(ClassGen, LeadWrappedPlantCoefficients) {
  const auto inst = gen_stable_class(lead_class(0.7));
  expect_poly_near(inst.plant.num(), RealPoly{16.000008, 16.000014, 3.000007, 1e-6});
  expect_poly_near(inst.plant.den(), RealPoly{6.0, 11.0, 6.0, 1.0});
  expect_poly_near(inst.multiplier.tf.num(), RealPoly{1.0});
  expect_poly_near(inst.multiplier.tf.den(), RealPoly{4.0, 1.0});
  EXPECT_EQ(inst.multiplier.method, CertificationMethod::structural);
  EXPECT_NEAR(*inst.multiplier.l1_norm, 0.25, 1e-15);
  EXPECT_TRUE(mentions(inst.notes, "(b - a)/b"));
}

TEST(ClassGen, SecondOrderMultiplierPlantCoefficients) {
  const auto inst = gen_stable_class(second_order_class(0.7));
  expect_poly_near(inst.plant.den(), RealPoly{14.0, 37.0, 33.0, 11.0, 1.0});
  expect_poly_near(inst.plant.num(),
                   RealPoly{15.0, 8.0, 1.0} * RealPoly{4.000002, 3.000003, 1e-6}, 1e-11);
  expect_poly_near(inst.multiplier.tf.num(), RealPoly{8.0});
  expect_poly_near(inst.multiplier.tf.den(), RealPoly{15.0, 8.0, 1.0});
  EXPECT_TRUE(inst.multiplier.nonneg_certified);
  EXPECT_EQ(inst.multiplier.method, CertificationMethod::probe);
  EXPECT_NEAR(*inst.multiplier.l1_norm, 8.0 / 15.0, 1e-15);
  EXPECT_TRUE(mentions(inst.notes, "k < ac"));
}

TEST(ClassGen, GeneralizedClassPlantCoefficients) {
  const auto inst = gen_stable_class(generalized_class(0.7));
  expect_poly_near(inst.plant.num(), RealPoly{8.0, 10.0, 5.0, 1.5});
  expect_poly_near(inst.plant.den(), RealPoly{10.0, 21.0, 16.0, 6.0, 1.0});
  expect_poly_near(inst.multiplier.tf.num(), RealPoly{3.0, 2.0, 0.5});
  expect_poly_near(inst.multiplier.tf.den(), RealPoly{5.0, 3.0, 1.0});
  EXPECT_EQ(inst.required, RequiredCheck::gzf);
  EXPECT_NEAR(dc_value(inst.multiplier.tf), 0.6, 1e-15);
}

TEST(ClassGen, ConstraintViolations) {
  // kb = 2*4 = 8 >= ac = 1*5
  EXPECT_NE(violation_of(ClassSpec::zf3(1.0, base_terms(1.0), 2.0, 4.0, 1.0, 5.0, 1.0)).find("kb < ac violated"),
            std::string::npos);
  EXPECT_NE(violation_of(ClassSpec::zf3(1.0, base_terms(1.0), 20.0, std::nullopt, 3.0, 5.0, 1.0))
                .find("k < ac violated"),
            std::string::npos);
  EXPECT_NE(violation_of(ClassSpec::zf2(1.0, base_terms(1.0), 4.0, 3.0, 1.0)).find("b > a > 0 violated"),
            std::string::npos);
  // zero at 1 with the only pole at 2: no pole below it.
  EXPECT_NE(violation_of(ClassSpec::gzf(0.1, {1.0}, {2.0}, base_terms(1.0), 1.0)).find("pairing rule"),
            std::string::npos);
  EXPECT_NE(violation_of(ClassSpec::zf1(0.0, base_terms(1.0))).find("k > 0 violated"), std::string::npos);
  EXPECT_NE(violation_of(ClassSpec::zf1(1.0, {{1.0, -1.0, 1.0}})).find("b_i > 0 violated"), std::string::npos);
  EXPECT_THROW((void)gen_stable_class(ClassSpec::zf2(1.0, base_terms(1.0), 4.0, 3.0, 1.0)), Error);
}

TEST(ClassGen, PairedGeneralizedFactorsAccepted) {
  const auto spec = ClassSpec::gzf(0.5, {3.0}, {2.0}, base_terms(0.8), 0.8);
  EXPECT_NO_THROW(spec.validate());
  const auto inst = gen_stable_class(spec);
  EXPECT_NEAR(dc_value(inst.multiplier.tf), 0.75, 1e-15);
}

TEST(VerifyClass, ReferenceInstancesPass) {
  const SweepConfig cfg;
  for (double alpha : {0.7, 1.0}) {
    for (const auto& spec : {first_class(alpha), lead_class(alpha), second_order_class(alpha), generalized_class(alpha)}) {
      const auto v = verify_class_instance(gen_stable_class(spec), cfg);
      EXPECT_TRUE(v.pass) << to_string(spec.kind) << " alpha " << alpha;
      EXPECT_GE(v.margin, 0.0);
      EXPECT_FALSE(mentions(v.notes, "class construction defect"));
    }
  }
}

TEST(VerifyClass, VerdictAcrossOrders) {
  // Below alpha = 0.5 the strictly proper part is no longer square
  // integrable, so admissibility rather than the inequality decides.
  const SweepConfig cfg;
  for (double alpha : {0.3, 0.5, 0.7, 0.9, 1.0}) {
    for (const auto& spec : {first_class(alpha), lead_class(alpha), second_order_class(alpha), generalized_class(alpha)}) {
      const auto inst = gen_stable_class(spec);
      const auto v = verify_class_instance(inst, cfg);
      EXPECT_GE(v.margin, 0.0) << to_string(spec.kind) << " alpha " << alpha;
      if (alpha > 0.5) {
        EXPECT_TRUE(v.pass) << to_string(spec.kind) << " alpha " << alpha;
      } else {
        EXPECT_TRUE(v.precondition_failed) << to_string(spec.kind) << " alpha " << alpha;
        EXPECT_FALSE(stability_report(inst.plant).l2_finite_regular);
      }
    }
  }
}

TEST(ClassProperty, LeadMultiplierDcValue) {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.05, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(rng);
    const double b = a + u(rng);
    const auto inst = gen_stable_class(ClassSpec::zf2(0.5, base_terms(0.6), a, b, 0.6));
    const double dc = dc_value(inst.multiplier.tf);
    EXPECT_NEAR(dc, (b - a) / b, 1e-12);
    EXPECT_LT(dc, 1.0);
  }
}

TEST(ClassProperty, SecondOrderMultiplierDcValue) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  int built = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(rng);
    const double b = a + u(rng);
    const double c = u(rng);
    const double k = frac(rng) * std::min(a * c / b, a + c);
    const auto spec = ClassSpec::zf3(1.0, base_terms(0.8), k, b, a, c, 0.8);
    const auto inst = gen_stable_class(spec, SimConfig{0.02, 60.0});
    const double dc = dc_value(inst.multiplier.tf);
    EXPECT_NEAR(dc, k * b / (a * c), 1e-12);
    EXPECT_LT(dc, 1.0);
    ++built;
  }
  EXPECT_EQ(built, 50);
}

}  // namespace
}  // namespace fracstab

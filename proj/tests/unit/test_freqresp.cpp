#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fracstab/error.hpp"
#include "fracstab/freqresp.hpp"
#include "oracles.hpp"

namespace fracstab {
namespace {

CommensurateTF g3(double alpha) { return tf_make(RealPoly{6.0}, RealPoly{6.0, 11.0, 6.0, 1.0}, alpha); }

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

TEST(SweepConfig, RejectsEmptyRange) {
  SweepConfig cfg;
  cfg.omega_min = cfg.omega_max = 1.0;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::invalid_input);
  EXPECT_EQ(code_of([&] { (void)sweep(g3(1.0), cfg); }), ErrorCode::invalid_input);
}

TEST(Sweep, FirstOrderLagLocus) {
  const auto s = sweep(tf_make(RealPoly{1.0}, RealPoly{1.0, 1.0}, 1.0), SweepConfig{});
  ASSERT_FALSE(s.samples.empty());
  EXPECT_EQ(s.samples.front().omega, 0.0);
  EXPECT_EQ(s.samples.size(), SweepConfig{}.log_grid().size() + 1);
  for (const auto& x : s.samples) {
    EXPECT_GT(x.value.real(), 0.0);
    EXPECT_LE(x.value.real(), 1.0);
    EXPECT_LE(x.value.imag(), 0.0);
  }
  EXPECT_TRUE(s.skipped.empty());
}

TEST(Sweep, ThirdOrderLocusStartsAtOneAndEndsAtZero) {
  const auto s = sweep(g3(1.0), SweepConfig{});
  EXPECT_NEAR(std::abs(s.samples.front().value - Complex(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_LT(std::abs(s.samples.back().value), 1e-20);
  for (std::size_t k = 1; k < s.samples.size(); ++k) {
    EXPECT_GT(s.samples[k].omega, s.samples[k - 1].omega);
  }
}

TEST(Sweep, PoleOnGridIsSkippedAndReported) {
  SweepConfig cfg;
  cfg.omega_min = 0.1;
  cfg.omega_max = 10.0;
  cfg.points_per_decade = 10;
  const auto s = sweep(tf_make(RealPoly{1.0}, RealPoly{1.0, 0.0, 1.0}, 1.0), cfg);
  ASSERT_EQ(s.skipped.size(), 1u);
  EXPECT_NEAR(s.skipped[0], 1.0, 1e-12);
  EXPECT_EQ(s.samples.size(), cfg.log_grid().size());
}

TEST(ExtremumRe, ThirdOrderLagIntegerOrder) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto e = extremum_re(g3(1.0), Direction::min, SweepConfig{});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_NEAR(e.value, -0.2147, 1e-3);
  EXPECT_NEAR(e.value, -0.2146926067, 1e-9);
  EXPECT_NEAR(e.omega, 1.779104, 1e-5);
  EXPECT_LT(secs, 1.0);
}

TEST(ExtremumRe, ThirdOrderLagFractional) {
  const auto e = extremum_re(g3(0.7), Direction::min, SweepConfig{});
  EXPECT_NEAR(e.value, -0.03745, 5e-4);
  EXPECT_NEAR(e.value, -0.03744897314, 1e-10);
  EXPECT_NEAR(e.omega, 4.16933, 1e-4);
}

TEST(ExtremumRe, FirstOrderLagApproachesZeroAtInfinity) {
  const auto e = extremum_re(tf_make(RealPoly{1.0}, RealPoly{1.0, 1.0}, 1.0), Direction::min,
                             SweepConfig{});
  EXPECT_EQ(e.value, 0.0);
  EXPECT_TRUE(std::isinf(e.omega));
  const auto mx = extremum_re(tf_make(RealPoly{1.0}, RealPoly{1.0, 1.0}, 1.0), Direction::max,
                              SweepConfig{});
  EXPECT_EQ(mx.value, 1.0);
  EXPECT_EQ(mx.omega, 0.0);
}

TEST(ExtremumRe, UnstablePlantIsPrecondition) {
  const auto g = tf_make(RealPoly{1.0}, RealPoly{-1.0, 1.0}, 1.0);
  EXPECT_EQ(code_of([&] { (void)extremum_re(g, Direction::min, SweepConfig{}); }),
            ErrorCode::precondition);
}

TEST(ExtremumReProperty, BelowEverySampleAndStableUnderGridDoubling) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_stable_plant(rng);
    for (double alpha : {0.5, 1.0}) {
      const auto g = tf_make(RealPoly(p.num), RealPoly(p.den), alpha);
      SweepConfig cfg;
      const auto e = extremum_re(g, Direction::min, cfg);
      for (const auto& s : sweep(g, cfg).samples) EXPECT_LE(e.value, s.value.real());
      SweepConfig fine = cfg;
      fine.points_per_decade *= 2;
      const auto e2 = extremum_re(g, Direction::min, fine);
      EXPECT_NEAR(e.value, e2.value, 1e-10 * std::max(1.0, std::abs(e.value))) << "trial " << trial;
    }
  }
}

TEST(MinimizeOverFrequency, RefinesBetweenGridPoints) {
  // (log10 omega - 0.123)^2 has its minimum between grid points.
  SweepConfig cfg;
  cfg.points_per_decade = 5;
  const auto e = minimize_over_frequency(
      [](double w) -> std::optional<double> {
        if (w == 0.0 || std::isinf(w)) return std::nullopt;
        const double d = std::log10(w) - 0.123;
        return d * d - 1.0;
      },
      cfg);
  EXPECT_NEAR(e.value, -1.0, 1e-12);
  EXPECT_NEAR(std::log10(e.omega), 0.123, 1e-6);
}

TEST(MinimizeOverFrequency, UndefinedEverywhereThrows) {
  EXPECT_EQ(code_of([] {
              (void)minimize_over_frequency([](double) { return std::optional<double>{}; },
                                            SweepConfig{});
            }),
            ErrorCode::invalid_input);
}

std::vector<Complex> unit_circle(int n, double radius = 1.0, Complex center = 0.0) {
  std::vector<Complex> c;
  for (int k = 0; k < n; ++k) c.push_back(center + std::polar(radius, 2.0 * std::numbers::pi * k / n));
  return c;
}

TEST(Winding, UnitCircleAboutOrigin) {
  const auto c = unit_circle(64);
  EXPECT_EQ(winding_number_closed(c, 0.0), 1);
  std::vector<Complex> cw(c.rbegin(), c.rend());
  EXPECT_EQ(winding_number_closed(cw, 0.0), -1);
  EXPECT_EQ(winding_number_closed(c, Complex(3.0, 0.0)), 0);
}

TEST(Winding, FirstOrderLocusAboutMinusTwo) {
  const auto s = sweep(tf_make(RealPoly{1.0}, RealPoly{1.0, 1.0}, 1.0), SweepConfig{});
  EXPECT_EQ(winding_number(s.samples, Complex(-2.0, 0.0)), 0);
}

TEST(Winding, ScaledLagDoesNotEncircleMinusOne) {
  const auto s = sweep(tf_make(RealPoly{2.0}, RealPoly{1.0, 1.0}, 1.0), SweepConfig{});
  EXPECT_EQ(winding_number(s.samples, Complex(-1.0, 0.0)), 0);
  // The same locus does enclose its own center.
  EXPECT_EQ(std::abs(winding_number(s.samples, Complex(1.0, 0.0))), 1);
}

TEST(Winding, PointOnCurve) {
  const auto c = unit_circle(4);
  EXPECT_EQ(code_of([&] { (void)winding_number_closed(c, Complex(0.5, 0.5)); }), ErrorCode::on_curve);
}

TEST(Winding, CoarseSamplesNeedRefinement) {
  const std::vector<Complex> c{{1.0, 0.0}, {-1.0, 0.1}, {-1.0, -0.1}};
  EXPECT_EQ(code_of([&] { (void)winding_number_closed(c, 0.0); }), ErrorCode::refine_needed);
}

TEST(WindingProperty, InvariantUnderRotationOfStartIndex) {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  auto c = unit_circle(48, 1.0, Complex(0.2, -0.1));
  for (std::size_t k = 0; k < c.size(); k += 2) c[k] *= 1.3;
  for (int trial = 0; trial < 30; ++trial) {
    const Complex p(u(rng), u(rng));
    int ref = 0;
    try {
      ref = winding_number_closed(c, p);
    } catch (const Error&) {
      continue;
    }
    for (std::size_t r = 1; r < c.size(); r += 7) {
      auto rot = c;
      std::rotate(rot.begin(), rot.begin() + static_cast<long>(r), rot.end());
      EXPECT_EQ(winding_number_closed(rot, p), ref);
    }
  }
}

}  // namespace
}  // namespace fracstab

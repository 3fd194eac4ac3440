#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracstab/transfer_function.hpp"

namespace fracstab {

/// Frequency grid and numeric margins shared by every frequency-domain check.
struct SweepConfig {
  double omega_min = 1e-8;
  double omega_max = 1e8;
  int points_per_decade = 40;
  /// Golden-section stopping width, in decades of omega.
  double refine_tol = 1e-10;
  /// Strict inequalities "> 0" are certified as ">= epsilon_margin".
  double epsilon_margin = 1e-9;

  /// Throws invalid_input if the configuration is unusable.
  void validate() const;
  /// Log-spaced grid over [omega_min, omega_max] (no DC point).
  [[nodiscard]] std::vector<double> log_grid() const;
};

struct FreqSample {
  double omega;
  Complex value;
};

struct Sweep {
  std::vector<FreqSample> samples;  // DC point first, then ascending omega
  std::vector<double> skipped;      // grid frequencies that hit a pole
};

[[nodiscard]] Sweep sweep(const CommensurateTF& g, const SweepConfig& cfg);

enum class Direction { min, max };

struct Extremum {
  double value;
  double omega;  // +inf when the bound is the high-frequency limit
};

/// Real-valued quantity of omega; nullopt means "undefined here, skip".
/// Called with omega = 0 and omega = +inf for the end points.
using FrequencyFunctional = std::function<std::optional<double>(double omega)>;

struct ScanEnds {
  bool dc = true;
  bool infinity = true;
};

/// Grid scan of f followed by golden-section refinement (in log omega) of
/// every local minimum. Never returns a value above the best grid sample.
[[nodiscard]] Extremum minimize_over_frequency(const FrequencyFunctional& f,
                                               const SweepConfig& cfg, ScanEnds ends = {});
[[nodiscard]] Extremum maximize_over_frequency(const FrequencyFunctional& f,
                                               const SweepConfig& cfg, ScanEnds ends = {});

/// Extremum of Re G(j omega) over omega >= 0, including the DC value and the
/// high-frequency limit. Throws precondition if G is not BIBO stable.
[[nodiscard]] Extremum extremum_re(const CommensurateTF& g, Direction dir,
                                   const SweepConfig& cfg);

/// Winding count of the closed polygon `curve` around `point`
/// (counterclockwise positive). Throws on_curve when the point is within
/// `tol` of the polygon and refine_needed when an edge turns by more than
/// 3*pi/4 about the point.
[[nodiscard]] int winding_number_closed(std::span<const Complex> curve, Complex point,
                                        double tol = 1e-9);

/// Winding count of the full Nyquist curve built from omega >= 0 samples:
/// the conjugate mirror supplies omega < 0 and the curve closes through the
/// high-frequency end.
[[nodiscard]] int winding_number(std::span<const FreqSample> samples, Complex point,
                                 double tol = 1e-9);

}  // namespace fracstab

#pragma once

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracstab/sector.hpp"
#include "fracstab/transfer_function.hpp"

namespace fracstab {

enum class NonlinearityKind { saturation, gain, piecewise_linear };

/// Memoryless feedback nonlinearity with its declared properties.
class Nonlinearity {
 public:
  /// phi(s) = clamp(slope*s, -limit, limit).
  static Nonlinearity saturation(double slope, double limit);
  static Nonlinearity gain(double k);
  /// Linear interpolation through (x[i], y[i]); the end segments are extended.
  static Nonlinearity piecewise_linear(std::vector<double> x, std::vector<double> y);

  [[nodiscard]] double operator()(double sigma) const;

  [[nodiscard]] NonlinearityKind kind() const noexcept { return kind_; }
  [[nodiscard]] bool odd() const noexcept { return odd_; }
  [[nodiscard]] bool monotone() const noexcept { return monotone_; }
  [[nodiscard]] double lipschitz() const noexcept { return lipschitz_; }
  [[nodiscard]] const Sector& sector() const noexcept { return sector_; }
  [[nodiscard]] std::string describe() const;

 private:
  Nonlinearity() = default;
  void derive_properties();

  NonlinearityKind kind_ = NonlinearityKind::gain;
  double slope_ = 0.0;
  double limit_ = 0.0;
  std::vector<double> xs_;
  std::vector<double> ys_;
  bool odd_ = false;
  bool monotone_ = false;
  double lipschitz_ = 0.0;
  Sector sector_;
};

/// amplitude on t_on <= t <= t_off, zero elsewhere.
struct PulseInput {
  double amplitude = 0.0;
  double t_on = 0.0;
  double t_off = 1.0;

  [[nodiscard]] double operator()(double t) const {
    return t >= t_on && t <= t_off ? amplitude : 0.0;
  }

  /// Value used by the integrator at grid node t: the mean of the one-sided
  /// limits at an edge (within tol), so that a jump on a node is integrated
  /// to second order. The switch-on edge at t = 0 keeps the full amplitude.
  [[nodiscard]] double node_value(double t, double tol) const {
    const bool at_on = t_on > 0.0 && std::abs(t - t_on) <= tol;
    const bool at_off = std::abs(t - t_off) <= tol;
    return at_on || at_off ? 0.5 * amplitude : (*this)(t);
  }
};

/// Fraction of the horizon and thresholds used to decide whether a trace
/// has settled.
struct SettleRule {
  /// Fast branch: |y| below threshold*sup over the final window.
  double threshold = 1e-3;
  double window_fraction = 0.1;
  /// Decay branch: final-window peak at most decay_ratio times the peak of
  /// the window before it.
  double decay_ratio = 0.9;
  bool allow_algebraic_decay = true;
};

struct SimConfig {
  double h = 0.01;
  double t_end = 100.0;
  double loop_tol = 1e-12;
  int loop_max_iter = 100;
  /// Number of past steps kept in the convolution sums; 0 keeps everything.
  std::size_t memory_steps = 0;
  SettleRule settle;

  void validate() const;
  [[nodiscard]] std::size_t steps() const;
};

/// Vector field f(t, x) of D^alpha x = f(t, x).
using VectorField = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

struct Trajectory {
  std::vector<double> t;
  Eigen::MatrixXd x;  // one row per time point
};

/// Fractional Adams predictor-corrector (PECE) for the Caputo problem
/// D^alpha x = f(t, x), x(0) = x0, on the uniform grid of cfg.
/// Throws divergence on a non-finite state.
[[nodiscard]] Trajectory adams_pece(const VectorField& f, const Eigen::VectorXd& x0, double alpha,
                                    const SimConfig& cfg);

using InputSignal = std::function<double(double)>;

/// Linear problem D^alpha x = A x + b u(t), x(0) = x0, with the Adams
/// corrector solved implicitly (product trapezoidal rule). Stable for stiff
/// stable A where the explicit predictor is not.
[[nodiscard]] Trajectory caputo_linear(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                       const InputSignal& u, const Eigen::VectorXd& x0,
                                       double alpha, const SimConfig& cfg);

struct TraceMetrics {
  double l2_estimate = 0.0;
  double sup_norm = 0.0;
  bool settled = false;
  double settle_time = 0.0;  // NaN when |y1| never stays below the threshold
  /// max |y1| over the final window divided by sup_norm.
  double tail_ratio = 0.0;
  /// max |y1| over the final window divided by the max over the window before.
  double window_decay_ratio = 0.0;
};

struct SimTrace {
  std::vector<double> t, u1, e1, e2, y1, y2;
  TraceMetrics metrics;

  void write_csv(std::ostream& os) const;
};

/// Computes the trace metrics of y1 sampled on t.
[[nodiscard]] TraceMetrics trace_metrics(const std::vector<double>& t, const std::vector<double>& y1,
                                         const SettleRule& rule);

/// Closed loop e1 = u1 - y2, y1 = H e1, e2 = u2 + y1, y2 = phi(e2), with H
/// realized by ss and zero initial pseudo-state.
[[nodiscard]] SimTrace simulate_lure(const FracStateSpace& ss, const Nonlinearity& phi,
                                     const PulseInput& u1, const InputSignal& u2,
                                     const SimConfig& cfg);
[[nodiscard]] SimTrace simulate_lure(const FracStateSpace& ss, const Nonlinearity& phi,
                                     const PulseInput& u1, const SimConfig& cfg);

enum class ProbeKind { impulse, step };

struct ProbeResult {
  std::vector<double> t;
  std::vector<double> response;  // step or impulse samples, per the kind
  bool monotone_nondecreasing = false;
  double final_value = 0.0;
  /// Integral of |impulse response|, including the feedthrough mass and a
  /// tail estimate beyond t_end.
  double abs_l1_integral = 0.0;
  double tail_estimate = 0.0;
};

/// Open-loop step (or impulse, as the step's forward difference) response
/// of a BIBO-stable G, integrated with caputo_linear. Throws precondition
/// for unstable G.
[[nodiscard]] ProbeResult response_probe(const CommensurateTF& g, ProbeKind kind,
                                         const SimConfig& cfg);

}  // namespace fracstab

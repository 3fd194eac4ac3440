#include "fracstab/freqresp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracstab/error.hpp"

namespace fracstab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double eval_or_inf(const FrequencyFunctional& f, double log_omega) {
  const auto v = f(std::pow(10.0, log_omega));
  return v && std::isfinite(*v) ? *v : kInf;
}

// Golden-section minimisation on [a, b] (log10 omega).
std::pair<double, double> golden(const FrequencyFunctional& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval_or_inf(f, c);
  double fd = eval_or_inf(f, d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval_or_inf(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval_or_inf(f, d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

void SweepConfig::validate() const {
  if (!(omega_min > 0.0 && omega_min < omega_max && std::isfinite(omega_max))) {
    throw Error(ErrorCode::invalid_input, "sweep range must satisfy 0 < omega_min < omega_max");
  }
  if (points_per_decade < 4) throw Error(ErrorCode::invalid_input, "points_per_decade must be >= 4");
  if (!(refine_tol > 0.0)) throw Error(ErrorCode::invalid_input, "refine_tol must be positive");
  if (!(epsilon_margin >= 0.0)) {
    throw Error(ErrorCode::invalid_input, "epsilon_margin must be nonnegative");
  }
}

std::vector<double> SweepConfig::log_grid() const {
  validate();
  const double lo = std::log10(omega_min);
  const double hi = std::log10(omega_max);
  const auto n = static_cast<std::size_t>(
      std::max(1.0, std::ceil((hi - lo) * static_cast<double>(points_per_decade) - 1e-9)));
  std::vector<double> grid(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    grid[k] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n));
  }
  grid.front() = omega_min;
  grid.back() = omega_max;
  return grid;
}

Sweep sweep(const CommensurateTF& g, const SweepConfig& cfg) {
  Sweep out;
  const auto grid = cfg.log_grid();
  out.samples.reserve(grid.size() + 1);
  auto push = [&](double w) {
    if (const auto v = freq_value(g, w)) {
      out.samples.push_back({w, *v});
    } else {
      out.skipped.push_back(w);
    }
  };
  push(0.0);
  for (double w : grid) push(w);
  return out;
}

Extremum minimize_over_frequency(const FrequencyFunctional& f, const SweepConfig& cfg,
                                 ScanEnds ends) {
  const auto grid = cfg.log_grid();
  std::vector<double> x(grid.size()), v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    x[k] = std::log10(grid[k]);
    const auto fv = f(grid[k]);
    v[k] = fv && std::isfinite(*fv) ? *fv : kInf;
  }

  Extremum best{kInf, kInf};
  auto consider = [&](double value, double omega) {
    if (value < best.value) best = {value, omega};
  };
  if (ends.dc) {
    if (const auto fv = f(0.0); fv && std::isfinite(*fv)) consider(*fv, 0.0);
  }
  for (std::size_t k = 0; k < grid.size(); ++k) consider(v[k], grid[k]);
  if (ends.infinity) {
    if (const auto fv = f(kInf); fv && std::isfinite(*fv)) consider(*fv, kInf);
  }

  const std::size_t n = grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(v[k])) continue;
    const bool left_ok = k == 0 || v[k] < v[k - 1];
    const bool right_ok = k + 1 == n || v[k] <= v[k + 1];
    if (!(left_ok && right_ok)) continue;
    const double a = k == 0 ? x[k] : x[k - 1];
    const double b = k + 1 == n ? x[k] : x[k + 1];
    if (b <= a) continue;
    const auto [xm, fm] = golden(f, a, b, cfg.refine_tol);
    consider(fm, std::pow(10.0, xm));
  }
  if (!std::isfinite(best.value)) {
    throw Error(ErrorCode::invalid_input, "frequency functional undefined on the whole sweep");
  }
  return best;
}

Extremum maximize_over_frequency(const FrequencyFunctional& f, const SweepConfig& cfg,
                                 ScanEnds ends) {
  const FrequencyFunctional neg = [&f](double w) -> std::optional<double> {
    const auto v = f(w);
    if (!v) return std::nullopt;
    return -*v;
  };
  const Extremum e = minimize_over_frequency(neg, cfg, ends);
  return {-e.value, e.omega};
}

Extremum extremum_re(const CommensurateTF& g, Direction dir, const SweepConfig& cfg) {
  if (!check_bibo(g).bibo) {
    throw Error(ErrorCode::precondition,
                "extremum of Re G requires a BIBO-stable transfer function");
  }
  const FrequencyFunctional re = [&g](double w) -> std::optional<double> {
    const auto v = freq_value(g, w);
    if (!v) return std::nullopt;
    return v->real();
  };
  return dir == Direction::min ? minimize_over_frequency(re, cfg)
                               : maximize_over_frequency(re, cfg);
}

int winding_number_closed(std::span<const Complex> curve, Complex point, double tol) {
  const std::size_t n = curve.size();
  if (n < 2) throw Error(ErrorCode::invalid_input, "winding number needs at least two points");
  const double scale = std::max(1.0, std::abs(point));
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = curve[k] - point;
    const Complex b = curve[(k + 1) % n] - point;
    // Distance from the point to the segment.
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    const double t = len2 > 0.0 ? std::clamp(-(a.real() * ab.real() + a.imag() * ab.imag()) / len2, 0.0, 1.0) : 0.0;
    if (std::abs(a + t * ab) <= tol * scale) {
      throw Error(ErrorCode::on_curve, "point lies on the Nyquist curve");
    }
    const double dphi = std::arg(b / a);
    if (std::abs(dphi) > 0.75 * std::numbers::pi) {
      throw Error(ErrorCode::refine_needed,
                  "sample spacing too coarse for winding count (phase step " +
                      std::to_string(dphi) + " rad)");
    }
    total += dphi;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

int winding_number(std::span<const FreqSample> samples, Complex point, double tol) {
  std::vector<Complex> curve;
  curve.reserve(2 * samples.size());
  // omega from -inf up to 0: conjugates in reverse order.
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    if (it->omega == 0.0) continue;
    curve.push_back(std::conj(it->value));
  }
  for (const auto& s : samples) curve.push_back(s.value);
  return winding_number_closed(curve, point, tol);
}

}  // namespace fracstab

#include "fracstab/fdesim.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "fracstab/error.hpp"

namespace fracstab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Nonlinearity Nonlinearity::saturation(double slope, double limit) {
  if (!(std::isfinite(slope) && limit > 0.0 && std::isfinite(limit))) {
    throw Error(ErrorCode::invalid_input, "saturation needs a finite slope and a positive limit");
  }
  Nonlinearity n;
  n.kind_ = NonlinearityKind::saturation;
  n.slope_ = slope;
  n.limit_ = limit;
  n.derive_properties();
  return n;
}

Nonlinearity Nonlinearity::gain(double k) {
  if (!std::isfinite(k)) throw Error(ErrorCode::invalid_input, "gain must be finite");
  Nonlinearity n;
  n.kind_ = NonlinearityKind::gain;
  n.slope_ = k;
  n.derive_properties();
  return n;
}

Nonlinearity Nonlinearity::piecewise_linear(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::invalid_input, "piecewise-linear map needs at least two (x, y) points");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw Error(ErrorCode::invalid_input, "piecewise-linear points must be finite");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw Error(ErrorCode::invalid_input, "piecewise-linear breakpoints must be increasing");
    }
  }
  Nonlinearity n;
  n.kind_ = NonlinearityKind::piecewise_linear;
  n.xs_ = std::move(x);
  n.ys_ = std::move(y);
  n.derive_properties();
  return n;
}

double Nonlinearity::operator()(double sigma) const {
  switch (kind_) {
    case NonlinearityKind::saturation:
      return std::clamp(slope_ * sigma, -limit_, limit_);
    case NonlinearityKind::gain:
      return slope_ * sigma;
    case NonlinearityKind::piecewise_linear: {
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), sigma);
      std::size_t i = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
      i = std::min(i, xs_.size() - 2);
      const double s = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
      return ys_[i] + s * (sigma - xs_[i]);
    }
  }
  return 0.0;
}

void Nonlinearity::derive_properties() {
  switch (kind_) {
    case NonlinearityKind::saturation:
      odd_ = true;
      monotone_ = slope_ >= 0.0;
      lipschitz_ = std::abs(slope_);
      sector_ = slope_ >= 0.0 ? Sector{0.0, slope_} : Sector{slope_, 0.0};
      return;
    case NonlinearityKind::gain:
      odd_ = true;
      monotone_ = slope_ >= 0.0;
      lipschitz_ = std::abs(slope_);
      sector_ = {slope_, slope_};
      return;
    case NonlinearityKind::piecewise_linear:
      break;
  }

  const std::size_t n = xs_.size();
  std::vector<double> slopes(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    slopes[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
  }
  monotone_ = std::all_of(slopes.begin(), slopes.end(), [](double s) { return s >= 0.0; });
  lipschitz_ = 0.0;
  for (double s : slopes) lipschitz_ = std::max(lipschitz_, std::abs(s));

  const double tol = 1e-12 * std::max(1.0, lipschitz_);
  odd_ = true;
  for (double x : xs_) {
    if (std::abs((*this)(-x) + (*this)(x)) > tol * std::max(1.0, std::abs(x))) odd_ = false;
  }
  if (std::abs(slopes.front() - slopes.back()) > tol) odd_ = false;

  // phi(s)/s is monotone on each segment away from 0, so its extremes sit
  // at breakpoints, at 0 and at +-inf.
  const double phi0 = (*this)(0.0);
  if (std::abs(phi0) > tol) {
    sector_ = {-kInf, kInf};
    return;
  }
  std::vector<double> ratios{slopes.front(), slopes.back()};
  const double d = 1e-7 * std::max(1.0, xs_.back() - xs_.front());
  ratios.push_back((*this)(d) / d);
  ratios.push_back((*this)(-d) / -d);
  for (double x : xs_) {
    if (x != 0.0) ratios.push_back((*this)(x) / x);
  }
  sector_ = {*std::min_element(ratios.begin(), ratios.end()),
             *std::max_element(ratios.begin(), ratios.end())};
}

std::string Nonlinearity::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case NonlinearityKind::saturation:
      os << "saturation(slope=" << slope_ << ", limit=" << limit_ << ")";
      break;
    case NonlinearityKind::gain:
      os << "gain(" << slope_ << ")";
      break;
    case NonlinearityKind::piecewise_linear:
      os << "piecewise_linear(" << xs_.size() << " points)";
      break;
  }
  return os.str();
}

void SimConfig::validate() const {
  if (!(h > 0.0 && std::isfinite(h))) throw Error(ErrorCode::invalid_input, "step size must be positive");
  if (!(t_end > 0.0 && std::isfinite(t_end))) {
    throw Error(ErrorCode::invalid_input, "t_end must be positive");
  }
  if (!(loop_tol > 0.0)) throw Error(ErrorCode::invalid_input, "loop_tol must be positive");
  if (loop_max_iter < 1) throw Error(ErrorCode::invalid_input, "loop_max_iter must be >= 1");
  if (!(settle.window_fraction > 0.0 && settle.window_fraction <= 0.5)) {
    throw Error(ErrorCode::invalid_input, "settle window fraction must lie in (0, 0.5]");
  }
}

std::size_t SimConfig::steps() const {
  return static_cast<std::size_t>(std::llround(std::ceil(t_end / h - 1e-9)));
}

namespace {

// Product-integration weights of the fractional Adams scheme on a uniform grid.
struct AdamsWeights {
  std::vector<double> pa, pa1, b, c;
  double hp = 0.0, hc = 0.0;

  AdamsWeights(double alpha, double h, std::size_t n_steps) : pa(n_steps + 2), pa1(n_steps + 2),
                                                              b(n_steps), c(n_steps) {
    for (std::size_t k = 0; k < n_steps + 2; ++k) {
      pa[k] = std::pow(static_cast<double>(k), alpha);
      pa1[k] = std::pow(static_cast<double>(k), alpha + 1.0);
    }
    for (std::size_t k = 0; k < n_steps; ++k) {
      b[k] = pa[k + 1] - pa[k];
      c[k] = pa1[k + 2] + pa1[k] - 2.0 * pa1[k + 1];
    }
    hp = std::pow(h, alpha) / std::tgamma(alpha + 1.0);
    hc = std::pow(h, alpha) / std::tgamma(alpha + 2.0);
  }

  // Corrector weight of f_0 when stepping from n to n + 1.
  [[nodiscard]] double a0(std::size_t n, double alpha) const {
    return pa1[n] - (static_cast<double>(n) - alpha) * pa[n + 1];
  }
};

void check_order(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::invalid_order, "solver supports 0 < alpha <= 1, got " + std::to_string(alpha));
  }
}

std::size_t window_start(const SimConfig& cfg, std::size_t n) {
  return cfg.memory_steps > 0 && n + 1 > cfg.memory_steps ? n + 1 - cfg.memory_steps : 0;
}

}  // namespace

Trajectory adams_pece(const VectorField& f, const Eigen::VectorXd& x0, double alpha,
                      const SimConfig& cfg) {
  cfg.validate();
  check_order(alpha);
  const std::size_t N = cfg.steps();
  const auto dim = static_cast<std::size_t>(x0.size());
  const double h = cfg.h;
  const AdamsWeights w(alpha, h, N);

  Trajectory out;
  out.t.resize(N + 1);
  out.x.resize(static_cast<Eigen::Index>(N + 1), static_cast<Eigen::Index>(dim));
  std::vector<double> F((N + 1) * dim);
  auto store_f = [&](std::size_t k, const Eigen::VectorXd& v) {
    if (static_cast<std::size_t>(v.size()) != dim) {
      throw Error(ErrorCode::invalid_input, "vector field returned the wrong dimension");
    }
    for (std::size_t d = 0; d < dim; ++d) F[k * dim + d] = v[static_cast<Eigen::Index>(d)];
  };

  out.t[0] = 0.0;
  out.x.row(0) = x0.transpose();
  store_f(0, f(0.0, x0));

  std::vector<double> pred_sum(dim), corr_sum(dim);
  Eigen::VectorXd xp(static_cast<Eigen::Index>(dim)), xn(static_cast<Eigen::Index>(dim));
  for (std::size_t n = 0; n < N; ++n) {
    const double t1 = static_cast<double>(n + 1) * h;
    const std::size_t jmin = window_start(cfg, n);
    std::fill(pred_sum.begin(), pred_sum.end(), 0.0);
    std::fill(corr_sum.begin(), corr_sum.end(), 0.0);
    if (jmin == 0) {
      const double a0 = w.a0(n, alpha);
      for (std::size_t d = 0; d < dim; ++d) {
        pred_sum[d] += w.b[n] * F[d];
        corr_sum[d] += a0 * F[d];
      }
    }
    for (std::size_t j = std::max<std::size_t>(jmin, 1); j <= n; ++j) {
      const double bj = w.b[n - j];
      const double cj = w.c[n - j];
      const double* fj = &F[j * dim];
      for (std::size_t d = 0; d < dim; ++d) {
        pred_sum[d] += bj * fj[d];
        corr_sum[d] += cj * fj[d];
      }
    }
    for (std::size_t d = 0; d < dim; ++d) {
      xp[static_cast<Eigen::Index>(d)] = x0[static_cast<Eigen::Index>(d)] + w.hp * pred_sum[d];
    }
    const Eigen::VectorXd fp = f(t1, xp);
    for (std::size_t d = 0; d < dim; ++d) {
      const auto i = static_cast<Eigen::Index>(d);
      xn[i] = x0[i] + w.hc * (fp[i] + corr_sum[d]);
    }
    if (!xn.allFinite()) {
      throw Error(ErrorCode::divergence,
                  "non-finite state at step " + std::to_string(n + 1) + " (last valid index " +
                      std::to_string(n) + ")");
    }
    out.t[n + 1] = t1;
    out.x.row(static_cast<Eigen::Index>(n + 1)) = xn.transpose();
    store_f(n + 1, f(t1, xn));
  }
  return out;
}

Trajectory caputo_linear(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const InputSignal& u,
                         const Eigen::VectorXd& x0, double alpha, const SimConfig& cfg) {
  cfg.validate();
  check_order(alpha);
  const auto dim = x0.size();
  if (a.rows() != dim || a.cols() != dim || b.size() != dim) {
    throw Error(ErrorCode::invalid_input, "linear system dimensions do not match");
  }
  const std::size_t N = cfg.steps();
  const double h = cfg.h;
  const AdamsWeights w(alpha, h, N);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(dim, dim) - w.hc * a);

  Trajectory out;
  out.t.resize(N + 1);
  out.x.resize(static_cast<Eigen::Index>(N + 1), dim);
  Eigen::MatrixXd F(dim, static_cast<Eigen::Index>(N + 1));
  out.t[0] = 0.0;
  out.x.row(0) = x0.transpose();
  F.col(0) = a * x0 + b * u(0.0);

  Eigen::VectorXd hist(dim);
  for (std::size_t n = 0; n < N; ++n) {
    const double t1 = static_cast<double>(n + 1) * h;
    const std::size_t jmin = window_start(cfg, n);
    hist.setZero();
    if (jmin == 0) hist += w.a0(n, alpha) * F.col(0);
    for (std::size_t j = std::max<std::size_t>(jmin, 1); j <= n; ++j) {
      hist += w.c[n - j] * F.col(static_cast<Eigen::Index>(j));
    }
    const Eigen::VectorXd xn = lu.solve(x0 + w.hc * (b * u(t1) + hist));
    if (!xn.allFinite()) {
      throw Error(ErrorCode::divergence, "non-finite state at step " + std::to_string(n + 1));
    }
    out.t[n + 1] = t1;
    out.x.row(static_cast<Eigen::Index>(n + 1)) = xn.transpose();
    F.col(static_cast<Eigen::Index>(n + 1)) = a * xn + b * u(t1);
  }
  return out;
}

TraceMetrics trace_metrics(const std::vector<double>& t, const std::vector<double>& y,
                           const SettleRule& rule) {
  TraceMetrics m;
  const std::size_t n = y.size();
  if (n == 0 || t.size() != n) return m;
  for (std::size_t k = 0; k < n; ++k) m.sup_norm = std::max(m.sup_norm, std::abs(y[k]));
  for (std::size_t k = 1; k < n; ++k) {
    m.l2_estimate += 0.5 * (t[k] - t[k - 1]) * (y[k] * y[k] + y[k - 1] * y[k - 1]);
  }
  if (m.sup_norm == 0.0) {
    m.settled = true;
    return m;
  }

  const double t_end = t.back();
  const double window = rule.window_fraction * (t_end - t.front());
  double peak_final = 0.0, peak_prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (t[k] >= t_end - window) {
      peak_final = std::max(peak_final, std::abs(y[k]));
    } else if (t[k] >= t_end - 2.0 * window) {
      peak_prev = std::max(peak_prev, std::abs(y[k]));
    }
  }
  m.tail_ratio = peak_final / m.sup_norm;
  m.window_decay_ratio = peak_prev > 0.0 ? peak_final / peak_prev : (peak_final > 0.0 ? kInf : 0.0);

  const double level = rule.threshold * m.sup_norm;
  std::size_t last_above = n;
  for (std::size_t k = n; k-- > 0;) {
    if (std::abs(y[k]) >= level) {
      last_above = k;
      break;
    }
  }
  m.settle_time = last_above == n ? t.front() : (last_above + 1 < n ? t[last_above + 1] : kNaN);

  const bool fast = peak_final < level;
  const bool decaying = rule.allow_algebraic_decay && m.window_decay_ratio <= rule.decay_ratio;
  m.settled = fast || decaying;
  return m;
}

void SimTrace::write_csv(std::ostream& os) const {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << "t,u1,e1,e2,y1,y2\n" << std::setprecision(12);
  for (std::size_t k = 0; k < t.size(); ++k) {
    os << t[k] << ',' << u1[k] << ',' << e1[k] << ',' << e2[k] << ',' << y1[k] << ',' << y2[k]
       << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

SimTrace simulate_lure(const FracStateSpace& ss, const Nonlinearity& phi, const PulseInput& u1,
                       const InputSignal& u2, const SimConfig& cfg) {
  cfg.validate();
  if (!(u1.t_on < u1.t_off)) throw Error(ErrorCode::invalid_input, "pulse needs t_on < t_off");
  const double d0 = ss.D0;
  if (d0 != 0.0 && !(std::abs(d0) * phi.lipschitz() < 1.0)) {
    throw Error(ErrorCode::algebraic_loop,
                "algebraic loop is not a contraction: |D0|*L = " +
                    std::to_string(std::abs(d0) * phi.lipschitz()) + " >= 1");
  }

  const double edge_tol = 1e-6 * cfg.h;
  // Resolves e1 and y1 at (t, x); the loop only exists when D0 != 0.
  auto resolve = [&](double t, const Eigen::VectorXd& x, double& e1, double& y1, std::size_t step) {
    const double cx = ss.order() > 0 ? ss.C.dot(x) : 0.0;
    const double u = u1.node_value(t, edge_tol);
    const double v = u2 ? u2(t) : 0.0;
    if (d0 == 0.0) {
      y1 = cx;
      e1 = u - phi(v + y1);
      return;
    }
    y1 = cx + d0 * u;
    for (int it = 0; it < cfg.loop_max_iter; ++it) {
      e1 = u - phi(v + y1);
      const double next = cx + d0 * e1;
      const bool done = std::abs(next - y1) <= cfg.loop_tol * std::max(1.0, std::abs(next));
      y1 = next;
      if (done) {
        e1 = u - phi(v + y1);
        return;
      }
    }
    throw Error(ErrorCode::algebraic_loop,
                "algebraic loop did not converge at step " + std::to_string(step));
  };

  const std::size_t N = cfg.steps();
  SimTrace tr;
  Eigen::MatrixXd xs;
  if (ss.order() > 0) {
    const double h = cfg.h;
    const VectorField f = [&](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
      double e1 = 0.0, y1 = 0.0;
      resolve(t, x, e1, y1, static_cast<std::size_t>(std::llround(t / h)));
      return ss.A * x + ss.B * e1;
    };
    Trajectory traj = adams_pece(f, Eigen::VectorXd::Zero(ss.order()), ss.alpha, cfg);
    tr.t = std::move(traj.t);
    xs = std::move(traj.x);
  } else {
    tr.t.resize(N + 1);
    for (std::size_t k = 0; k <= N; ++k) tr.t[k] = static_cast<double>(k) * cfg.h;
  }

  const std::size_t n = tr.t.size();
  tr.u1.resize(n);
  tr.e1.resize(n);
  tr.e2.resize(n);
  tr.y1.resize(n);
  tr.y2.resize(n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.order());
  for (std::size_t k = 0; k < n; ++k) {
    if (ss.order() > 0) x = xs.row(static_cast<Eigen::Index>(k)).transpose();
    const double t = tr.t[k];
    double e1 = 0.0, y1 = 0.0;
    resolve(t, x, e1, y1, k);
    tr.u1[k] = u1.node_value(t, edge_tol);
    tr.e1[k] = e1;
    tr.y1[k] = y1;
    tr.e2[k] = (u2 ? u2(t) : 0.0) + y1;
    tr.y2[k] = tr.u1[k] - e1;
  }
  tr.metrics = trace_metrics(tr.t, tr.y1, cfg.settle);
  return tr;
}

SimTrace simulate_lure(const FracStateSpace& ss, const Nonlinearity& phi, const PulseInput& u1,
                       const SimConfig& cfg) {
  return simulate_lure(ss, phi, u1, InputSignal{}, cfg);
}

ProbeResult response_probe(const CommensurateTF& g, ProbeKind kind, const SimConfig& cfg) {
  cfg.validate();
  if (!check_bibo(g).bibo) {
    throw Error(ErrorCode::precondition, "response probe requires a BIBO-stable transfer function");
  }
  if (g.alpha() > 1.0) {
    throw Error(ErrorCode::invalid_order, "response probe supports 0 < alpha <= 1");
  }
  const FracStateSpace ss = realize_state_space(g);
  if (kind == ProbeKind::impulse && ss.D0 != 0.0) {
    throw Error(ErrorCode::precondition, "impulse probe requires a strictly proper transfer function");
  }

  const std::size_t N = cfg.steps();
  std::vector<double> t(N + 1), step(N + 1, ss.D0);
  if (ss.order() > 0) {
    const Trajectory traj = caputo_linear(ss.A, ss.B, [](double) { return 1.0; },
                                          Eigen::VectorXd::Zero(ss.order()), ss.alpha, cfg);
    t = traj.t;
    for (std::size_t k = 0; k <= N; ++k) {
      step[k] = ss.C.dot(traj.x.row(static_cast<Eigen::Index>(k))) + ss.D0;
    }
  } else {
    for (std::size_t k = 0; k <= N; ++k) t[k] = static_cast<double>(k) * cfg.h;
  }

  ProbeResult r;
  r.final_value = step.back();
  r.monotone_nondecreasing = true;
  double variation = std::abs(ss.D0);
  for (std::size_t k = 0; k < N; ++k) {
    const double dy = step[k + 1] - step[k];
    if (dy < -1e-9) r.monotone_nondecreasing = false;
    variation += std::abs(dy);
  }

  // Beyond t_end the step response approaches its limit like
  // Z1 * t^-alpha / Gamma(1 - alpha), Z1 the first Taylor coefficient in w.
  if (g.alpha() < 1.0 && !g.is_zero()) {
    const double d0 = g.den()[0];
    const double z1 = (g.num()[1] * d0 - g.num()[0] * g.den()[1]) / (d0 * d0);
    r.tail_estimate = std::abs(z1) * std::pow(t.back(), -g.alpha()) / std::tgamma(1.0 - g.alpha());
  }
  r.abs_l1_integral = variation + r.tail_estimate;

  if (kind == ProbeKind::step) {
    r.t = std::move(t);
    r.response = std::move(step);
  } else {
    r.t.assign(t.begin(), t.end() - 1);
    r.response.resize(N);
    for (std::size_t k = 0; k < N; ++k) r.response[k] = (step[k + 1] - step[k]) / cfg.h;
  }
  return r;
}

}  // namespace fracstab

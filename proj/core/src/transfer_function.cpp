#include "fracstab/transfer_function.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "fracstab/error.hpp"

namespace fracstab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTrim = 1e-14;

bool same_order(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

std::pair<CommensurateTF, CommensurateTF> align(const CommensurateTF& a, const CommensurateTF& b) {
  if (same_order(a.alpha(), b.alpha())) return {a, b};
  const double common = common_order(a.alpha(), b.alpha());
  return {a.at_order(common), b.at_order(common)};
}

Complex principal_power(double omega, double alpha) {
  if (omega == 0.0) return {0.0, 0.0};
  if (alpha == 1.0) return {0.0, omega};
  const double sign = omega > 0.0 ? 1.0 : -1.0;
  return std::polar(std::pow(std::abs(omega), alpha), sign * alpha * std::numbers::pi / 2.0);
}

double horner_scale(const RealPoly& p, Complex z) {
  const double r = std::abs(z);
  double acc = 0.0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

}  // namespace

CommensurateTF CommensurateTF::make(const RealPoly& num, const RealPoly& den, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw Error(ErrorCode::invalid_order, "commensurate order must satisfy 0 < alpha < 2, got " +
                                              std::to_string(alpha));
  }
  if (den.is_zero()) throw Error(ErrorCode::invalid_input, "denominator is identically zero");
  auto red = poly_coprime_reduce(num, den);
  if (red.num.degree() > red.den.degree()) {
    throw Error(ErrorCode::unsupported_input,
                "improper transfer function: numerator degree " + std::to_string(red.num.degree()) +
                    " exceeds denominator degree " + std::to_string(red.den.degree()));
  }
  CommensurateTF g;
  g.alpha_ = alpha;
  g.num_ = std::move(red.num);
  g.den_ = std::move(red.den);
  g.warnings_ = std::move(red.warnings);
  return g;
}

CommensurateTF CommensurateTF::constant(double value, double alpha) {
  return make(RealPoly::constant(value), RealPoly::constant(1.0), alpha);
}

CommensurateTF CommensurateTF::at_order(double target) const {
  const double ratio = alpha_ / target;
  const long k = std::lround(ratio);
  if (k < 1 || std::abs(ratio - static_cast<double>(k)) > 1e-9 * ratio) {
    throw Error(ErrorCode::not_commensurable,
                "order " + std::to_string(alpha_) + " is not an integer multiple of " +
                    std::to_string(target));
  }
  CommensurateTF g = *this;
  g.alpha_ = target;
  g.num_ = num_.lifted(static_cast<int>(k));
  g.den_ = den_.lifted(static_cast<int>(k));
  return g;
}

CommensurateTF CommensurateTF::scaled(double s) const {
  CommensurateTF g = *this;
  g.num_ = num_.scaled(s);
  return g;
}

CommensurateTF CommensurateTF::reciprocal() const {
  if (is_zero()) throw Error(ErrorCode::invalid_input, "reciprocal of the zero function");
  return make(den_, num_, alpha_);
}

CommensurateTF operator+(const CommensurateTF& a, const CommensurateTF& b) {
  auto [x, y] = align(a, b);
  const RealPoly num = (x.num_ * y.den_ + y.num_ * x.den_).trimmed(kTrim);
  return CommensurateTF::make(num, x.den_ * y.den_, x.alpha_);
}

CommensurateTF operator-(const CommensurateTF& a, const CommensurateTF& b) {
  return a + b.scaled(-1.0);
}

CommensurateTF operator*(const CommensurateTF& a, const CommensurateTF& b) {
  auto [x, y] = align(a, b);
  return CommensurateTF::make(x.num_ * y.num_, x.den_ * y.den_, x.alpha_);
}

CommensurateTF operator/(const CommensurateTF& a, const CommensurateTF& b) {
  if (b.is_zero()) throw Error(ErrorCode::invalid_input, "division by the zero function");
  auto [x, y] = align(a, b);
  return CommensurateTF::make(x.num_ * y.den_, x.den_ * y.num_, x.alpha_);
}

std::pair<long, long> rationalize(double x, long max_den) {
  if (!std::isfinite(x) || x < 0.0) {
    throw Error(ErrorCode::not_commensurable, "exponent must be finite and nonnegative");
  }
  // Continued-fraction convergents, stopped at the denominator cap.
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(r);
    const long ai = static_cast<long>(a);
    const long p2 = ai * p1 + p0;
    const long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - a;
    if (frac < 1e-12 || std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-15)
      break;
    r = 1.0 / frac;
  }
  if (q1 == 0 || std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) > 1e-9) {
    throw Error(ErrorCode::not_commensurable,
                "exponent " + std::to_string(x) + " has no rational form with denominator <= " +
                    std::to_string(max_den));
  }
  return {p1, q1};
}

namespace {

// Largest rational dividing both a and b, without the cap at 1.
double rational_gcd(double a, double b) {
  const auto [pa, qa] = rationalize(a);
  const auto [pb, qb] = rationalize(b);
  const long num = std::gcd(pa * qb, pb * qa);
  const long den = qa * qb;
  if (num == 0) throw Error(ErrorCode::not_commensurable, "orders must be positive");
  return static_cast<double>(num) / static_cast<double>(den);
}

double cap_order(double alpha) { return alpha > 1.0 ? alpha / std::ceil(alpha) : alpha; }

}  // namespace

double common_order(double a, double b) { return cap_order(rational_gcd(a, b)); }

CommensurateTF tf_from_power_terms(std::span<const PowerTerm> num, std::span<const PowerTerm> den) {
  double alpha = 0.0;
  auto fold = [&](std::span<const PowerTerm> terms) {
    for (const auto& t : terms) {
      if (t.exponent < 0.0) throw Error(ErrorCode::invalid_input, "negative exponent in term");
      if (t.exponent == 0.0) continue;
      alpha = alpha == 0.0 ? rational_gcd(t.exponent, t.exponent) : rational_gcd(alpha, t.exponent);
    }
  };
  fold(num);
  fold(den);
  alpha = alpha == 0.0 ? 1.0 : cap_order(alpha);

  auto build = [&](std::span<const PowerTerm> terms) {
    std::vector<double> c;
    for (const auto& t : terms) {
      const auto k = static_cast<std::size_t>(std::lround(t.exponent / alpha));
      if (c.size() <= k) c.resize(k + 1, 0.0);
      c[k] += t.coeff;
    }
    return RealPoly(std::move(c));
  };
  return CommensurateTF::make(build(num), build(den), alpha);
}

std::optional<Complex> freq_value(const CommensurateTF& g, double omega) {
  if (std::isinf(omega)) return Complex{high_frequency_limit(g), 0.0};
  if (g.is_zero()) return Complex{0.0, 0.0};
  const Complex w = principal_power(omega, g.alpha());
  const Complex d = g.den()(w);
  if (std::abs(d) <= 16.0 * kEps * horner_scale(g.den(), w)) return std::nullopt;
  return g.num()(w) / d;
}

double high_frequency_limit(const CommensurateTF& g) {
  if (g.strictly_proper()) return 0.0;
  return g.num().leading() / g.den().leading();
}

double dc_value(const CommensurateTF& g) {
  if (g.is_zero()) return 0.0;
  const double d0 = g.den()[0];
  if (std::abs(d0) <= kEps * g.den().max_abs_coeff()) {
    throw Error(ErrorCode::pole_at_zero, "transfer function has a pole at w = 0");
  }
  return g.num()[0] / d0;
}

StabilityReport check_bibo(const CommensurateTF& g) {
  StabilityReport rep;
  rep.alpha = g.alpha();
  rep.num_degree = g.num_degree();
  rep.den_degree = g.den_degree();
  const double sector = g.alpha() * std::numbers::pi / 2.0;
  if (g.den_degree() >= 1) {
    for (const auto& r : poly_roots(g.den())) {
      const double a = std::abs(std::arg(r));
      rep.pole_args.push_back({r, a, a - sector});
      if (!(a > sector)) ++rep.n_p;
    }
  }
  rep.bibo = rep.n_p == 0 && g.alpha() > 0.0 && g.alpha() < 2.0;
  return rep;
}

StabilityReport stability_report(const CommensurateTF& g) {
  StabilityReport rep = check_bibo(g);
  if (g.is_zero()) {
    rep.l2_finite = rep.l2_finite_regular = rep.popov_applicable = true;
    return rep;
  }
  const int n = g.den_degree();
  const int m = g.num_degree();
  rep.relative_degree = static_cast<double>(n - m) * g.alpha();
  rep.l2_finite = rep.relative_degree > 0.5;
  rep.popov_applicable = rep.relative_degree >= 1.0 - 1e-12;
  if (m < n) {
    rep.l2_finite_regular = rep.l2_finite;
  } else {
    const RealPoly rem =
        (g.num() - g.den().scaled(g.num().leading() / g.den().leading())).trimmed(kTrim);
    const int mr = rem.degree();
    rep.l2_finite_regular = mr < 0 || static_cast<double>(n - mr) * g.alpha() > 0.5;
  }
  return rep;
}

Complex FracStateSpace::frequency_response(double omega) const {
  const Eigen::Index n = A.rows();
  if (n == 0) return {D0, 0.0};
  const Complex w = principal_power(omega, alpha);
  Eigen::MatrixXcd m = -A.cast<Complex>();
  m.diagonal().array() += w;
  const Eigen::VectorXcd x = m.partialPivLu().solve(B.cast<Complex>());
  return (C.cast<Complex>() * x)(0) + D0;
}

FracStateSpace realize_state_space(const CommensurateTF& g) {
  FracStateSpace ss;
  ss.alpha = g.alpha();
  const int n = g.den_degree();
  const auto& den = g.den();  // monic
  if (n == 0) {
    ss.D0 = g.is_zero() ? 0.0 : g.num()[0] / den[0];
    return ss;
  }
  std::vector<double> rem(g.num().coeffs());
  rem.resize(static_cast<std::size_t>(n) + 1, 0.0);
  if (g.num_degree() == n && !g.is_zero()) {
    ss.D0 = g.num().leading();
    for (int k = 0; k <= n; ++k) rem[static_cast<std::size_t>(k)] -= ss.D0 * den[static_cast<std::size_t>(k)];
  }

  ss.A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) ss.A(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) ss.A(n - 1, j) = -den[static_cast<std::size_t>(j)];
  ss.B = Eigen::VectorXd::Zero(n);
  ss.B(n - 1) = 1.0;
  ss.C = Eigen::RowVectorXd::Zero(n);
  for (int j = 0; j < n; ++j) ss.C(j) = rem[static_cast<std::size_t>(j)];
  return ss;
}

}  // namespace fracstab

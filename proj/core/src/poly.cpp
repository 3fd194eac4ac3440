#include "fracstab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "fracstab/error.hpp"

namespace fracstab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Roots whose imaginary part is below this (relative) size are snapped to the
// real axis; double real roots come out of the iteration as a pair split by
// about sqrt(eps).
constexpr double kRealSnap = 1e-7;

std::string fmt(const char* spec, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), spec, a, b, c);
  return buf;
}

Complex horner(std::span<const double> a, Complex z) noexcept {
  Complex acc{0.0, 0.0};
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Rounding-error scale of Horner evaluation at z: sum |a_k| |z|^k.
double eval_scale(std::span<const double> a, Complex z) noexcept {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

// Restores exact conjugate symmetry: near-real roots are snapped to the real
// axis, the rest are matched upper/lower and averaged.
std::vector<Complex> enforce_conjugate_pairs(std::vector<Complex> roots) {
  std::vector<Complex> real, upper, lower;
  for (const auto& z : roots) {
    if (std::abs(z.imag()) <= kRealSnap * std::max(1.0, std::abs(z))) {
      real.emplace_back(z.real(), 0.0);
    } else if (z.imag() > 0) {
      upper.push_back(z);
    } else {
      lower.push_back(z);
    }
  }
  // Unbalanced halves: the entries closest to the axis become real.
  auto by_imag = [](const Complex& a, const Complex& b) {
    return std::abs(a.imag()) < std::abs(b.imag());
  };
  std::sort(upper.begin(), upper.end(), by_imag);
  std::sort(lower.begin(), lower.end(), by_imag);
  while (upper.size() > lower.size()) {
    real.emplace_back(upper.front().real(), 0.0);
    upper.erase(upper.begin());
  }
  while (lower.size() > upper.size()) {
    real.emplace_back(lower.front().real(), 0.0);
    lower.erase(lower.begin());
  }

  std::vector<Complex> out = real;
  std::vector<bool> used(lower.size(), false);
  for (const auto& u : upper) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(u - std::conj(lower[j]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    const Complex avg = 0.5 * (u + std::conj(lower[best]));
    out.push_back(avg);
    out.push_back(std::conj(avg));
  }
  std::stable_sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() > b.imag();
  });
  return out;
}

}  // namespace

RealPoly::RealPoly(std::vector<double> ascending) : c_(std::move(ascending)) { strip(); }

RealPoly::RealPoly(std::initializer_list<double> ascending) : c_(ascending) { strip(); }

void RealPoly::strip() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

RealPoly RealPoly::constant(double c) { return RealPoly(std::vector<double>{c}); }

RealPoly RealPoly::from_roots(std::span<const Complex> roots, double lead) {
  RealPoly p = constant(lead);
  for (const auto& r : roots) {
    if (r.imag() == 0.0) {
      p = p * RealPoly{-r.real(), 1.0};
    } else if (r.imag() > 0.0) {
      p = p * RealPoly{std::norm(r), -2.0 * r.real(), 1.0};
    }
  }
  return p;
}

double RealPoly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Complex RealPoly::operator()(Complex z) const noexcept { return horner(c_, z); }

double RealPoly::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RealPoly RealPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return RealPoly(std::move(d));
}

RealPoly RealPoly::lifted(int k) const {
  if (k <= 0) throw Error(ErrorCode::invalid_input, "lift factor must be positive");
  if (k == 1 || c_.empty()) return *this;
  std::vector<double> out((c_.size() - 1) * static_cast<std::size_t>(k) + 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i * static_cast<std::size_t>(k)] = c_[i];
  return RealPoly(std::move(out));
}

RealPoly RealPoly::scaled(double s) const {
  std::vector<double> out(c_);
  for (double& v : out) v *= s;
  return RealPoly(std::move(out));
}

RealPoly RealPoly::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  std::vector<double> out(c_);
  while (!out.empty() && std::abs(out.back()) <= cut) out.pop_back();
  return RealPoly(std::move(out));
}

RealPoly operator+(const RealPoly& a, const RealPoly& b) {
  std::vector<double> out(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k];
  return RealPoly(std::move(out));
}

RealPoly operator-(const RealPoly& a, const RealPoly& b) { return a + b.scaled(-1.0); }

RealPoly operator*(const RealPoly& a, const RealPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return RealPoly(std::move(out));
}

Complex poly_eval(const RealPoly& p, Complex z) noexcept { return p(z); }

std::pair<RealPoly, RealPoly> poly_divmod(const RealPoly& num, const RealPoly& den) {
  if (den.is_zero()) throw Error(ErrorCode::invalid_input, "division by the zero polynomial");
  if (num.degree() < den.degree()) return {RealPoly{}, num};
  std::vector<double> rem = num.coeffs();
  const auto& d = den.coeffs();
  const std::size_t dn = d.size() - 1;
  std::vector<double> quot(rem.size() - dn, 0.0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const double q = rem[k + dn] / d[dn];
    quot[k] = q;
    for (std::size_t j = 0; j <= dn; ++j) rem[k + j] -= q * d[j];
    rem[k + dn] = 0.0;
  }
  rem.resize(dn);
  return {RealPoly(std::move(quot)), RealPoly(std::move(rem))};
}

std::vector<Complex> poly_roots(const RealPoly& p, RootOptions opts) {
  if (p.degree() < 1) {
    throw Error(ErrorCode::invalid_input, "root finding needs a polynomial of degree >= 1");
  }
  const auto& c = p.coeffs();
  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;

  std::vector<double> a(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end());
  const std::size_t n = a.size() - 1;
  std::vector<Complex> roots(zeros, Complex{0.0, 0.0});
  if (n == 0) return roots;

  const double lead = a.back();
  for (double& v : a) v /= lead;
  std::vector<double> da(n);
  for (std::size_t k = 1; k <= n; ++k) da[k - 1] = static_cast<double>(k) * a[k];

  // Start on a circle whose radius is the geometric mean of root moduli.
  const double radius = std::max(std::pow(std::abs(a[0]), 1.0 / static_cast<double>(n)), 1e-3);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) +
                         std::numbers::pi / (2.0 * static_cast<double>(n)) + 0.4;
    z[k] = std::polar(radius, theta);
  }

  std::vector<bool> done(n, false);
  bool all_done = false;
  for (int iter = 0; iter < opts.max_iter && !all_done; ++iter) {
    all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Complex pz = horner(a, z[i]);
      if (std::abs(pz) <= 4.0 * kEps * eval_scale(a, z[i])) {
        done[i] = true;
        continue;
      }
      const Complex dpz = horner(da, z[i]);
      Complex repulsion{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Complex diff = z[i] - z[j];
        if (diff != Complex{0.0, 0.0}) repulsion += 1.0 / diff;
      }
      Complex step;
      if (dpz == Complex{0.0, 0.0}) {
        step = Complex{1e-6, 1e-6} * std::max(1.0, std::abs(z[i]));
      } else {
        const Complex ratio = pz / dpz;
        step = ratio / (1.0 - ratio * repulsion);
      }
      z[i] -= step;
      if (std::abs(step) <= opts.tol * std::max(1.0, std::abs(z[i]))) {
        done[i] = true;
      } else {
        all_done = false;
      }
    }
  }

  const double accept = std::max(opts.tol, 8.0 * kEps);
  std::string failures;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = std::abs(horner(a, z[i]));
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag()) ||
        res > accept * eval_scale(a, z[i]) * 1e3) {
      failures += fmt(" (%.6g%+.6gi: |p|=%.3g)", z[i].real(), z[i].imag(), res);
    }
  }
  if (!failures.empty()) {
    throw Error(ErrorCode::convergence,
                "root iteration did not converge after " + std::to_string(opts.max_iter) +
                    " iterations; residuals:" + failures);
  }

  // Newton polish, kept only where it lowers the residual.
  for (auto& zi : z) {
    for (int k = 0; k < 3; ++k) {
      const Complex pz = horner(a, zi);
      const Complex dpz = horner(da, zi);
      if (dpz == Complex{0.0, 0.0}) break;
      const Complex cand = zi - pz / dpz;
      if (std::abs(horner(a, cand)) < std::abs(pz)) {
        zi = cand;
      } else {
        break;
      }
    }
  }

  roots.insert(roots.end(), z.begin(), z.end());
  return enforce_conjugate_pairs(std::move(roots));
}

CoprimeReduction poly_coprime_reduce(const RealPoly& num, const RealPoly& den, double tol) {
  if (den.is_zero()) throw Error(ErrorCode::invalid_input, "denominator is identically zero");
  CoprimeReduction out;
  if (num.is_zero()) {
    out.num = RealPoly{};
    out.den = RealPoly::constant(1.0);
    return out;
  }
  const double lead = den.leading();
  if (num.degree() < 1 || den.degree() < 1) {
    out.num = num.scaled(1.0 / lead);
    out.den = den.scaled(1.0 / lead);
    return out;
  }

  const auto rn = poly_roots(num);
  const auto rd = poly_roots(den);
  auto scale_of = [](Complex a, Complex b) {
    return std::max({1.0, std::abs(a), std::abs(b)});
  };

  struct Candidate {
    double rel;
    std::size_t i, j;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < rn.size(); ++i)
    for (std::size_t j = 0; j < rd.size(); ++j) {
      const double rel = std::abs(rn[i] - rd[j]) / scale_of(rn[i], rd[j]);
      cands.push_back({rel, i, j});
    }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& x, const Candidate& y) { return x.rel < y.rel; });

  std::vector<bool> used_n(rn.size(), false), used_d(rd.size(), false);
  std::vector<Complex> shared;
  for (const auto& cd : cands) {
    if (used_n[cd.i] || used_d[cd.j]) continue;
    if (cd.rel <= tol) {
      used_n[cd.i] = used_d[cd.j] = true;
      shared.push_back(0.5 * (rn[cd.i] + rd[cd.j]));
      if (cd.rel > 1e-12) {
        out.warnings.push_back(fmt("approximate common root cancelled near %.9g%+.9gi (relative separation %.3g)",
                                   shared.back().real(), shared.back().imag(), cd.rel));
      }
    } else if (cd.rel <= 1e3 * tol) {
      out.warnings.push_back(fmt("near-common root kept near %.9g%+.9gi (relative separation %.3g)",
                                 rd[cd.j].real(), rd[cd.j].imag(), cd.rel));
    }
  }

  if (shared.empty()) {
    out.num = num.scaled(1.0 / lead);
    out.den = den.scaled(1.0 / lead);
    return out;
  }

  shared = enforce_conjugate_pairs(std::move(shared));
  const RealPoly common = RealPoly::from_roots(shared);
  auto [qn, rn_rem] = poly_divmod(num, common);
  auto [qd, rd_rem] = poly_divmod(den, common);
  (void)rn_rem;
  (void)rd_rem;
  const double new_lead = qd.leading();
  out.num = qn.scaled(1.0 / new_lead);
  out.den = qd.scaled(1.0 / new_lead);
  out.shared_factor_degree = static_cast<int>(shared.size());
  return out;
}

}  // namespace fracstab

#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fracstab {

using Complex = std::complex<double>;

/// Real polynomial in the commensurate variable w, coefficients stored in
/// ascending power order (coeffs()[k] multiplies w^k).
///
/// Exact trailing zeros are stripped on construction, so the leading
/// coefficient is nonzero unless the polynomial is identically zero.
class RealPoly {
 public:
  RealPoly() = default;
  explicit RealPoly(std::vector<double> ascending);
  RealPoly(std::initializer_list<double> ascending);

  static RealPoly constant(double c);
  /// Monic product of (w - r) over `roots`, scaled by `lead`. Conjugate pairs
  /// must both be present; imaginary residue is dropped.
  static RealPoly from_roots(std::span<const Complex> roots, double lead = 1.0);

  [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return c_; }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  [[nodiscard]] double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }
  [[nodiscard]] double operator[](std::size_t k) const noexcept {
    return k < c_.size() ? c_[k] : 0.0;
  }
  [[nodiscard]] double max_abs_coeff() const noexcept;

  [[nodiscard]] Complex operator()(Complex z) const noexcept;
  [[nodiscard]] double operator()(double x) const noexcept;

  [[nodiscard]] RealPoly derivative() const;
  /// p(w^k): re-expresses a polynomial in w_1 = w^k as a polynomial in w.
  [[nodiscard]] RealPoly lifted(int k) const;
  [[nodiscard]] RealPoly scaled(double s) const;
  /// Drops leading coefficients with |c| <= rel_tol * max|c|.
  [[nodiscard]] RealPoly trimmed(double rel_tol) const;

  friend RealPoly operator+(const RealPoly& a, const RealPoly& b);
  friend RealPoly operator-(const RealPoly& a, const RealPoly& b);
  friend RealPoly operator*(const RealPoly& a, const RealPoly& b);
  friend bool operator==(const RealPoly& a, const RealPoly& b) = default;

 private:
  void strip();
  std::vector<double> c_;
};

/// Horner evaluation of p at z.
[[nodiscard]] Complex poly_eval(const RealPoly& p, Complex z) noexcept;

/// Quotient and remainder of num / den. Throws invalid_input if den is zero.
[[nodiscard]] std::pair<RealPoly, RealPoly> poly_divmod(const RealPoly& num, const RealPoly& den);

struct RootOptions {
  double tol = 1e-12;
  int max_iter = 500;
};

/// All deg(p) roots with multiplicity, via Aberth-Ehrlich simultaneous
/// iteration. The result is closed under conjugation.
///
/// Throws invalid_input for constant or zero p, convergence when the
/// iteration cap is reached with a residual above tolerance.
[[nodiscard]] std::vector<Complex> poly_roots(const RealPoly& p, RootOptions opts = {});

struct CoprimeReduction {
  RealPoly num;
  RealPoly den;  // monic
  int shared_factor_degree = 0;
  std::vector<std::string> warnings;
};

/// Cancels approximate common roots of num and den. Roots a, b are paired
/// when |a - b| <= tol * max(1, |a|, |b|). The returned denominator is monic.
[[nodiscard]] CoprimeReduction poly_coprime_reduce(const RealPoly& num, const RealPoly& den,
                                                   double tol = 1e-8);

}  // namespace fracstab

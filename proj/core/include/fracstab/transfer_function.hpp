#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fracstab/poly.hpp"

namespace fracstab {

/// Rational function N(w)/D(w) of the commensurate variable w = s^alpha.
///
/// Instances are always reduced (approximately coprime), have a monic
/// denominator and are proper. Construction goes through make().
class CommensurateTF {
 public:
  /// Reduces num/den, normalises den to monic and validates the order.
  ///
  /// Throws invalid_order unless 0 < alpha < 2, invalid_input for a zero
  /// denominator and unsupported_input for an improper result.
  static CommensurateTF make(const RealPoly& num, const RealPoly& den, double alpha);
  static CommensurateTF constant(double value, double alpha = 1.0);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] const RealPoly& num() const noexcept { return num_; }
  [[nodiscard]] const RealPoly& den() const noexcept { return den_; }
  /// Degree in w; 0 for the zero function.
  [[nodiscard]] int num_degree() const noexcept { return std::max(num_.degree(), 0); }
  [[nodiscard]] int den_degree() const noexcept { return den_.degree(); }
  [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
  [[nodiscard]] bool strictly_proper() const noexcept {
    return is_zero() || num_.degree() < den_.degree();
  }
  /// Messages from coprime reduction (approximate cancellations).
  [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Same function expressed in the finer variable w' = s^target, where
  /// alpha/target must be an integer.
  [[nodiscard]] CommensurateTF at_order(double target) const;
  [[nodiscard]] CommensurateTF scaled(double s) const;
  /// 1/G; throws unsupported_input when the inverse is improper.
  [[nodiscard]] CommensurateTF reciprocal() const;

  friend CommensurateTF operator+(const CommensurateTF& a, const CommensurateTF& b);
  friend CommensurateTF operator-(const CommensurateTF& a, const CommensurateTF& b);
  friend CommensurateTF operator*(const CommensurateTF& a, const CommensurateTF& b);
  friend CommensurateTF operator/(const CommensurateTF& a, const CommensurateTF& b);

 private:
  CommensurateTF() = default;
  double alpha_ = 1.0;
  RealPoly num_;
  RealPoly den_ = RealPoly::constant(1.0);
  std::vector<std::string> warnings_;
};

/// Equivalent of tf_make for callers preferring a free function.
[[nodiscard]] inline CommensurateTF tf_make(const RealPoly& num, const RealPoly& den,
                                            double alpha) {
  return CommensurateTF::make(num, den, alpha);
}

/// Coefficient times s^exponent, for building mixed-order transfer functions.
struct PowerTerm {
  double coeff;
  double exponent;
};

/// Best rational p/q with q <= max_den; throws not_commensurable if it is
/// farther than 1e-9 from x.
[[nodiscard]] std::pair<long, long> rationalize(double x, long max_den = 1000);

/// Largest order (<= 1) of which both a and b are integer multiples.
[[nodiscard]] double common_order(double a, double b);

/// Sum(num_i s^e_i) / Sum(den_j s^f_j) rewritten over a single commensurate
/// order (rationalised exponents, denominator cap 1000).
[[nodiscard]] CommensurateTF tf_from_power_terms(std::span<const PowerTerm> num,
                                                 std::span<const PowerTerm> den);

/// Principal-branch frequency response N(w)/D(w) at
/// w = |omega|^alpha * exp(i sign(omega) alpha pi/2). omega = +/-inf yields
/// the high-frequency limit. nullopt marks evaluation at a pole.
[[nodiscard]] std::optional<Complex> freq_value(const CommensurateTF& g, double omega);

/// lim G as |omega| -> inf: 0 when strictly proper, else the ratio of
/// leading coefficients.
[[nodiscard]] double high_frequency_limit(const CommensurateTF& g);

/// N(0)/D(0). Throws pole_at_zero when D(0) = 0.
[[nodiscard]] double dc_value(const CommensurateTF& g);

struct PoleArgument {
  Complex root;
  double abs_arg;  // |arg(root)|, radians
  double margin;   // abs_arg - alpha*pi/2; positive means admissible
};

struct StabilityReport {
  double alpha = 1.0;
  int num_degree = 0;
  int den_degree = 0;
  bool bibo = false;
  std::vector<PoleArgument> pole_args;
  int n_p = 0;
  /// (n - m) * alpha > 1/2.
  bool l2_finite = false;
  /// Same test applied to the strictly proper part G - D0; the impulse
  /// response is D0*delta plus this part.
  bool l2_finite_regular = false;
  double relative_degree = 0.0;
  /// n*alpha >= m*alpha + 1.
  bool popov_applicable = false;
};

/// Argument test on the roots of D(w): stable iff |arg| > alpha*pi/2 for all.
[[nodiscard]] StabilityReport check_bibo(const CommensurateTF& g);
/// check_bibo plus the degree-gap tests.
[[nodiscard]] StabilityReport stability_report(const CommensurateTF& g);

/// Pseudo-state realization D^alpha x = A x + B u, y = C x + D0 u.
struct FracStateSpace {
  double alpha = 1.0;
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::RowVectorXd C;
  double D0 = 0.0;

  [[nodiscard]] Eigen::Index order() const noexcept { return A.rows(); }
  /// C ((j omega)^alpha I - A)^-1 B + D0 on the principal branch.
  [[nodiscard]] Complex frequency_response(double omega) const;
};

/// Controllable companion form; a biproper G is split as D0 + R/D first.
[[nodiscard]] FracStateSpace realize_state_space(const CommensurateTF& g);

}  // namespace fracstab

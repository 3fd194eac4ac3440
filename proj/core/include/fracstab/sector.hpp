#pragma once

namespace fracstab {

/// Sector {lambda, gamma}: lambda*s^2 <= s*phi(s) <= gamma*s^2.
struct Sector {
  double lambda_low = 0.0;
  double gamma_high = 0.0;

  /// Throws invalid_sector unless lambda_low <= gamma_high (both finite).
  void validate() const;
  [[nodiscard]] bool contains(double sigma, double value, double tol = 1e-12) const;
};

/// Center/half-width form: xi = (lambda + gamma)/2, rho = (gamma - lambda)/2.
struct SectorTransform {
  double xi = 0.0;
  double rho = 0.0;

  [[nodiscard]] static SectorTransform from(const Sector& s);
  [[nodiscard]] Sector to_sector() const { return {xi - rho, xi + rho}; }
};

}  // namespace fracstab

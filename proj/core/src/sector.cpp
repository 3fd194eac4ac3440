#include "fracstab/sector.hpp"

#include <cmath>
#include <string>

#include "fracstab/error.hpp"

namespace fracstab {

void Sector::validate() const {
  if (std::isnan(lambda_low) || std::isnan(gamma_high)) {
    throw Error(ErrorCode::invalid_sector, "sector bounds must be numbers");
  }
  if (!(lambda_low <= gamma_high)) {
    throw Error(ErrorCode::invalid_sector, "sector needs lambda <= gamma, got {" +
                                               std::to_string(lambda_low) + ", " +
                                               std::to_string(gamma_high) + "}");
  }
}

bool Sector::contains(double sigma, double value, double tol) const {
  const double sv = sigma * value;
  const double s2 = sigma * sigma;
  const double slack = tol * std::max(1.0, std::abs(sv));
  const bool lower = std::isinf(lambda_low) ? lambda_low < 0 : lambda_low * s2 <= sv + slack;
  const bool upper = std::isinf(gamma_high) ? gamma_high > 0 : sv <= gamma_high * s2 + slack;
  return lower && upper;
}

SectorTransform SectorTransform::from(const Sector& s) {
  s.validate();
  return {(s.lambda_low + s.gamma_high) / 2.0, (s.gamma_high - s.lambda_low) / 2.0};
}

}  // namespace fracstab

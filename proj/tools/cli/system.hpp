#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracstab/classlib.hpp"

namespace fracstab::cli {

/// Malformed system definition; `where` is "line L, column C" for syntax
/// errors or a JSON pointer such as "/plant/den" for field errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  [[nodiscard]] const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

struct PlantDefinition {
  // Either explicit coefficients (ascending powers of w = s^alpha) ...
  double alpha = 1.0;
  std::vector<double> num;
  std::vector<double> den;
  // ... or a certified class.
  std::optional<ClassSpec> class_spec;
};

struct MultiplierDefinition {
  std::optional<CommensurateTF> tf;
  std::optional<double> l1_norm;
  std::optional<bool> nonneg;
  std::optional<RLMultiplier> rl;
};

/// Everything a subcommand may need. Absent sections keep library defaults.
struct SystemDefinition {
  PlantDefinition plant;
  std::optional<Nonlinearity> nonlinearity;
  std::optional<Sector> sector;
  MultiplierDefinition multiplier;
  double quasi_monotone_bound = 0.0;
  std::optional<std::pair<double, double>> slope_bounds;
  std::optional<double> popov_k;
  std::vector<double> popov_q;
  std::optional<std::pair<double, double>> small_gain;  // K, rho
  PulseInput input{5.0, 0.0, 50.0};
  SweepConfig sweep;
  SimConfig sim;
};

/// Parses a JSON system definition. Throws ParseError with a location.
[[nodiscard]] SystemDefinition parse_system(const std::string& text);
[[nodiscard]] SystemDefinition load_system(const std::string& path);

/// Builds the plant; class definitions go through the class generator.
[[nodiscard]] CommensurateTF build_plant(const PlantDefinition& p);

}  // namespace fracstab::cli

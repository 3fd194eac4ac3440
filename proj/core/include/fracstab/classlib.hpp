#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracstab/criteria.hpp"

namespace fracstab {

enum class ClassKind { zf1, zf2, zf3, gzf };

[[nodiscard]] std::string to_string(ClassKind k);

/// gain / (s^order + pole).
struct FirstOrderTerm {
  double gain = 1.0;
  double pole = 1.0;
  double order = 1.0;
};

/// Parameters of a certified-stable plant class. The base transfer function
/// is k + sum gain_i/(s^order_i + pole_i); the wrapping factor and the
/// multiplier Z live in w = s^alpha.
struct ClassSpec {
  ClassKind kind = ClassKind::zf1;
  double alpha = 1.0;
  double k = 0.0;
  std::vector<FirstOrderTerm> terms;

  // zf2: Z = (b - a)/(w + b).
  // zf3: Z = z_gain (w + b)/((w + a)(w + c)); without b the numerator is z_gain.
  double a = 0.0;
  std::optional<double> b;
  double c = 0.0;
  double z_gain = 0.0;

  // gzf: Z = z_gain prod(w + zeros)/prod(w + poles), or the explicit
  // polynomials when the factors are complex.
  std::vector<double> gzf_zeros;
  std::vector<double> gzf_poles;
  std::optional<RealPoly> z_num;
  std::optional<RealPoly> z_den;

  /// G = k + sum terms, Z = 0.
  [[nodiscard]] static ClassSpec zf1(double k, std::vector<FirstOrderTerm> terms);
  /// G = (w + b)/(w + a) * base.
  [[nodiscard]] static ClassSpec zf2(double k, std::vector<FirstOrderTerm> terms, double a, double b,
                                     double alpha);
  /// G = base / (1 - Z) with Z = z_gain (w + b)/((w + a)(w + c)).
  [[nodiscard]] static ClassSpec zf3(double k, std::vector<FirstOrderTerm> terms, double z_gain,
                                     std::optional<double> b, double a, double c, double alpha);
  /// G = (1 - Z) * sum terms with Z = z_gain prod(w + zeros)/prod(w + poles).
  [[nodiscard]] static ClassSpec gzf(double z_gain, std::vector<double> zeros,
                                     std::vector<double> poles, std::vector<FirstOrderTerm> terms,
                                     double alpha);
  /// Same with Z = z_gain * z_num(w)/z_den(w) given as polynomials.
  [[nodiscard]] static ClassSpec gzf_poly(double z_gain, RealPoly z_num, RealPoly z_den,
                                          std::vector<FirstOrderTerm> terms, double alpha);

  /// Throws constraint_violation naming the first violated condition.
  void validate() const;
};

enum class RequiredCheck { zf, gzf };

struct ClassInstance {
  CommensurateTF plant;
  MultiplierZ multiplier;
  RequiredCheck required;
  std::vector<std::string> notes;
};

/// Builds plant and multiplier and certifies the multiplier (structurally
/// or by a step-response probe with probe_cfg).
[[nodiscard]] ClassInstance gen_stable_class(const ClassSpec& spec, const SimConfig& probe_cfg = {});

/// Runs the check the instance was built for (generalized Zames-Falb with
/// D = 0). A failing verdict is a construction defect and carries a note.
[[nodiscard]] CriterionVerdict verify_class_instance(const ClassInstance& inst,
                                                     const SweepConfig& cfg, bool phi_odd = false);

}  // namespace fracstab

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracstab/fdesim.hpp"
#include "fracstab/freqresp.hpp"
#include "fracstab/sector.hpp"
#include "fracstab/transfer_function.hpp"

namespace fracstab {

enum class CriterionCase {
  circle_a,
  circle_b,
  circle_c,
  popov,
  zf,
  gzf,
  skeleton_rl,
  skeleton_rc,
  smallgain,
};

[[nodiscard]] std::string to_string(CriterionCase c);

/// Outcome of a frequency-domain check. `margin` is the worst slack of the
/// tested inequalities after subtracting the epsilon margin, so pass implies
/// margin >= 0.
struct CriterionVerdict {
  bool pass = false;
  /// Admissibility failed; the conditions may still have been evaluated
  /// (margin and details) for diagnostics.
  bool precondition_failed = false;
  CriterionCase case_used = CriterionCase::circle_b;
  double margin = 0.0;
  double witness_omega = 0.0;
  std::vector<std::string> notes;
  /// Named intermediate quantities (best q, l1 norm, extrema, ...).
  std::vector<std::pair<std::string, double>> details;

  [[nodiscard]] std::optional<double> detail(const std::string& key) const;
};

/// Circle criterion. Case by sector signs: 0 < lambda (disk exclusion plus
/// zero encirclements), lambda = 0 < gamma (Re G > -1/gamma) and
/// lambda < 0 < gamma (locus inside the disk).
///
/// Throws unsupported_case for lambda = -gamma, for unstable plants in the
/// disk-exclusion case and for sectors outside the three cases.
[[nodiscard]] CriterionVerdict circle_criterion(const CommensurateTF& g, const Sector& sector,
                                                const SweepConfig& cfg);

/// Largest gamma for which the sector {0, gamma} passes: 1/(-inf Re G), or
/// +inf when Re G >= 0. Throws precondition for inadmissible plants.
[[nodiscard]] double max_sector_gamma(const CommensurateTF& g, const SweepConfig& cfg);

/// {0} plus 0.01 * 2^k up to 1000.
[[nodiscard]] std::vector<double> default_popov_q_grid();

/// Popov inequality inf Re{(1 + q i omega) G} + 1/k >= eps for some q in
/// q_grid. The multiplier uses i*omega, not (i*omega)^alpha.
[[nodiscard]] CriterionVerdict popov_check(const CommensurateTF& g, double k,
                                           std::span<const double> q_grid, const SweepConfig& cfg);

enum class CertificationMethod { structural, probe, declared };

[[nodiscard]] std::string to_string(CertificationMethod m);

/// Multiplier Z with what is known about its impulse response z.
struct MultiplierZ {
  CommensurateTF tf;
  std::optional<double> l1_norm;
  bool nonneg_certified = false;
  CertificationMethod method = CertificationMethod::declared;
  std::vector<std::string> notes;

  [[nodiscard]] static MultiplierZ zero(double alpha = 1.0);
  [[nodiscard]] static MultiplierZ declared(CommensurateTF tf, std::optional<double> l1_norm,
                                            bool nonneg);
};

/// Bound D of a quasi-monotone-and-odd nonlinearity, 0 <= D < 1.
struct QuasiMonotoneBound {
  double d_bound = 0.0;
};

/// Zames-Falb check: ||z||_1 < 1, (z >= 0 or phi odd) and
/// inf Re{(1 - Z) G} >= eps. Throws needs_certification when the l1 norm of
/// Z is unknown.
[[nodiscard]] CriterionVerdict zames_falb_check(const CommensurateTF& g, const MultiplierZ& z,
                                                bool phi_odd, const SweepConfig& cfg);

/// Generalized Zames-Falb check for quasi-monotone-and-odd nonlinearities:
/// ||z||_1 <= ((1 - D)/(1 + D))^2 and Re{G (1 - Z*)} >= eps |G|^2. The
/// equivalent ratio form 0 < Re{G/(1 - Z)} <= E is evaluated alongside when
/// 1 - Z does not vanish on the sweep.
[[nodiscard]] CriterionVerdict gzf_check(const CommensurateTF& g, const MultiplierZ& z,
                                         QuasiMonotoneBound d, const SweepConfig& cfg);

/// Product of interlaced lead-lag factors (s + zeros_i)/(s + poles_i) with
/// 0 < z_1 < p_1 < z_2 < ... < p_N. With is_rc set the object stands for
/// the inverse of that product.
struct RLMultiplier {
  std::vector<double> zeros;
  std::vector<double> poles;
  bool is_rc = false;

  /// Throws invalid_multiplier on an interlacing violation.
  void validate() const;
  /// The RL representative prod (s + z_i)/(s + p_i) at alpha = 1.
  [[nodiscard]] CommensurateTF rl_tf() const;
  /// The multiplier itself (the inverse of rl_tf() when is_rc).
  [[nodiscard]] CommensurateTF tf() const;
};

/// Residues k_i of the RL representative at s = -p_i.
[[nodiscard]] std::vector<double> rl_residues(const RLMultiplier& m);

/// Splits the RL representative as 1 - Z with Z = sum (-k_i)/(s + p_i) and
/// ||z||_1 = 1 - prod z_i/p_i. Throws invalid_multiplier or
/// internal_consistency.
[[nodiscard]] MultiplierZ rl_decompose(const RLMultiplier& m);

/// Multiplier condition for slope-restricted nonlinearities
/// K1 <= (n(a) - n(b))/(a - b) <= K2, checked on the loop-transformed plant
/// (K2 G + 1)/(K1 G + 1) through the Zames-Falb (RL multiplier) or
/// generalized Zames-Falb (RC multiplier) route.
[[nodiscard]] CriterionVerdict skeleton_check(const CommensurateTF& g, const RLMultiplier& m,
                                              double k1, double k2, const SweepConfig& cfg);

/// Small-gain conditions: 1 + K G bounded away from zero on the closed
/// right half plane and rho * sup |G/(1 + K G)| < 1.
[[nodiscard]] CriterionVerdict smallgain_a1(const CommensurateTF& g, double k, double rho,
                                            const SweepConfig& cfg);

/// Certifies a nonnegative impulse response structurally (distinct negative
/// real poles with positive residues and nonnegative feedthrough) or by a
/// monotone step-response probe. Uncertified multipliers get the numeric
/// integral of |z| as their l1 norm.
[[nodiscard]] MultiplierZ certify_nonneg(const CommensurateTF& z, const SimConfig& probe_cfg);

}  // namespace fracstab

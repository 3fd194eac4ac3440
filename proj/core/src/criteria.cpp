#include "fracstab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracstab/error.hpp"

namespace fracstab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

CriterionVerdict start(CriterionCase c) {
  CriterionVerdict v;
  v.case_used = c;
  return v;
}

void fail_precondition(CriterionVerdict& v, const std::string& note) {
  v.precondition_failed = true;
  v.notes.push_back(note);
}

// Shared admissibility for the frequency-domain criteria. Returns false when
// the plant cannot even be swept.
bool admit(CriterionVerdict& v, const StabilityReport& rep, bool regular_l2) {
  if (!rep.bibo) {
    fail_precondition(v, "plant is not BIBO stable: " + std::to_string(rep.n_p) +
                             " denominator root(s) violate |arg w| > alpha*pi/2");
  }
  const bool l2 = regular_l2 ? rep.l2_finite_regular : rep.l2_finite;
  if (!l2) {
    fail_precondition(v, "impulse response not square integrable: (n - m)*alpha = " +
                             fmt(rep.relative_degree) + " <= 0.5" +
                             (regular_l2 ? " for the strictly proper part" : ""));
  }
  return rep.bibo;
}

void finish(CriterionVerdict& v, bool conditions_hold) {
  v.pass = !v.precondition_failed && conditions_hold && v.margin >= 0.0;
}

FrequencyFunctional functional(const CommensurateTF& g,
                               std::function<std::optional<double>(Complex)> map) {
  return [&g, map = std::move(map)](double w) -> std::optional<double> {
    const auto v = freq_value(g, w);
    if (!v) return std::nullopt;
    return map(*v);
  };
}

// Winding count about `point`, densifying the grid when the phase steps are
// too coarse.
int robust_winding(const CommensurateTF& g, Complex point, SweepConfig cfg) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      return winding_number(sweep(g, cfg).samples, point);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::refine_needed) throw;
      cfg.points_per_decade *= 2;
    }
  }
  return winding_number(sweep(g, cfg).samples, point);
}

bool is_structurally_nonneg(const CommensurateTF& z) {
  if (z.alpha() > 1.0) return false;
  const double d0 = high_frequency_limit(z);
  if (d0 < 0.0) return false;
  const RealPoly regular = (z.num() - z.den().scaled(d0)).trimmed(1e-14);
  if (regular.is_zero()) return true;
  const auto roots = poly_roots(z.den());
  std::vector<double> poles;
  for (const auto& r : roots) {
    if (r.imag() != 0.0 || !(r.real() < 0.0)) return false;
    poles.push_back(r.real());
  }
  std::sort(poles.begin(), poles.end());
  for (std::size_t i = 1; i < poles.size(); ++i) {
    if (poles[i] - poles[i - 1] <= 1e-8 * std::max(1.0, std::abs(poles[i]))) return false;
  }
  const RealPoly dden = z.den().derivative();
  for (double p : poles) {
    if (!(regular(p) / dden(p) > 0.0)) return false;
  }
  return true;
}

}  // namespace

std::string to_string(CriterionCase c) {
  switch (c) {
    case CriterionCase::circle_a: return "circle-a";
    case CriterionCase::circle_b: return "circle-b";
    case CriterionCase::circle_c: return "circle-c";
    case CriterionCase::popov: return "popov";
    case CriterionCase::zf: return "zf";
    case CriterionCase::gzf: return "gzf";
    case CriterionCase::skeleton_rl: return "skeleton-rl";
    case CriterionCase::skeleton_rc: return "skeleton-rc";
    case CriterionCase::smallgain: return "smallgain";
  }
  return "unknown";
}

std::string to_string(CertificationMethod m) {
  switch (m) {
    case CertificationMethod::structural: return "structural";
    case CertificationMethod::probe: return "probe";
    case CertificationMethod::declared: return "declared";
  }
  return "unknown";
}

std::optional<double> CriterionVerdict::detail(const std::string& key) const {
  for (const auto& [k, val] : details) {
    if (k == key) return val;
  }
  return std::nullopt;
}

CriterionVerdict circle_criterion(const CommensurateTF& g, const Sector& sector,
                                  const SweepConfig& cfg) {
  cfg.validate();
  const SectorTransform st = SectorTransform::from(sector);
  if (st.xi == 0.0) {
    throw Error(ErrorCode::unsupported_case,
                "sector symmetric about zero (lambda = -gamma) is not supported");
  }
  const double lam = sector.lambda_low;
  const double gam = sector.gamma_high;
  CriterionCase which;
  if (lam > 0.0) {
    which = CriterionCase::circle_a;
  } else if (lam == 0.0 && gam > 0.0) {
    which = CriterionCase::circle_b;
  } else if (lam < 0.0 && gam > 0.0) {
    which = CriterionCase::circle_c;
  } else {
    throw Error(ErrorCode::unsupported_case,
                "sector {" + fmt(lam) + ", " + fmt(gam) + "} matches no circle-criterion case");
  }

  const StabilityReport rep = stability_report(g);
  if (which == CriterionCase::circle_a && rep.n_p > 0) {
    throw Error(ErrorCode::unsupported_case,
                "disk-exclusion case with unstable plant poles (n_p = " + std::to_string(rep.n_p) +
                    ") is not supported");
  }
  CriterionVerdict v = start(which);
  const bool sweepable = admit(v, rep, false);
  if (g.alpha() > 1.0) fail_precondition(v, "order alpha > 1 is outside the criterion's scope");
  if (!sweepable) {
    v.margin = -kInf;
    return v;
  }

  const double eps = cfg.epsilon_margin;
  bool extra_ok = true;
  Extremum worst{};
  if (which == CriterionCase::circle_b) {
    worst = extremum_re(g, Direction::min, cfg);
    v.details.emplace_back("inf_re", worst.value);
    worst.value += 1.0 / gam;
  } else {
    const Complex center{-(1.0 / lam + 1.0 / gam) / 2.0, 0.0};
    const double radius = std::abs(1.0 / lam - 1.0 / gam) / 2.0;
    v.details.emplace_back("disk_center", center.real());
    v.details.emplace_back("disk_radius", radius);
    if (which == CriterionCase::circle_a) {
      worst = minimize_over_frequency(
          functional(g, [center, radius](Complex z) { return std::abs(z - center) - radius; }), cfg);
      try {
        const int wn = robust_winding(g, center, cfg);
        v.details.emplace_back("winding", wn);
        if (wn != 0) {
          extra_ok = false;
          v.notes.push_back("locus encircles the disk " + std::to_string(wn) +
                            " time(s); expected 0 for a stable plant");
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::on_curve && e.code() != ErrorCode::refine_needed) throw;
        extra_ok = false;
        v.notes.push_back(std::string("winding count unavailable: ") + e.what());
      }
    } else {
      worst = minimize_over_frequency(
          functional(g, [center, radius](Complex z) { return radius - std::abs(z - center); }), cfg);
    }
  }
  v.margin = worst.value - eps;
  v.witness_omega = worst.omega;
  finish(v, extra_ok);
  return v;
}

double max_sector_gamma(const CommensurateTF& g, const SweepConfig& cfg) {
  const StabilityReport rep = stability_report(g);
  CriterionVerdict v;
  admit(v, rep, false);
  if (g.alpha() > 1.0) fail_precondition(v, "order alpha > 1 is outside the criterion's scope");
  if (v.precondition_failed) {
    std::string msg = "maximal sector undefined:";
    for (const auto& n : v.notes) msg += " " + n + ";";
    throw Error(ErrorCode::precondition, msg);
  }
  const Extremum e = extremum_re(g, Direction::min, cfg);
  return e.value < 0.0 ? -1.0 / e.value : kInf;
}

std::vector<double> default_popov_q_grid() {
  std::vector<double> q{0.0};
  for (double x = 0.01; x <= 1000.0; x *= 2.0) q.push_back(x);
  return q;
}

CriterionVerdict popov_check(const CommensurateTF& g, double k, std::span<const double> q_grid,
                             const SweepConfig& cfg) {
  cfg.validate();
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::invalid_sector, "Popov sector bound k must be positive and finite");
  }
  if (q_grid.empty()) throw Error(ErrorCode::invalid_input, "Popov q grid is empty");
  for (double q : q_grid) {
    if (!(q >= 0.0) || !std::isfinite(q)) {
      throw Error(ErrorCode::invalid_input, "Popov q values must be finite and nonnegative");
    }
  }

  CriterionVerdict v = start(CriterionCase::popov);
  const StabilityReport rep = stability_report(g);
  const bool sweepable = admit(v, rep, false);
  if (!rep.popov_applicable) {
    fail_precondition(v, "relative degree (n - m)*alpha = " + fmt(rep.relative_degree) +
                             " is below 1; Popov multiplier not applicable");
  }
  if (!sweepable) {
    v.margin = -kInf;
    return v;
  }

  // Limit of Re{i omega G} as omega -> inf (den is monic).
  std::optional<double> hf_derivative;
  if (g.is_zero() || rep.relative_degree > 1.0 + 1e-12) {
    hf_derivative = 0.0;
  } else if (std::abs(rep.relative_degree - 1.0) <= 1e-12) {
    hf_derivative = g.num().leading();
  }

  const double inv_k = 1.0 / k;
  Extremum best{-kInf, 0.0};
  double best_q = q_grid.front();
  for (double q : q_grid) {
    const FrequencyFunctional f = [&g, q, inv_k, hf_derivative](double w) -> std::optional<double> {
      if (std::isinf(w)) {
        if (!hf_derivative) return std::nullopt;
        return high_frequency_limit(g) + q * *hf_derivative + inv_k;
      }
      const auto gv = freq_value(g, w);
      if (!gv) return std::nullopt;
      return (Complex{1.0, q * w} * *gv).real() + inv_k;
    };
    const Extremum e = minimize_over_frequency(f, cfg);
    if (e.value > best.value) {
      best = e;
      best_q = q;
    }
  }
  v.details.emplace_back("q", best_q);
  v.details.emplace_back("inf_popov", best.value);
  v.margin = best.value - cfg.epsilon_margin;
  v.witness_omega = best.omega;
  finish(v, true);
  return v;
}

MultiplierZ MultiplierZ::zero(double alpha) {
  return {CommensurateTF::constant(0.0, alpha), 0.0, true, CertificationMethod::structural, {}};
}

MultiplierZ MultiplierZ::declared(CommensurateTF tf, std::optional<double> l1_norm, bool nonneg) {
  return {std::move(tf), l1_norm, nonneg, CertificationMethod::declared, {}};
}

CriterionVerdict zames_falb_check(const CommensurateTF& g, const MultiplierZ& z, bool phi_odd,
                                  const SweepConfig& cfg) {
  cfg.validate();
  if (!z.l1_norm) {
    throw Error(ErrorCode::needs_certification,
                "multiplier l1 norm unknown; certify it first (certify_nonneg / response probe)");
  }
  CriterionVerdict v = start(CriterionCase::zf);
  v.notes = z.notes;
  const StabilityReport rep = stability_report(g);
  bool sweepable = admit(v, rep, true);
  if (!check_bibo(z.tf).bibo) {
    fail_precondition(v, "multiplier Z is not BIBO stable");
    sweepable = false;
  }

  const double l1 = *z.l1_norm;
  v.details.emplace_back("l1_norm", l1);
  const bool norm_ok = l1 < 1.0;
  if (!norm_ok) v.notes.push_back("multiplier l1 norm " + fmt(l1) + " is not below 1");
  const bool sign_ok = z.nonneg_certified || phi_odd;
  if (!sign_ok) {
    v.notes.push_back("multiplier impulse response not certified nonnegative and phi not declared odd");
  }
  if (!sweepable) {
    v.margin = -kInf;
    return v;
  }

  const FrequencyFunctional f = [&g, &z](double w) -> std::optional<double> {
    const auto gv = freq_value(g, w);
    const auto zv = freq_value(z.tf, w);
    if (!gv || !zv) return std::nullopt;
    return ((1.0 - *zv) * *gv).real();
  };
  const Extremum e = minimize_over_frequency(f, cfg);
  v.details.emplace_back("inf_re_multiplied", e.value);
  v.margin = std::min(1.0 - l1, e.value - cfg.epsilon_margin);
  v.witness_omega = e.omega;
  finish(v, norm_ok && sign_ok);
  return v;
}

CriterionVerdict gzf_check(const CommensurateTF& g, const MultiplierZ& z, QuasiMonotoneBound d,
                           const SweepConfig& cfg) {
  cfg.validate();
  if (!(d.d_bound >= 0.0 && d.d_bound < 1.0)) {
    throw Error(ErrorCode::invalid_bound, "quasi-monotone bound D must satisfy 0 <= D < 1, got " +
                                              fmt(d.d_bound));
  }
  if (!z.l1_norm) {
    throw Error(ErrorCode::needs_certification,
                "multiplier l1 norm unknown; certify it first (certify_nonneg / response probe)");
  }
  CriterionVerdict v = start(CriterionCase::gzf);
  v.notes = z.notes;
  const StabilityReport rep = stability_report(g);
  bool sweepable = admit(v, rep, true);
  if (!check_bibo(z.tf).bibo) {
    fail_precondition(v, "multiplier Z is not BIBO stable");
    sweepable = false;
  }

  const double l1 = *z.l1_norm;
  const double bound = std::pow((1.0 - d.d_bound) / (1.0 + d.d_bound), 2);
  v.details.emplace_back("l1_norm", l1);
  v.details.emplace_back("l1_bound", bound);
  const bool norm_ok = l1 <= bound;
  if (!norm_ok) {
    v.notes.push_back("multiplier l1 norm " + fmt(l1) + " exceeds ((1 - D)/(1 + D))^2 = " +
                      fmt(bound));
  }
  if (!sweepable) {
    v.margin = -kInf;
    return v;
  }

  // Re{G (1 - Z*)} >= eps |G|^2, divided through by |G|^2.
  const FrequencyFunctional weighted = [&g, &z](double w) -> std::optional<double> {
    const auto gv = freq_value(g, w);
    const auto zv = freq_value(z.tf, w);
    if (!gv || !zv || std::abs(*gv) <= 1e-300) return std::nullopt;
    return ((1.0 - *zv) / *gv).real();
  };
  const Extremum e = minimize_over_frequency(weighted, cfg);
  const double slack = e.value - cfg.epsilon_margin;
  v.details.emplace_back("inf_weighted_re", e.value);
  v.margin = std::min(bound - l1, slack);
  v.witness_omega = e.omega;

  // Ratio form 0 < Re{G/(1 - Z)} <= E, only when 1 - Z stays away from 0.
  const FrequencyFunctional one_minus_z = [&z](double w) -> std::optional<double> {
    const auto zv = freq_value(z.tf, w);
    if (!zv) return std::nullopt;
    return std::abs(1.0 - *zv);
  };
  const Extremum gap = minimize_over_frequency(one_minus_z, cfg);
  if (gap.value <= 1e-9) {
    v.notes.push_back("ratio form disabled: 1 - Z vanishes near omega = " + fmt(gap.omega));
    v.details.emplace_back("ratio_route_enabled", 0.0);
  } else {
    const FrequencyFunctional ratio = [&g, &z](double w) -> std::optional<double> {
      const auto gv = freq_value(g, w);
      const auto zv = freq_value(z.tf, w);
      if (!gv || !zv) return std::nullopt;
      return (*gv / (1.0 - *zv)).real();
    };
    const ScanEnds ends{true, !g.strictly_proper()};
    const Extremum lo = minimize_over_frequency(ratio, cfg, ends);
    const Extremum hi = maximize_over_frequency(ratio, cfg, ends);
    const bool ratio_ok = lo.value > 0.0 && std::isfinite(hi.value);
    const bool agrees = ratio_ok == (slack >= 0.0);
    v.details.emplace_back("ratio_route_enabled", 1.0);
    v.details.emplace_back("inf_ratio_re", lo.value);
    v.details.emplace_back("sup_ratio_re", hi.value);
    v.details.emplace_back("ratio_route_agrees", agrees ? 1.0 : 0.0);
    if (!agrees) {
      v.notes.push_back("ratio form and weighted form disagree near the epsilon boundary");
    }
  }
  finish(v, norm_ok);
  return v;
}

void RLMultiplier::validate() const {
  if (zeros.size() != poles.size()) {
    throw Error(ErrorCode::invalid_multiplier, "RL multiplier needs as many zeros as poles");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (!std::isfinite(zeros[i]) || !std::isfinite(poles[i]) || !(zeros[i] > prev) ||
        !(poles[i] > zeros[i])) {
      throw Error(ErrorCode::invalid_multiplier,
                  "RL interlacing 0 < z1 < p1 < z2 < ... violated at index " + std::to_string(i));
    }
    prev = poles[i];
  }
}

CommensurateTF RLMultiplier::rl_tf() const {
  validate();
  RealPoly num = RealPoly::constant(1.0);
  RealPoly den = RealPoly::constant(1.0);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    num = num * RealPoly{zeros[i], 1.0};
    den = den * RealPoly{poles[i], 1.0};
  }
  return CommensurateTF::make(num, den, 1.0);
}

CommensurateTF RLMultiplier::tf() const { return is_rc ? rl_tf().reciprocal() : rl_tf(); }

std::vector<double> rl_residues(const RLMultiplier& m) {
  m.validate();
  const std::size_t n = m.zeros.size();
  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double b = m.poles[i];
    double r = m.zeros[i] - b;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) r *= (m.zeros[j] - b) / (m.poles[j] - b);
    }
    k[i] = r;
  }
  return k;
}

MultiplierZ rl_decompose(const RLMultiplier& m) {
  const std::vector<double> k = rl_residues(m);
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!(k[i] < 0.0)) {
      throw Error(ErrorCode::internal_consistency,
                  "RL residue k_" + std::to_string(i + 1) + " = " + fmt(k[i]) + " is not negative");
    }
  }
  if (k.empty()) {
    MultiplierZ z = MultiplierZ::zero(1.0);
    z.notes.push_back("trivial multiplier M = 1");
    return z;
  }

  RealPoly num = RealPoly::constant(1.0);
  RealPoly den = RealPoly::constant(1.0);
  double ratio = 1.0;
  double residue_sum = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    num = num * RealPoly{m.zeros[i], 1.0};
    den = den * RealPoly{m.poles[i], 1.0};
    ratio *= m.zeros[i] / m.poles[i];
    residue_sum += -k[i] / m.poles[i];
  }
  // Both products are monic, so den - num drops a degree exactly.
  CommensurateTF ztf = CommensurateTF::make(den - num, den, 1.0);
  const double l1 = 1.0 - ratio;
  const double dc = dc_value(ztf);
  if (std::abs(dc - l1) > 1e-9 || std::abs(residue_sum - l1) > 1e-9) {
    throw Error(ErrorCode::internal_consistency,
                "RL decomposition mismatch: 1 - prod(z/p) = " + fmt(l1) + ", Z(0) = " + fmt(dc) +
                    ", sum of residues = " + fmt(residue_sum));
  }
  return {std::move(ztf), l1, true, CertificationMethod::structural, {}};
}

CriterionVerdict skeleton_check(const CommensurateTF& g, const RLMultiplier& m, double k1,
                                double k2, const SweepConfig& cfg) {
  cfg.validate();
  if (!(k1 < k2) || !std::isfinite(k1) || !std::isfinite(k2)) {
    throw Error(ErrorCode::invalid_sector, "slope bounds need finite K1 < K2");
  }
  m.validate();

  CriterionVerdict pre;
  const StabilityReport rep = stability_report(g);
  admit(pre, rep, true);

  std::optional<CommensurateTF> gt;
  try {
    gt = CommensurateTF::make(g.num().scaled(k2) + g.den(), g.num().scaled(k1) + g.den(),
                              g.alpha());
  } catch (const Error& e) {
    throw Error(ErrorCode::loop_transformation,
                std::string("loop transformation (K2 G + 1)/(K1 G + 1) failed: ") + e.what());
  }
  if (!check_bibo(*gt).bibo) {
    throw Error(ErrorCode::loop_transformation,
                "1 + K1 G has zeros violating the stability argument condition");
  }
  if (const Sweep sw = sweep(*gt, cfg); !sw.skipped.empty()) {
    throw Error(ErrorCode::loop_transformation,
                "1 + K1 G vanishes on the sweep near omega = " + fmt(sw.skipped.front()));
  }

  const MultiplierZ z = rl_decompose(m);
  CriterionVerdict v;
  if (!m.is_rc) {
    v = zames_falb_check(*gt, z, false, cfg);
    v.case_used = CriterionCase::skeleton_rl;
    v.notes.insert(v.notes.begin(),
                   "route: Zames-Falb check on the loop-transformed plant, M = 1 - Z");
  } else {
    v = start(CriterionCase::skeleton_rc);
    v.notes.push_back(
        "route: ratio check Re{G_t M} with M = 1/(1 - Z), backed by the generalized Zames-Falb "
        "check");
    const FrequencyFunctional f = [&gt, &z](double w) -> std::optional<double> {
      const auto gv = freq_value(*gt, w);
      const auto zv = freq_value(z.tf, w);
      if (!gv || !zv) return std::nullopt;
      return (*gv / (1.0 - *zv)).real();
    };
    const Extremum e = minimize_over_frequency(f, cfg);
    v.margin = e.value - cfg.epsilon_margin;
    v.witness_omega = e.omega;
    v.details.emplace_back("inf_re_multiplied", e.value);
    v.details.emplace_back("l1_norm", *z.l1_norm);
    const CriterionVerdict gz = gzf_check(*gt, z, QuasiMonotoneBound{0.0}, cfg);
    v.details.emplace_back("gzf_pass", gz.pass ? 1.0 : 0.0);
    for (const auto& n : gz.notes) v.notes.push_back("gzf: " + n);
    if (gz.precondition_failed) v.precondition_failed = true;
    finish(v, *z.l1_norm <= 1.0);
  }
  v.details.emplace_back("k1", k1);
  v.details.emplace_back("k2", k2);
  if (pre.precondition_failed) {
    v.precondition_failed = true;
    v.pass = false;
    v.notes.insert(v.notes.end(), pre.notes.begin(), pre.notes.end());
  }
  return v;
}

CriterionVerdict smallgain_a1(const CommensurateTF& g, double k, double rho,
                              const SweepConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(k) || !(rho >= 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorCode::invalid_input, "small gain needs finite K and rho >= 0");
  }
  CriterionVerdict v = start(CriterionCase::smallgain);

  bool roots_ok = false;
  std::optional<CommensurateTF> hk;
  const RealPoly closed = g.den() + g.num().scaled(k);
  if (closed.is_zero()) {
    v.notes.push_back("1 + K G vanishes identically");
  } else {
    try {
      hk = CommensurateTF::make(g.num(), closed, g.alpha());
      const StabilityReport rep = check_bibo(*hk);
      roots_ok = rep.bibo;
      if (!roots_ok) {
        v.notes.push_back("D + K N has " + std::to_string(rep.n_p) +
                          " root(s) violating |arg w| > alpha*pi/2");
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::unsupported_input) throw;
      v.notes.push_back("1 + K G vanishes as omega -> inf");
    }
  }

  const FrequencyFunctional gap = functional(g, [k](Complex z) { return std::abs(1.0 + k * z); });
  const Extremum ea = minimize_over_frequency(gap, cfg);
  v.details.emplace_back("inf_abs_1_plus_kg", ea.value);
  const double slack_a = ea.value - cfg.epsilon_margin;

  double slack_b = -kInf;
  double witness_b = 0.0;
  if (roots_ok) {
    const FrequencyFunctional mag = functional(*hk, [](Complex z) { return std::abs(z); });
    const Extremum eb = maximize_over_frequency(mag, cfg);
    v.details.emplace_back("sup_abs_hk", eb.value);
    slack_b = 1.0 - rho * eb.value;
    witness_b = eb.omega;
    if (!(slack_b > 0.0)) v.notes.push_back("rho * sup|H_K| = " + fmt(rho * eb.value) + " >= 1");
  }
  v.margin = std::min(slack_a, slack_b);
  v.witness_omega = slack_a <= slack_b ? ea.omega : witness_b;
  finish(v, roots_ok && slack_b > 0.0);
  return v;
}

MultiplierZ certify_nonneg(const CommensurateTF& z, const SimConfig& probe_cfg) {
  if (!check_bibo(z).bibo) {
    throw Error(ErrorCode::precondition, "cannot certify an unstable multiplier");
  }
  if (z.is_zero()) return MultiplierZ::zero(z.alpha());
  if (is_structurally_nonneg(z)) {
    MultiplierZ m{z, dc_value(z), true, CertificationMethod::structural, {}};
    m.notes.push_back("nonnegative impulse response: positive residues over distinct real poles");
    return m;
  }
  const ProbeResult probe = response_probe(z, ProbeKind::step, probe_cfg);
  if (probe.monotone_nondecreasing) {
    MultiplierZ m{z, dc_value(z), true, CertificationMethod::probe, {}};
    m.notes.push_back("nonnegative impulse response: step response monotone on [0, " +
                      fmt(probe_cfg.t_end) + "] (numeric l1 " + fmt(probe.abs_l1_integral) + ")");
    return m;
  }
  MultiplierZ m{z, probe.abs_l1_integral, false, CertificationMethod::probe, {}};
  m.notes.push_back("impulse response changes sign; l1 norm " + fmt(probe.abs_l1_integral) +
                    " from numeric integration");
  return m;
}

}  // namespace fracstab

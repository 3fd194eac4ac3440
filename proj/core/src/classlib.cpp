#include "fracstab/classlib.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracstab/error.hpp"

namespace fracstab {
namespace {

[[noreturn]] void violated(const std::string& what) {
  throw Error(ErrorCode::constraint_violation, what + " violated");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

RealPoly linear_product(const std::vector<double>& roots_neg) {
  RealPoly p = RealPoly::constant(1.0);
  for (double r : roots_neg) p = p * RealPoly{r, 1.0};
  return p;
}

CommensurateTF base_tf(const ClassSpec& s) {
  CommensurateTF g = CommensurateTF::constant(s.k, s.alpha);
  for (const auto& t : s.terms) {
    const PowerTerm num[] = {{t.gain, 0.0}};
    const PowerTerm den[] = {{1.0, t.order}, {t.pole, 0.0}};
    g = g + tf_from_power_terms(num, den);
  }
  return g;
}

// Numerator and denominator of Z in w = s^alpha.
std::pair<RealPoly, RealPoly> multiplier_polys(const ClassSpec& s) {
  switch (s.kind) {
    case ClassKind::zf1:
      return {RealPoly{}, RealPoly::constant(1.0)};
    case ClassKind::zf2:
      return {RealPoly::constant(*s.b - s.a), RealPoly{*s.b, 1.0}};
    case ClassKind::zf3: {
      const RealPoly num = s.b ? RealPoly{s.z_gain * *s.b, s.z_gain} : RealPoly::constant(s.z_gain);
      return {num, RealPoly{s.a, 1.0} * RealPoly{s.c, 1.0}};
    }
    case ClassKind::gzf:
      if (s.z_num) return {s.z_num->scaled(s.z_gain), *s.z_den};
      return {linear_product(s.gzf_zeros).scaled(s.z_gain), linear_product(s.gzf_poles)};
  }
  return {RealPoly{}, RealPoly::constant(1.0)};
}

}  // namespace

std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::zf1: return "zf1";
    case ClassKind::zf2: return "zf2";
    case ClassKind::zf3: return "zf3";
    case ClassKind::gzf: return "gzf";
  }
  return "unknown";
}

ClassSpec ClassSpec::zf1(double k, std::vector<FirstOrderTerm> terms) {
  ClassSpec s;
  s.kind = ClassKind::zf1;
  s.k = k;
  s.terms = std::move(terms);
  s.alpha = s.terms.empty() ? 1.0 : s.terms.front().order;
  return s;
}

ClassSpec ClassSpec::zf2(double k, std::vector<FirstOrderTerm> terms, double a, double b,
                         double alpha) {
  ClassSpec s;
  s.kind = ClassKind::zf2;
  s.k = k;
  s.terms = std::move(terms);
  s.a = a;
  s.b = b;
  s.alpha = alpha;
  return s;
}

ClassSpec ClassSpec::zf3(double k, std::vector<FirstOrderTerm> terms, double z_gain,
                         std::optional<double> b, double a, double c, double alpha) {
  ClassSpec s;
  s.kind = ClassKind::zf3;
  s.k = k;
  s.terms = std::move(terms);
  s.z_gain = z_gain;
  s.b = b;
  s.a = a;
  s.c = c;
  s.alpha = alpha;
  return s;
}

ClassSpec ClassSpec::gzf(double z_gain, std::vector<double> zeros, std::vector<double> poles,
                         std::vector<FirstOrderTerm> terms, double alpha) {
  ClassSpec s;
  s.kind = ClassKind::gzf;
  s.z_gain = z_gain;
  s.gzf_zeros = std::move(zeros);
  s.gzf_poles = std::move(poles);
  s.terms = std::move(terms);
  s.alpha = alpha;
  return s;
}

ClassSpec ClassSpec::gzf_poly(double z_gain, RealPoly z_num, RealPoly z_den,
                              std::vector<FirstOrderTerm> terms, double alpha) {
  ClassSpec s;
  s.kind = ClassKind::gzf;
  s.z_gain = z_gain;
  s.z_num = std::move(z_num);
  s.z_den = std::move(z_den);
  s.terms = std::move(terms);
  s.alpha = alpha;
  return s;
}

void ClassSpec::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) violated("0 < alpha <= 1");
  for (const auto& t : terms) {
    if (!(t.gain > 0.0)) violated("k_i > 0");
    if (!(t.pole > 0.0)) violated("b_i > 0");
    if (!(t.order > 0.0 && t.order <= 1.0)) violated("0 < alpha_i <= 1");
  }

  switch (kind) {
    case ClassKind::zf1:
      if (!(k > 0.0)) violated("k > 0");
      return;
    case ClassKind::zf2:
      if (!(k > 0.0)) violated("k > 0");
      if (!b || !(a > 0.0 && *b > a)) violated("b > a > 0");
      return;
    case ClassKind::zf3:
      if (!(k > 0.0)) violated("k > 0");
      if (!(z_gain > 0.0)) violated("k0 > 0");
      if (!(c > 0.0)) violated("c > 0");
      if (b) {
        if (!(a > 0.0 && *b > a)) violated("b > a > 0");
        if (!(z_gain * *b < a * c)) violated("kb < ac");
        if (!(a + c > z_gain)) violated("a + c > k");
      } else {
        if (!(a > 0.0)) violated("a > 0");
        if (!(z_gain < a * c)) violated("k < ac");
      }
      return;
    case ClassKind::gzf:
      break;
  }

  if (terms.empty()) violated("at least one term k_l/(s^alpha_l + b_l)");
  if (!(z_gain > 0.0)) violated("K > 0");
  if (z_num || z_den) {
    if (!z_num || !z_den || z_den->is_zero()) violated("multiplier polynomials both given");
    if (z_num->degree() > z_den->degree()) violated("n >= m");
    if (!(std::abs((*z_den)[0]) > 0.0)) violated("Z(0) finite");
    const double z0 = z_gain * (*z_num)[0] / (*z_den)[0];
    if (!(z0 < 1.0)) violated("K prod b_i / prod a_j < 1");
    return;
  }
  if (gzf_zeros.size() > gzf_poles.size()) violated("n >= m");
  for (double x : gzf_zeros) {
    if (!(x > 0.0)) violated("b_i > 0");
  }
  for (double x : gzf_poles) {
    if (!(x > 0.0)) violated("a_j > 0");
  }
  // Each b_i, ascending, takes the smallest still-unmatched a_j below it.
  std::vector<double> bs = gzf_zeros;
  std::vector<double> as = gzf_poles;
  std::sort(bs.begin(), bs.end());
  std::sort(as.begin(), as.end());
  std::vector<bool> used(as.size(), false);
  for (double bi : bs) {
    bool matched = false;
    for (std::size_t j = 0; j < as.size(); ++j) {
      if (!used[j] && as[j] < bi) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) violated("pairing rule (an unmatched a_j < b_i for b_i = " + fmt(bi) + ")");
  }
  double z0 = z_gain;
  for (double x : gzf_zeros) z0 *= x;
  for (double x : gzf_poles) z0 /= x;
  if (!(z0 < 1.0)) violated("K prod b_i / prod a_j < 1");
}

ClassInstance gen_stable_class(const ClassSpec& spec, const SimConfig& probe_cfg) {
  spec.validate();
  const CommensurateTF base = base_tf(spec);
  const auto [znum, zden] = multiplier_polys(spec);

  std::vector<std::string> notes;
  CommensurateTF plant = base;
  std::optional<CommensurateTF> ztf;
  RequiredCheck required = RequiredCheck::zf;
  switch (spec.kind) {
    case ClassKind::zf1:
      ztf = CommensurateTF::constant(0.0, base.alpha());
      break;
    case ClassKind::zf2:
    case ClassKind::zf3:
      // G = base / (1 - Z), written with 1 - Z = (zden - znum)/zden.
      plant = CommensurateTF::make(zden, zden - znum, spec.alpha) * base;
      ztf = CommensurateTF::make(znum, zden, spec.alpha);
      break;
    case ClassKind::gzf:
      plant = CommensurateTF::make(zden - znum, zden, spec.alpha) * base;
      ztf = CommensurateTF::make(znum, zden, spec.alpha);
      required = RequiredCheck::gzf;
      break;
  }

  if (spec.kind == ClassKind::zf2) {
    notes.push_back("Z(0) = (b - a)/b = " + fmt((*spec.b - spec.a) / *spec.b) +
                    "; the ratio (b - a)/a found in some statements of this class is not Z(0)");
  }
  if (spec.kind == ClassKind::zf3 && !spec.b) {
    notes.push_back("multiplier without numerator zero; k < ac replaces kb < ac and a + c > k");
  }
  if (spec.kind == ClassKind::gzf && spec.z_num) {
    notes.push_back("multiplier given in polynomial form; pairing rule applies to real factors only");
  }

  MultiplierZ z = certify_nonneg(*ztf, probe_cfg);
  return {std::move(plant), std::move(z), required, std::move(notes)};
}

CriterionVerdict verify_class_instance(const ClassInstance& inst, const SweepConfig& cfg,
                                       bool phi_odd) {
  CriterionVerdict v = inst.required == RequiredCheck::zf
                           ? zames_falb_check(inst.plant, inst.multiplier, phi_odd, cfg)
                           : gzf_check(inst.plant, inst.multiplier, QuasiMonotoneBound{0.0}, cfg);
  v.notes.insert(v.notes.end(), inst.notes.begin(), inst.notes.end());
  if (!v.pass && !v.precondition_failed) {
    v.notes.push_back("class construction defect: instance fails its own criterion (margin " +
                      fmt(v.margin) + " at omega = " + fmt(v.witness_omega) + ")");
  }
  return v;
}

}  // namespace fracstab

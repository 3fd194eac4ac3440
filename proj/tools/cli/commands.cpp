#include "commands.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fracstab/classlib.hpp"
#include "fracstab/error.hpp"
#include "report.hpp"
#include "system.hpp"

namespace fracstab::cli {
namespace {

/// Usage problems detected after option parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string system;
  std::string sector;
  std::optional<double> alpha;
  std::string omega_range;
  std::optional<double> eps;
  std::optional<double> h;
  std::optional<double> t_end;
  std::string out;
  std::string format = "json";
};

struct Context {
  SystemDefinition sys;
  CommensurateTF plant = CommensurateTF::constant(0.0);
  std::optional<ClassInstance> inst;
  Format format = Format::json;
  std::string out_path;
};

std::pair<double, double> parse_pair(const std::string& text, const std::string& flag) {
  std::istringstream in(text);
  double a = 0.0;
  double b = 0.0;
  char comma = 0;
  if (!(in >> a >> comma >> b) || comma != ',' || !(in >> std::ws).eof()) {
    throw UsageError(flag + " expects two comma-separated numbers, got '" + text + "'");
  }
  return {a, b};
}

Context make_context(const Options& opt) {
  if (opt.system.empty()) throw UsageError("--system is required");
  Context c;
  c.sys = load_system(opt.system);
  if (opt.format == "json") {
    c.format = Format::json;
  } else if (opt.format == "csv") {
    c.format = Format::csv;
  } else {
    throw UsageError("--format expects json or csv, got '" + opt.format + "'");
  }
  c.out_path = opt.out;

  auto& p = c.sys.plant;
  if (opt.alpha) {
    p.alpha = *opt.alpha;
    if (p.class_spec) {
      p.class_spec->alpha = *opt.alpha;
      for (auto& t : p.class_spec->terms) t.order = *opt.alpha;
    }
  }
  if (!opt.sector.empty()) {
    const auto [l, g] = parse_pair(opt.sector, "--sector");
    c.sys.sector = Sector{l, g};
  }
  if (!opt.omega_range.empty()) {
    const auto [lo, hi] = parse_pair(opt.omega_range, "--omega-range");
    c.sys.sweep.omega_min = lo;
    c.sys.sweep.omega_max = hi;
  }
  if (opt.eps) c.sys.sweep.epsilon_margin = *opt.eps;
  if (opt.h) c.sys.sim.h = *opt.h;
  if (opt.t_end) c.sys.sim.t_end = *opt.t_end;
  c.sys.sweep.validate();

  if (p.class_spec) {
    c.inst = gen_stable_class(*p.class_spec);
    c.plant = c.inst->plant;
  } else {
    c.plant = build_plant(p);
  }
  return c;
}

Report poly_report(const RealPoly& p) {
  Report a = Report::array();
  for (int i = 0; i <= p.degree(); ++i) a.push_back(number_value(p[i]));
  return a;
}

Report tf_report(const CommensurateTF& g) {
  Report r = Report::object();
  r["alpha"] = number_value(g.alpha());
  r["num"] = poly_report(g.num());
  r["den"] = poly_report(g.den());
  return r;
}

Report verdict_report(const CriterionVerdict& v) {
  Report r = Report::object();
  r["criterion"] = to_string(v.case_used);
  r["pass"] = v.pass;
  r["precondition_failed"] = v.precondition_failed;
  r["margin"] = number_value(v.margin);
  r["witness_omega"] = number_value(v.witness_omega);
  Report d = Report::object();
  for (const auto& [key, value] : v.details) d[key] = number_value(value);
  r["details"] = d;
  r["notes"] = v.notes;
  return r;
}

int verdict_exit(const CriterionVerdict& v) {
  if (v.pass) return exit_pass;
  return v.precondition_failed ? exit_error : exit_fail;
}

Report multiplier_report(const MultiplierZ& z) {
  Report r = tf_report(z.tf);
  r["l1_norm"] = z.l1_norm ? number_value(*z.l1_norm) : Report(nullptr);
  r["nonneg_certified"] = z.nonneg_certified;
  r["method"] = to_string(z.method);
  r["notes"] = z.notes;
  return r;
}

Report stability_json(const StabilityReport& s) {
  Report r = Report::object();
  r["alpha"] = number_value(s.alpha);
  r["num_degree"] = s.num_degree;
  r["den_degree"] = s.den_degree;
  r["bibo"] = s.bibo;
  r["unstable_poles"] = s.n_p;
  r["l2_finite"] = s.l2_finite;
  r["l2_finite_regular"] = s.l2_finite_regular;
  r["relative_degree"] = number_value(s.relative_degree);
  r["popov_applicable"] = s.popov_applicable;
  Report poles = Report::array();
  for (const auto& pa : s.pole_args) {
    Report p = Report::object();
    p["re"] = number_value(pa.root.real());
    p["im"] = number_value(pa.root.imag());
    p["abs_arg"] = number_value(pa.abs_arg);
    p["margin"] = number_value(pa.margin);
    poles.push_back(p);
  }
  r["pole_arguments"] = poles;
  return r;
}

/// Multiplier from the definition, else the class instance's, else none.
std::optional<MultiplierZ> system_multiplier(const Context& c) {
  const auto& m = c.sys.multiplier;
  if (m.tf) {
    if (m.l1_norm && m.nonneg) return MultiplierZ::declared(*m.tf, m.l1_norm, *m.nonneg);
    auto z = certify_nonneg(*m.tf, SimConfig{});
    if (m.l1_norm) z.l1_norm = m.l1_norm;
    return z;
  }
  if (m.rl) return rl_decompose(*m.rl);
  if (c.inst) return c.inst->multiplier;
  return std::nullopt;
}

bool phi_odd(const Context& c) { return c.sys.nonlinearity && c.sys.nonlinearity->odd(); }

std::pair<double, double> slope_bounds(const Context& c, const char* command) {
  if (c.sys.slope_bounds) return *c.sys.slope_bounds;
  if (c.sys.sector) return {c.sys.sector->lambda_low, c.sys.sector->gamma_high};
  throw UsageError(std::string(command) + " needs slope_bounds in the system or --sector");
}

double popov_gain(const Context& c) {
  if (c.sys.sector) {
    if (c.sys.sector->lambda_low != 0.0) throw UsageError("popov needs a sector of the form {0, k}");
    return c.sys.sector->gamma_high;
  }
  if (c.sys.popov_k) return *c.sys.popov_k;
  throw UsageError("popov needs popov.k in the system or --sector 0,k");
}

std::vector<double> popov_grid(const Context& c) {
  return c.sys.popov_q.empty() ? default_popov_q_grid() : c.sys.popov_q;
}

CriterionVerdict run_popov(const Context& c) {
  const auto grid = popov_grid(c);
  return popov_check(c.plant, popov_gain(c), grid, c.sys.sweep);
}

CriterionVerdict run_zf(const Context& c) {
  const auto z = system_multiplier(c).value_or(MultiplierZ::zero(c.plant.alpha()));
  return zames_falb_check(c.plant, z, phi_odd(c), c.sys.sweep);
}

CriterionVerdict run_gzf(const Context& c) {
  const auto z = system_multiplier(c).value_or(MultiplierZ::zero(c.plant.alpha()));
  return gzf_check(c.plant, z, QuasiMonotoneBound{c.sys.quasi_monotone_bound}, c.sys.sweep);
}

CriterionVerdict run_skeleton(const Context& c) {
  if (!c.sys.multiplier.rl) throw UsageError("skeleton needs an rl or rc multiplier in the system");
  const auto [k1, k2] = slope_bounds(c, "skeleton");
  return skeleton_check(c.plant, *c.sys.multiplier.rl, k1, k2, c.sys.sweep);
}

/// Report destination: --out when given, else out.
void emit(const Context& c, const Report& r, std::ostream& out) {
  if (c.out_path.empty()) {
    write_report(r, c.format, out);
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.out_path);
  write_report(r, c.format, f);
}

int verdict_command(const Context& c, const std::string& name, const CriterionVerdict& v,
                    std::ostream& out) {
  Report r = Report::object();
  r["command"] = name;
  r["plant"] = tf_report(c.plant);
  r["verdict"] = verdict_report(v);
  emit(c, r, out);
  return verdict_exit(v);
}

int cmd_sector(const Context& c, std::ostream& out) {
  const double gamma = max_sector_gamma(c.plant, c.sys.sweep);
  const auto ext = extremum_re(c.plant, Direction::min, c.sys.sweep);
  Report r = Report::object();
  r["command"] = "sector";
  r["plant"] = tf_report(c.plant);
  r["gamma"] = number_value(gamma);
  r["min_re"] = number_value(ext.value);
  r["witness_omega"] = number_value(ext.omega);
  emit(c, r, out);
  return exit_pass;
}

int cmd_nyquist(const Context& c, std::ostream& out) {
  const auto sw = sweep(c.plant, c.sys.sweep);
  std::ofstream file;
  if (!c.out_path.empty()) {
    file.open(c.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + c.out_path);
  }
  std::ostream& os = c.out_path.empty() ? out : file;
  if (c.format == Format::csv) {
    os << "omega,re,im\n";
    for (const auto& s : sw.samples) {
      os << format_number(s.omega) << ',' << format_number(s.value.real()) << ','
         << format_number(s.value.imag()) << '\n';
    }
    return exit_pass;
  }
  Report r = Report::object();
  r["command"] = "nyquist";
  r["plant"] = tf_report(c.plant);
  Report omega = Report::array();
  Report re = Report::array();
  Report im = Report::array();
  for (const auto& s : sw.samples) {
    omega.push_back(number_value(s.omega));
    re.push_back(number_value(s.value.real()));
    im.push_back(number_value(s.value.imag()));
  }
  r["omega"] = omega;
  r["re"] = re;
  r["im"] = im;
  Report skipped = Report::array();
  for (double w : sw.skipped) skipped.push_back(number_value(w));
  r["skipped"] = skipped;
  write_report(r, Format::json, os);
  return exit_pass;
}

int cmd_classgen(const Context& c, std::ostream& out) {
  if (!c.inst) throw UsageError("classgen needs plant.class in the system");
  const auto v = verify_class_instance(*c.inst, c.sys.sweep, phi_odd(c));
  Report r = Report::object();
  r["command"] = "classgen";
  r["class"] = to_string(c.sys.plant.class_spec->kind);
  r["required_check"] = c.inst->required == RequiredCheck::zf ? "zf" : "gzf";
  r["plant"] = tf_report(c.inst->plant);
  r["multiplier"] = multiplier_report(c.inst->multiplier);
  r["notes"] = c.inst->notes;
  r["verdict"] = verdict_report(v);
  emit(c, r, out);
  return verdict_exit(v);
}

int cmd_simulate(const Context& c, std::ostream& out) {
  const auto phi = c.sys.nonlinearity.value_or(Nonlinearity::saturation(1.0, 1.0));
  const auto trace = simulate_lure(realize_state_space(c.plant), phi, c.sys.input, c.sys.sim);
  if (!c.out_path.empty()) {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + c.out_path);
    trace.write_csv(f);
  }
  const auto& m = trace.metrics;
  Report r = Report::object();
  r["command"] = "simulate";
  r["plant"] = tf_report(c.plant);
  r["nonlinearity"] = phi.describe();
  r["h"] = number_value(c.sys.sim.h);
  r["t_end"] = number_value(c.sys.sim.t_end);
  r["samples"] = trace.t.size();
  r["trace"] = c.out_path.empty() ? Report(nullptr) : Report(c.out_path);
  r["l2_estimate"] = number_value(m.l2_estimate);
  r["sup_norm"] = number_value(m.sup_norm);
  r["settled"] = m.settled;
  r["settle_time"] = number_value(m.settle_time);
  r["tail_ratio"] = number_value(m.tail_ratio);
  r["window_decay_ratio"] = number_value(m.window_decay_ratio);
  write_report(r, c.format, out);
  return exit_pass;
}

/// Runs one criterion inside analyze; library errors become report entries.
Report attempt(const std::function<CriterionVerdict()>& f, bool& any_pass) {
  try {
    const auto v = f();
    any_pass = any_pass || v.pass;
    return verdict_report(v);
  } catch (const Error& e) {
    Report r = Report::object();
    r["error"] = to_string(e.code());
    r["message"] = e.what();
    return r;
  }
}

int cmd_analyze(const Context& c, std::ostream& out) {
  const auto rep = stability_report(c.plant);
  Report r = Report::object();
  r["command"] = "analyze";
  r["plant"] = tf_report(c.plant);
  r["stability"] = stability_json(rep);
  if (!rep.bibo) {
    r["certified"] = false;
    r["criteria"] = Report::object();
    emit(c, r, out);
    return exit_error;
  }

  Report crit = Report::object();
  bool any_pass = false;
  try {
    crit["max_sector_gamma"] = number_value(max_sector_gamma(c.plant, c.sys.sweep));
  } catch (const Error& e) {
    crit["max_sector_gamma"] = std::string("error: ") + e.what();
  }
  if (c.sys.sector) {
    crit["circle"] = attempt([&] { return circle_criterion(c.plant, *c.sys.sector, c.sys.sweep); }, any_pass);
  }
  const bool popov_k = c.sys.popov_k || (c.sys.sector && c.sys.sector->lambda_low == 0.0);
  if (rep.popov_applicable && popov_k) crit["popov"] = attempt([&] { return run_popov(c); }, any_pass);
  crit["zf"] = attempt([&] { return run_zf(c); }, any_pass);
  if (system_multiplier(c)) crit["gzf"] = attempt([&] { return run_gzf(c); }, any_pass);
  if (c.sys.multiplier.rl && (c.sys.slope_bounds || c.sys.sector)) {
    crit["skeleton"] = attempt([&] { return run_skeleton(c); }, any_pass);
  }
  if (c.sys.small_gain) {
    const auto [k, rho] = *c.sys.small_gain;
    crit["small_gain"] = attempt([&] { return smallgain_a1(c.plant, k, rho, c.sys.sweep); }, any_pass);
  }
  r["certified"] = any_pass;
  r["criteria"] = crit;
  emit(c, r, out);
  return any_pass ? exit_pass : exit_fail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability analysis of fractional-order Lur'e systems", "fracstab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_help_flag("--help", "Print this help message and exit");

  Options opt;
  app.add_option("--system", opt.system, "System definition (JSON)");
  app.add_option("--sector", opt.sector, "Sector override lambda,gamma");
  app.add_option("--alpha", opt.alpha, "Plant order override");
  app.add_option("--omega-range", opt.omega_range, "Sweep range a,b");
  app.add_option("--eps", opt.eps, "Epsilon margin of frequency inequalities");
  app.add_option("--h", opt.h, "Simulation step");
  app.add_option("--t-end", opt.t_end, "Simulation horizon");
  app.add_option("--out", opt.out, "Output file");
  app.add_option("--format", opt.format, "Report format: json or csv");

  using Handler = std::function<int(const Context&, std::ostream&)>;
  const std::map<std::string, std::pair<std::string, Handler>> commands = {
      {"analyze", {"Stability report and every applicable criterion", cmd_analyze}},
      {"sector", {"Largest sector {0, gamma} accepted by the circle criterion", cmd_sector}},
      {"nyquist", {"Frequency response sweep (omega, re, im)", cmd_nyquist}},
      {"popov", {"Popov criterion", [](const Context& c, std::ostream& o) {
                   return verdict_command(c, "popov", run_popov(c), o);
                 }}},
      {"zf", {"Zames-Falb multiplier check", [](const Context& c, std::ostream& o) {
                return verdict_command(c, "zf", run_zf(c), o);
              }}},
      {"gzf", {"Generalized Zames-Falb check", [](const Context& c, std::ostream& o) {
                 return verdict_command(c, "gzf", run_gzf(c), o);
               }}},
      {"skeleton", {"Slope-restricted multiplier check", [](const Context& c, std::ostream& o) {
                      return verdict_command(c, "skeleton", run_skeleton(c), o);
                    }}},
      {"classgen", {"Build and verify a certified plant class", cmd_classgen}},
      {"simulate", {"Closed-loop simulation (trace CSV and metrics)", cmd_simulate}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

  std::vector<const char*> argv{"fracstab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_error;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const Context c = make_context(opt);
    return commands.at(name).second(c, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  }
  return exit_error;
}

}  // namespace fracstab::cli

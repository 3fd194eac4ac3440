#include "system.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracstab/error.hpp"

namespace fracstab::cli {
namespace {

using nlohmann::json;

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string join(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ParseError(join(path, key), "unknown field");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "expected a finite number");
  return v;
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path, "expected true or false");
  return j.get<bool>();
}

std::string text_field(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], join(path, i)));
  return out;
}

std::pair<double, double> number_pair(const json& j, const std::string& path) {
  const auto v = number_list(j, path);
  if (v.size() != 2) throw ParseError(path, "expected exactly two numbers");
  return {v[0], v[1]};
}

std::optional<double> opt_number(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) return std::nullopt;
  return number(j.at(key), join(path, key));
}

RealPoly poly(const json& j, const std::string& path) {
  const auto c = number_list(j, path);
  if (c.empty()) throw ParseError(path, "expected at least one coefficient");
  return RealPoly(c);
}

std::vector<FirstOrderTerm> parse_terms(const json& j, const std::string& path, double alpha) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty array of terms");
  std::vector<FirstOrderTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = join(path, i);
    require_object(j[i], p);
    reject_unknown(j[i], p, {"gain", "pole", "order"});
    FirstOrderTerm t;
    t.gain = j[i].contains("gain") ? number(j[i]["gain"], join(p, "gain")) : 1.0;
    if (!j[i].contains("pole")) throw ParseError(join(p, "pole"), "missing field");
    t.pole = number(j[i]["pole"], join(p, "pole"));
    t.order = opt_number(j[i], "order", p).value_or(alpha);
    out.push_back(t);
  }
  return out;
}

ClassSpec parse_class(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"kind", "alpha", "k", "terms", "a", "b", "c", "z_gain", "zeros", "poles", "z_num", "z_den"});
  if (!j.contains("kind")) throw ParseError(join(path, "kind"), "missing field");
  const std::string kind = text_field(j["kind"], join(path, "kind"));
  const double alpha = opt_number(j, "alpha", path).value_or(1.0);
  const double k = opt_number(j, "k", path).value_or(0.0);
  if (!j.contains("terms")) throw ParseError(join(path, "terms"), "missing field");
  auto terms = parse_terms(j["terms"], join(path, "terms"), alpha);
  const auto need = [&](const char* key) {
    if (!j.contains(key)) throw ParseError(join(path, key), "missing field");
    return number(j[key], join(path, key));
  };
  if (kind == "zf1") return ClassSpec::zf1(k, std::move(terms));
  if (kind == "zf2") return ClassSpec::zf2(k, std::move(terms), need("a"), need("b"), alpha);
  if (kind == "zf3") {
    return ClassSpec::zf3(k, std::move(terms), need("z_gain"), opt_number(j, "b", path), need("a"),
                          need("c"), alpha);
  }
  if (kind == "gzf") {
    const double gain = need("z_gain");
    if (j.contains("z_num") || j.contains("z_den")) {
      if (!j.contains("z_num")) throw ParseError(join(path, "z_num"), "missing field");
      if (!j.contains("z_den")) throw ParseError(join(path, "z_den"), "missing field");
      return ClassSpec::gzf_poly(gain, poly(j["z_num"], join(path, "z_num")),
                                 poly(j["z_den"], join(path, "z_den")), std::move(terms), alpha);
    }
    const auto zeros = j.contains("zeros") ? number_list(j["zeros"], join(path, "zeros")) : std::vector<double>{};
    const auto poles = j.contains("poles") ? number_list(j["poles"], join(path, "poles")) : std::vector<double>{};
    return ClassSpec::gzf(gain, zeros, poles, std::move(terms), alpha);
  }
  throw ParseError(join(path, "kind"), "unknown class kind '" + kind + "' (expected zf1, zf2, zf3 or gzf)");
}

PlantDefinition parse_plant(const json& j) {
  const std::string path = "/plant";
  require_object(j, path);
  PlantDefinition p;
  if (j.contains("class")) {
    reject_unknown(j, path, {"class"});
    p.class_spec = parse_class(j["class"], join(path, "class"));
    p.alpha = p.class_spec->alpha;
    return p;
  }
  reject_unknown(j, path, {"alpha", "num", "den"});
  p.alpha = opt_number(j, "alpha", path).value_or(1.0);
  if (!j.contains("num")) throw ParseError(join(path, "num"), "missing field");
  if (!j.contains("den")) throw ParseError(join(path, "den"), "missing field");
  p.num = number_list(j["num"], join(path, "num"));
  p.den = number_list(j["den"], join(path, "den"));
  if (p.num.empty()) throw ParseError(join(path, "num"), "expected at least one coefficient");
  if (p.den.empty()) throw ParseError(join(path, "den"), "expected at least one coefficient");
  return p;
}

Nonlinearity parse_nonlinearity(const json& j) {
  const std::string path = "/nonlinearity";
  require_object(j, path);
  if (!j.contains("kind")) throw ParseError(join(path, "kind"), "missing field");
  const std::string kind = text_field(j["kind"], join(path, "kind"));
  if (kind == "saturation") {
    reject_unknown(j, path, {"kind", "slope", "limit"});
    return Nonlinearity::saturation(opt_number(j, "slope", path).value_or(1.0),
                                    opt_number(j, "limit", path).value_or(1.0));
  }
  if (kind == "gain") {
    reject_unknown(j, path, {"kind", "k"});
    if (!j.contains("k")) throw ParseError(join(path, "k"), "missing field");
    return Nonlinearity::gain(number(j["k"], join(path, "k")));
  }
  if (kind == "piecewise_linear") {
    reject_unknown(j, path, {"kind", "x", "y"});
    if (!j.contains("x")) throw ParseError(join(path, "x"), "missing field");
    if (!j.contains("y")) throw ParseError(join(path, "y"), "missing field");
    return Nonlinearity::piecewise_linear(number_list(j["x"], join(path, "x")), number_list(j["y"], join(path, "y")));
  }
  throw ParseError(join(path, "kind"),
                   "unknown nonlinearity '" + kind + "' (expected saturation, gain or piecewise_linear)");
}

Sector parse_sector(const json& j) {
  const std::string path = "/sector";
  if (j.is_array()) {
    const auto [l, g] = number_pair(j, path);
    return {l, g};
  }
  require_object(j, path);
  reject_unknown(j, path, {"lambda", "gamma"});
  if (!j.contains("lambda")) throw ParseError(join(path, "lambda"), "missing field");
  if (!j.contains("gamma")) throw ParseError(join(path, "gamma"), "missing field");
  return {number(j["lambda"], join(path, "lambda")), number(j["gamma"], join(path, "gamma"))};
}

MultiplierDefinition parse_multiplier(const json& j) {
  const std::string path = "/multiplier";
  require_object(j, path);
  MultiplierDefinition m;
  if (j.contains("rl") || j.contains("rc")) {
    reject_unknown(j, path, {"rl", "rc"});
    if (j.contains("rl") && j.contains("rc")) throw ParseError(path, "give either rl or rc, not both");
    const bool rc = j.contains("rc");
    const std::string p = join(path, rc ? "rc" : "rl");
    const json& f = j[rc ? "rc" : "rl"];
    require_object(f, p);
    reject_unknown(f, p, {"zeros", "poles"});
    if (!f.contains("zeros")) throw ParseError(join(p, "zeros"), "missing field");
    if (!f.contains("poles")) throw ParseError(join(p, "poles"), "missing field");
    m.rl = RLMultiplier{number_list(f["zeros"], join(p, "zeros")), number_list(f["poles"], join(p, "poles")), rc};
    return m;
  }
  reject_unknown(j, path, {"alpha", "num", "den", "l1_norm", "nonneg"});
  if (!j.contains("num")) throw ParseError(join(path, "num"), "missing field");
  if (!j.contains("den")) throw ParseError(join(path, "den"), "missing field");
  const double alpha = opt_number(j, "alpha", path).value_or(1.0);
  try {
    m.tf = tf_make(poly(j["num"], join(path, "num")), poly(j["den"], join(path, "den")), alpha);
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
  m.l1_norm = opt_number(j, "l1_norm", path);
  if (j.contains("nonneg")) m.nonneg = boolean(j["nonneg"], join(path, "nonneg"));
  return m;
}

void parse_sweep(const json& j, SweepConfig& cfg) {
  const std::string path = "/sweep";
  require_object(j, path);
  reject_unknown(j, path, {"omega_min", "omega_max", "points_per_decade", "epsilon_margin"});
  cfg.omega_min = opt_number(j, "omega_min", path).value_or(cfg.omega_min);
  cfg.omega_max = opt_number(j, "omega_max", path).value_or(cfg.omega_max);
  if (j.contains("points_per_decade")) {
    const auto& v = j["points_per_decade"];
    if (!v.is_number_integer()) throw ParseError(join(path, "points_per_decade"), "expected an integer");
    cfg.points_per_decade = v.get<int>();
  }
  cfg.epsilon_margin = opt_number(j, "epsilon_margin", path).value_or(cfg.epsilon_margin);
}

void parse_sim(const json& j, SimConfig& cfg) {
  const std::string path = "/sim";
  require_object(j, path);
  reject_unknown(j, path, {"h", "t_end", "memory_steps"});
  cfg.h = opt_number(j, "h", path).value_or(cfg.h);
  cfg.t_end = opt_number(j, "t_end", path).value_or(cfg.t_end);
  if (j.contains("memory_steps")) {
    const auto& v = j["memory_steps"];
    if (!v.is_number_unsigned()) throw ParseError(join(path, "memory_steps"), "expected a nonnegative integer");
    cfg.memory_steps = v.get<std::size_t>();
  }
}

PulseInput parse_input(const json& j) {
  const std::string path = "/input";
  require_object(j, path);
  reject_unknown(j, path, {"amplitude", "t_on", "t_off"});
  PulseInput u{5.0, 0.0, 50.0};
  u.amplitude = opt_number(j, "amplitude", path).value_or(u.amplitude);
  u.t_on = opt_number(j, "t_on", path).value_or(u.t_on);
  u.t_off = opt_number(j, "t_off", path).value_or(u.t_off);
  return u;
}

}  // namespace

SystemDefinition parse_system(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::string msg = e.what();
    const auto colon = msg.rfind(": ");
    throw ParseError(line_column(text, e.byte), colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
  require_object(root, "");
  reject_unknown(root, "",
                 {"plant", "nonlinearity", "sector", "multiplier", "quasi_monotone_bound", "slope_bounds",
                  "popov", "small_gain", "input", "sweep", "sim"});
  if (!root.contains("plant")) throw ParseError("/plant", "missing field");

  SystemDefinition s;
  s.plant = parse_plant(root["plant"]);
  if (root.contains("nonlinearity")) {
    try {
      s.nonlinearity = parse_nonlinearity(root["nonlinearity"]);
    } catch (const Error& e) {
      throw ParseError("/nonlinearity", e.what());
    }
  }
  if (root.contains("sector")) s.sector = parse_sector(root["sector"]);
  if (root.contains("multiplier")) s.multiplier = parse_multiplier(root["multiplier"]);
  if (root.contains("quasi_monotone_bound")) {
    s.quasi_monotone_bound = number(root["quasi_monotone_bound"], "/quasi_monotone_bound");
  }
  if (root.contains("slope_bounds")) s.slope_bounds = number_pair(root["slope_bounds"], "/slope_bounds");
  if (root.contains("popov")) {
    const json& p = root["popov"];
    require_object(p, "/popov");
    reject_unknown(p, "/popov", {"k", "q"});
    s.popov_k = opt_number(p, "k", "/popov");
    if (p.contains("q")) s.popov_q = number_list(p["q"], "/popov/q");
  }
  if (root.contains("small_gain")) {
    const json& p = root["small_gain"];
    require_object(p, "/small_gain");
    reject_unknown(p, "/small_gain", {"k", "rho"});
    if (!p.contains("rho")) throw ParseError("/small_gain/rho", "missing field");
    s.small_gain = {opt_number(p, "k", "/small_gain").value_or(0.0), number(p["rho"], "/small_gain/rho")};
  }
  if (root.contains("input")) s.input = parse_input(root["input"]);
  if (root.contains("sweep")) parse_sweep(root["sweep"], s.sweep);
  if (root.contains("sim")) parse_sim(root["sim"], s.sim);
  return s;
}

SystemDefinition load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open system definition");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_system(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

CommensurateTF build_plant(const PlantDefinition& p) {
  if (p.class_spec) return gen_stable_class(*p.class_spec).plant;
  return tf_make(RealPoly(p.num), RealPoly(p.den), p.alpha);
}

}  // namespace fracstab::cli

#include "dampwave/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dampwave/cli/registry.hpp"
#include "dampwave/harness.hpp"

namespace dampwave::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!object.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* name : allowed) known = known || key == name;
    if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

std::string path_of(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

double read_number(const json& object, const std::string& where, const char* key,
                   double fallback) {
  if (!object.contains(key)) return fallback;
  const auto& v = object.at(key);
  if (!v.is_number()) throw ConfigError(path_of(where, key) + ": expected a number");
  return v.get<double>();
}

int read_integer(const json& object, const std::string& where, const char* key, int fallback) {
  if (!object.contains(key)) return fallback;
  const auto& v = object.at(key);
  if (!v.is_number_integer()) throw ConfigError(path_of(where, key) + ": expected an integer");
  return v.get<int>();
}

std::string read_string(const json& object, const std::string& where, const char* key,
                        const std::string& fallback) {
  if (!object.contains(key)) return fallback;
  const auto& v = object.at(key);
  if (!v.is_string()) throw ConfigError(path_of(where, key) + ": expected a string");
  return v.get<std::string>();
}

DatumConfig read_datum(const json& object, const std::string& where) {
  reject_unknown(object, where, {"family", "a", "amplitude"});
  DatumConfig d;
  if (!object.contains("family")) throw ConfigError(where + ".family: required");
  d.family = read_string(object, where, "family", "");
  if (d.family == "gaussian") {
    d.a = read_number(object, where, "a", d.a);
    d.amplitude = read_number(object, where, "amplitude", d.amplitude);
  } else if (d.family == "zero") {
    if (object.contains("a") || object.contains("amplitude"))
      throw ConfigError(where + ": family 'zero' takes no parameters");
  } else {
    throw ConfigError(where + ".family: unknown family '" + d.family +
                      "' (expected gaussian or zero)");
  }
  return d;
}

json datum_json(const DatumConfig& d) {
  if (d.family == "zero") return json{{"family", "zero"}};
  return json{{"family", d.family}, {"a", d.a}, {"amplitude", d.amplitude}};
}

}  // namespace

std::vector<double> ExperimentConfig::times() const {
  return harness::decade_grid(t_grid.t_min, t_grid.t_max, t_grid.points_per_decade);
}

void validate(const ExperimentConfig& c) {
  if (!(c.model.theta > 1.0) || !std::isfinite(c.model.theta))
    throw ConfigError("model.theta: must be a finite number > 1");
  if (c.model.n < 1) throw ConfigError("model.n: must be >= 1");
  if (!(c.beta > 0.0 && c.beta < 1.0)) throw ConfigError("beta: must lie in (0, 1)");
  if (!(c.ell >= 0.0) || !std::isfinite(c.ell)) throw ConfigError("ell: must be >= 0");
  const double critical = std::pow(4.0, 1.0 / (4.0 * c.model.theta - 2.0));
  if (!(c.delta0 > 0.0 && c.delta0 < critical))
    throw ConfigError("delta0: must lie in (0, 4^{1/(4 theta - 2)})");
  if (!(c.t_grid.t_min > 0.0) || !std::isfinite(c.t_grid.t_max) ||
      !(c.t_grid.t_max >= c.t_grid.t_min))
    throw ConfigError("t_grid: need 0 < t_min <= t_max < inf");
  if (!(c.t_grid.points_per_decade > 0.0) || !std::isfinite(c.t_grid.points_per_decade))
    throw ConfigError("t_grid.points_per_decade: must be > 0");
  if (!(c.quadrature.tolerance > 0.0 && c.quadrature.tolerance < 1.0))
    throw ConfigError("quadrature.tolerance: must lie in (0, 1)");
  if (c.quadrature.points_per_panel < 2 || c.quadrature.points_per_panel > 128)
    throw ConfigError("quadrature.points_per_panel: must lie in [2, 128]");
  if (c.output_dir.empty()) throw ConfigError("output_dir: must not be empty");
  for (const auto* d : {&c.datum0, &c.datum1}) {
    const char* name = d == &c.datum0 ? "datum0" : "datum1";
    if (d->family == "gaussian") {
      if (!(d->a > 0.0) || !std::isfinite(d->a))
        throw ConfigError(std::string(name) + ".a: must be > 0");
      if (!std::isfinite(d->amplitude))
        throw ConfigError(std::string(name) + ".amplitude: must be finite");
    } else if (d->family != "zero") {
      throw ConfigError(std::string(name) + ".family: unknown family '" + d->family + "'");
    }
  }
  if (c.checks.empty()) throw ConfigError("checks: at least one check is required");
  std::set<std::string> seen;
  for (const auto& name : c.checks) {
    if (!is_registered(name)) throw ConfigError("checks: unknown check '" + name + "'");
    if (!seen.insert(name).second) throw ConfigError("checks: duplicate check '" + name + "'");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  reject_unknown(root, "config",
                 {"model", "datum0", "datum1", "beta", "ell", "delta0", "t_grid", "checks",
                  "output_dir", "quadrature"});
  ExperimentConfig c;
  if (!root.contains("model")) throw ConfigError("model: required");
  const auto& model = root.at("model");
  reject_unknown(model, "model", {"theta", "n"});
  if (!model.contains("theta") || !model.contains("n"))
    throw ConfigError("model: theta and n are required");
  c.model.theta = read_number(model, "model", "theta", c.model.theta);
  c.model.n = read_integer(model, "model", "n", c.model.n);
  if (root.contains("datum0")) c.datum0 = read_datum(root.at("datum0"), "datum0");
  if (root.contains("datum1")) c.datum1 = read_datum(root.at("datum1"), "datum1");
  c.beta = read_number(root, "", "beta", c.beta);
  c.ell = read_number(root, "", "ell", c.ell);
  c.delta0 = read_number(root, "", "delta0", c.delta0);
  if (root.contains("t_grid")) {
    const auto& g = root.at("t_grid");
    reject_unknown(g, "t_grid", {"t_min", "t_max", "points_per_decade"});
    c.t_grid.t_min = read_number(g, "t_grid", "t_min", c.t_grid.t_min);
    c.t_grid.t_max = read_number(g, "t_grid", "t_max", c.t_grid.t_max);
    c.t_grid.points_per_decade =
        read_number(g, "t_grid", "points_per_decade", c.t_grid.points_per_decade);
  }
  if (!root.contains("checks")) throw ConfigError("checks: required");
  const auto& checks = root.at("checks");
  if (!checks.is_array()) throw ConfigError("checks: expected an array of names");
  for (const auto& item : checks) {
    if (!item.is_string()) throw ConfigError("checks: expected an array of names");
    c.checks.push_back(item.get<std::string>());
  }
  c.output_dir = read_string(root, "", "output_dir", c.output_dir);
  if (root.contains("quadrature")) {
    const auto& q = root.at("quadrature");
    reject_unknown(q, "quadrature", {"tolerance", "points_per_panel"});
    c.quadrature.tolerance = read_number(q, "quadrature", "tolerance", c.quadrature.tolerance);
    c.quadrature.points_per_panel =
        read_integer(q, "quadrature", "points_per_panel", c.quadrature.points_per_panel);
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_json(const ExperimentConfig& c) {
  json root;
  root["model"] = {{"theta", c.model.theta}, {"n", c.model.n}};
  root["datum0"] = datum_json(c.datum0);
  root["datum1"] = datum_json(c.datum1);
  root["beta"] = c.beta;
  root["ell"] = c.ell;
  root["delta0"] = c.delta0;
  root["t_grid"] = {{"t_min", c.t_grid.t_min},
                    {"t_max", c.t_grid.t_max},
                    {"points_per_decade", c.t_grid.points_per_decade}};
  root["checks"] = c.checks;
  root["output_dir"] = c.output_dir;
  root["quadrature"] = {{"tolerance", c.quadrature.tolerance},
                        {"points_per_panel", c.quadrature.points_per_panel}};
  return root.dump(2) + "\n";
}

data::InitialDatum make_datum(const DatumConfig& datum, int n) {
  if (datum.family == "gaussian") return data::make_gaussian(datum.a, datum.amplitude, n);
  return data::make_zero(n);
}

}  // namespace dampwave::cli

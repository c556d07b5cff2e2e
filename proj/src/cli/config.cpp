#include "gqsl/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gqsl::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys = {"schema_version", "description", "quantity", "channel", "initial_state",
                                             "duration", "metrics", "grid", "quadrature", "output"};
const std::set<std::string> kAxisNames = {"r0", "theta0", "phi0", "omega0", "gamma", "beta", "t", "gamma_t", "phi"};
const std::set<std::string> kMetricNames = {"qf", "wy", "min"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

double number_or_angle(const json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>());
  throw ConfigError(what + ": expected a number or an angle string");
}

double require_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  return number_or_angle(obj.at(key), where + "." + key);
}

cplx parse_entry(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("matrix entries must be numbers or [re, im] pairs");
}

CMatrixd parse_matrix(const json& v) {
  if (!v.is_array() || v.empty()) throw ConfigError("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(v.size());
  CMatrixd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ConfigError("matrix must be square");
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = parse_entry(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

json matrix_to_json(const CMatrixd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

bool is_noise(const std::string& kind) {
  return kind == "parallel_dephasing" || kind == "transversal_dephasing" || kind == "amplitude_damping";
}

void validate(const ExperimentConfig& c) {
  std::set<std::string> seen;
  for (const auto& a : c.grid) {
    if (!kAxisNames.count(a.name)) throw ConfigError("unknown grid axis '" + a.name + "'");
    if (!seen.insert(a.name).second) throw ConfigError("grid axis '" + a.name + "' listed twice");
    if (!std::isfinite(a.min) || !std::isfinite(a.max) || a.min > a.max) {
      throw ConfigError("grid axis '" + a.name + "': need finite min <= max");
    }
    if (a.steps < 1 || (a.steps == 1 && a.min != a.max)) {
      throw ConfigError("grid axis '" + a.name + "': steps must be >= 2 for a swept axis");
    }
  }
  if (seen.count("t") && seen.count("gamma_t")) throw ConfigError("grid cannot sweep both t and gamma_t");
  for (const auto& m : c.metrics) {
    if (!kMetricNames.count(m)) throw ConfigError("unknown metric '" + m + "' (expected qf, wy or min)");
  }
  if (c.metrics.empty()) throw ConfigError("at least one metric is required");

  if (c.quantity == Quantity::UnitaryGap) {
    for (const auto& a : c.grid) {
      if (a.name != "r0" && a.name != "phi") throw ConfigError("unitary_gap grids use the axes r0 and phi only");
    }
    return;
  }
  const std::string& kind = c.channel.kind;
  if (kind != "unitary" && !is_noise(kind)) throw ConfigError("unknown channel kind '" + kind + "'");
  if (kind == "unitary") {
    if (!c.channel.hamiltonian) throw ConfigError("unitary channel needs a hamiltonian");
    for (const char* ax : {"omega0", "gamma", "beta", "gamma_t"}) {
      if (seen.count(ax)) throw ConfigError(std::string("axis '") + ax + "' needs a noise channel");
    }
    if (c.gamma_tau) throw ConfigError("gamma_tau duration needs a noise channel");
  } else {
    if (!(c.channel.gamma > 0.0)) throw ConfigError("channel.gamma must be positive");
    if (kind == "amplitude_damping" && (seen.count("omega0") || seen.count("beta"))) {
      throw ConfigError("amplitude damping has no frequency axis");
    }
    if (kind == "amplitude_damping" && c.channel.omega0 != 0.0) {
      throw ConfigError("amplitude damping takes no omega0");
    }
  }
  if (seen.count("phi")) throw ConfigError("axis 'phi' belongs to the unitary_gap quantity");
  if (!c.initial_state.bloch && !c.initial_state.matrix) throw ConfigError("initial_state is required");
  if (c.initial_state.bloch) {
    try {
      c.initial_state.bloch->validate();
    } catch (const Error& e) {
      throw ConfigError(std::string("initial_state.bloch: ") + e.what());
    }
  }
  if (c.initial_state.matrix) {
    for (const char* ax : {"r0", "theta0", "phi0"}) {
      if (seen.count(ax)) throw ConfigError(std::string("axis '") + ax + "' needs a Bloch initial state");
    }
  }
  if (!c.tau && !c.gamma_tau && !seen.count("t") && !seen.count("gamma_t")) {
    throw ConfigError("duration (tau or gamma_tau) is required");
  }
}

}  // namespace

double Axis::value(int i) const {
  if (steps <= 1) return min;
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

double parse_angle(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ConfigError("empty angle");
  auto to_number = [&text](const std::string& part) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse angle '" + text + "'");
    }
    if (used != part.size()) throw ConfigError("cannot parse angle '" + text + "'");
    return v;
  };
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return to_number(s);
  std::string head = s.substr(0, pos);
  std::string tail = s.substr(pos + 2);
  double coef = 1.0;
  if (head == "-") {
    coef = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') throw ConfigError("cannot parse angle '" + text + "'");
    coef = to_number(head.substr(0, head.size() - 1));
  }
  double den = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError("cannot parse angle '" + text + "'");
    den = to_number(tail.substr(1));
    if (den == 0.0) throw ConfigError("angle '" + text + "' divides by zero");
  }
  return coef * std::numbers::pi / den;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(root, kTopLevelKeys, "config");
  if (!root.contains("schema_version") || !root["schema_version"].is_number_integer() ||
      root["schema_version"].get<int>() != kSchemaVersion) {
    throw ConfigError("schema_version must be " + std::to_string(kSchemaVersion));
  }

  ExperimentConfig c;
  try {
    if (root.contains("description")) c.description = root["description"].get<std::string>();
    if (root.contains("quantity")) {
      const auto q = root["quantity"].get<std::string>();
      if (q == "qsl") {
        c.quantity = Quantity::QSL;
      } else if (q == "unitary_gap") {
        c.quantity = Quantity::UnitaryGap;
      } else {
        throw ConfigError("quantity must be 'qsl' or 'unitary_gap'");
      }
    }
    if (root.contains("channel")) {
      const json& ch = root["channel"];
      reject_unknown(ch, {"kind", "omega0", "gamma", "hamiltonian"}, "channel");
      if (!ch.contains("kind")) throw ConfigError("channel.kind is required");
      c.channel.kind = ch["kind"].get<std::string>();
      if (ch.contains("omega0")) c.channel.omega0 = number_or_angle(ch["omega0"], "channel.omega0");
      if (ch.contains("gamma")) c.channel.gamma = number_or_angle(ch["gamma"], "channel.gamma");
      if (ch.contains("hamiltonian")) {
        const json& h = ch["hamiltonian"];
        reject_unknown(h, {"pauli", "matrix"}, "channel.hamiltonian");
        if (h.contains("pauli")) {
          const json& v = h["pauli"];
          if (!v.is_array() || v.size() != 3) throw ConfigError("hamiltonian.pauli needs three coefficients");
          c.channel.hamiltonian = CMatrixd(number_or_angle(v[0], "pauli") * pauli::x() +
                                           number_or_angle(v[1], "pauli") * pauli::y() +
                                           number_or_angle(v[2], "pauli") * pauli::z());
        } else if (h.contains("matrix")) {
          c.channel.hamiltonian = parse_matrix(h["matrix"]);
        } else {
          throw ConfigError("hamiltonian needs 'pauli' or 'matrix'");
        }
      }
    } else if (c.quantity == Quantity::QSL) {
      throw ConfigError("channel is required");
    }
    if (root.contains("initial_state")) {
      const json& s = root["initial_state"];
      reject_unknown(s, {"bloch", "matrix"}, "initial_state");
      if (s.contains("bloch")) {
        const json& b = s["bloch"];
        reject_unknown(b, {"r", "theta", "phi"}, "initial_state.bloch");
        Bloch bv;
        bv.r = require_number(b, "r", "initial_state.bloch");
        bv.theta = b.contains("theta") ? number_or_angle(b["theta"], "theta") : 0.0;
        bv.phi = b.contains("phi") ? number_or_angle(b["phi"], "phi") : 0.0;
        c.initial_state.bloch = bv;
      } else if (s.contains("matrix")) {
        c.initial_state.matrix = parse_matrix(s["matrix"]);
      } else {
        throw ConfigError("initial_state needs 'bloch' or 'matrix'");
      }
    }
    if (root.contains("duration")) {
      const json& d = root["duration"];
      reject_unknown(d, {"tau", "gamma_tau"}, "duration");
      if (d.contains("tau") == d.contains("gamma_tau")) throw ConfigError("duration needs exactly one of tau, gamma_tau");
      if (d.contains("tau")) c.tau = number_or_angle(d["tau"], "duration.tau");
      if (d.contains("gamma_tau")) c.gamma_tau = number_or_angle(d["gamma_tau"], "duration.gamma_tau");
      const double v = c.tau ? *c.tau : *c.gamma_tau;
      if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("duration must be nonnegative");
    }
    if (root.contains("metrics")) c.metrics = root["metrics"].get<std::vector<std::string>>();
    if (root.contains("grid")) {
      for (const json& a : root["grid"]) {
        reject_unknown(a, {"name", "min", "max", "steps"}, "grid axis");
        Axis ax;
        ax.name = a.at("name").get<std::string>();
        ax.min = require_number(a, "min", "grid." + ax.name);
        ax.max = require_number(a, "max", "grid." + ax.name);
        ax.steps = a.at("steps").get<int>();
        c.grid.push_back(ax);
      }
    }
    if (root.contains("quadrature")) {
      const json& q = root["quadrature"];
      reject_unknown(q, {"panels", "order", "refine", "rel_target", "max_panels", "graded_start"}, "quadrature");
      if (q.contains("panels")) c.quadrature.panels = q["panels"].get<int>();
      if (q.contains("order")) c.quadrature.order = q["order"].get<int>();
      if (q.contains("refine")) c.quadrature.refine = q["refine"].get<bool>();
      if (q.contains("rel_target")) c.quadrature.rel_target = q["rel_target"].get<double>();
      if (q.contains("max_panels")) c.quadrature.max_panels = q["max_panels"].get<int>();
      if (q.contains("graded_start")) c.quadrature.graded_start = q["graded_start"].get<bool>();
      try {
        c.quadrature.validate();
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    }
    if (root.contains("output")) {
      const json& o = root["output"];
      reject_unknown(o, {"path", "format"}, "output");
      if (o.contains("format") && o["format"].get<std::string>() != "csv") throw ConfigError("output.format must be csv");
      if (o.contains("path")) c.output_path = o["path"].get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const ExperimentConfig& c) {
  json root;
  root["schema_version"] = kSchemaVersion;
  if (!c.description.empty()) root["description"] = c.description;
  root["quantity"] = c.quantity == Quantity::QSL ? "qsl" : "unitary_gap";
  if (!c.channel.kind.empty()) {
    json ch;
    ch["kind"] = c.channel.kind;
    if (is_noise(c.channel.kind)) {
      ch["gamma"] = c.channel.gamma;
      if (c.channel.kind != "amplitude_damping") ch["omega0"] = c.channel.omega0;
    }
    if (c.channel.hamiltonian) ch["hamiltonian"] = {{"matrix", matrix_to_json(*c.channel.hamiltonian)}};
    root["channel"] = ch;
  }
  if (c.initial_state.bloch) {
    const Bloch& b = *c.initial_state.bloch;
    root["initial_state"] = {{"bloch", {{"r", b.r}, {"theta", b.theta}, {"phi", b.phi}}}};
  } else if (c.initial_state.matrix) {
    root["initial_state"] = {{"matrix", matrix_to_json(*c.initial_state.matrix)}};
  }
  if (c.tau) root["duration"] = {{"tau", *c.tau}};
  if (c.gamma_tau) root["duration"] = {{"gamma_tau", *c.gamma_tau}};
  root["metrics"] = c.metrics;
  json grid = json::array();
  for (const auto& a : c.grid) grid.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}});
  root["grid"] = grid;
  const QuadratureConfig& q = c.quadrature;
  root["quadrature"] = {{"panels", q.panels},         {"order", q.order},           {"refine", q.refine},
                        {"rel_target", q.rel_target}, {"max_panels", q.max_panels}, {"graded_start", q.graded_start}};
  json out = {{"format", "csv"}};
  if (!c.output_path.empty()) out["path"] = c.output_path;
  root["output"] = out;
  return root.dump(2);
}

Point base_point(const ExperimentConfig& c) {
  Point p;
  if (c.initial_state.bloch) {
    p.r0 = c.initial_state.bloch->r;
    p.theta0 = c.initial_state.bloch->theta;
    p.phi0 = c.initial_state.bloch->phi;
  }
  p.omega0 = c.channel.omega0;
  p.gamma = c.channel.gamma;
  if (c.tau) p.tau = *c.tau;
  if (c.gamma_tau) p.tau = *c.gamma_tau / p.gamma;
  return p;
}

void apply_axis(const ExperimentConfig& c, Point& p, const std::string& axis, double v) {
  if (axis == "r0") {
    p.r0 = v;
  } else if (axis == "theta0") {
    p.theta0 = v;
  } else if (axis == "phi0") {
    p.phi0 = v;
  } else if (axis == "omega0") {
    p.omega0 = v;
  } else if (axis == "gamma") {
    p.gamma = v;
    if (c.gamma_tau) p.tau = *c.gamma_tau / v;
  } else if (axis == "beta") {
    p.omega0 = v * p.gamma;
  } else if (axis == "t") {
    p.tau = v;
  } else if (axis == "gamma_t") {
    p.tau = v / p.gamma;
  } else if (axis == "phi") {
    p.phi = v;
  } else {
    throw ConfigError("unknown grid axis '" + axis + "'");
  }
}

Point point_at(const ExperimentConfig& c, const std::vector<std::pair<std::string, double>>& values) {
  Point p = base_point(c);
  for (const auto& [name, v] : values) {
    if (name == "gamma") apply_axis(c, p, name, v);
  }
  for (const auto& [name, v] : values) {
    if (name != "gamma") apply_axis(c, p, name, v);
  }
  return p;
}

ChannelModel make_channel(const ExperimentConfig& c, const Point& p) {
  try {
    const std::string& k = c.channel.kind;
    if (k == "unitary") return ChannelModel::constant_hamiltonian(*c.channel.hamiltonian);
    if (k == "parallel_dephasing") return ChannelModel::parallel_dephasing(p.omega0, p.gamma);
    if (k == "transversal_dephasing") return ChannelModel::transversal_dephasing(p.omega0, p.gamma);
    if (k == "amplitude_damping") return ChannelModel::amplitude_damping(p.gamma);
  } catch (const Error& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
  throw ConfigError("unknown channel kind '" + c.channel.kind + "'");
}

State make_state(const ExperimentConfig& c, const Point& p) {
  try {
    if (c.initial_state.matrix) return State(*c.initial_state.matrix);
    return from_bloch(Bloch{p.r0, p.theta0, p.phi0});
  } catch (const Error& e) {
    throw ConfigError(std::string("initial_state: ") + e.what());
  }
}

std::vector<MC> make_metrics(const std::vector<std::string>& names) {
  std::vector<MC> out;
  for (const auto& n : names) {
    if (n == "qf") {
      out.push_back(MC::quantum_fisher());
    } else if (n == "wy") {
      out.push_back(MC::wigner_yanase());
    } else if (n == "min") {
      out.push_back(MC::minimal());
    } else {
      throw ConfigError("unknown metric '" + n + "'");
    }
  }
  return out;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace gqsl::cli

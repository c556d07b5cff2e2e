#include "gqsl/cli/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "gqsl/oracles.hpp"

namespace gqsl::cli {

namespace {

bool is_time_axis(const std::string& name) { return name == "t" || name == "gamma_t"; }

/// Runs `fn`, turning library failures into a ComputationError for `stage`.
template <class Fn>
auto staged(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const ComputationError&) {
    throw;
  } catch (const Error& e) {
    throw ComputationError(stage, e.what());
  }
}

std::string prefixed_flags(const std::string& metric, const std::string& flags) {
  std::string out;
  std::stringstream ss(flags);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!out.empty()) out += ';';
    out += metric + '.' + item;
  }
  return out;
}

void append_flags(std::string& into, const std::string& more) {
  if (more.empty()) return;
  if (!into.empty()) into += ';';
  into += more;
}

bool wants_ddelta(const std::vector<std::string>& metrics) {
  return std::count(metrics.begin(), metrics.end(), "qf") && std::count(metrics.begin(), metrics.end(), "wy");
}

std::vector<std::string> metric_columns(const std::vector<std::string>& metrics) {
  std::vector<std::string> cols;
  for (const auto& m : metrics) {
    for (const char* stem : {"ell_", "L_", "delta_", "tau_min_"}) cols.push_back(stem + m);
  }
  if (wants_ddelta(metrics)) cols.emplace_back("ddelta");
  return cols;
}

struct Cell {
  std::vector<std::optional<double>> values;
  std::string flags;
  std::vector<QSLReport> reports;
};

/// Metric columns for given path lengths and final state.
Cell assemble(const std::vector<std::string>& names, const std::vector<MC>& fs, const std::vector<double>& ells,
              const State& rho0, const State& rho_tau, double tau) {
  Cell cell;
  std::optional<double> dq, dw;
  for (std::size_t m = 0; m < fs.size(); ++m) {
    std::optional<double> L;
    if (has_geodesic(fs[m])) {
      L = staged("geodesic length", [&] { return geodesic_length(rho0, rho_tau, fs[m]); });
    }
    const QSLReport r = make_report(fs[m], ells[m], L, tau, false);
    cell.values.insert(cell.values.end(), {r.path_length, r.geodesic_length, r.tightness, r.bound_time});
    append_flags(cell.flags, prefixed_flags(names[m], r.flags()));
    if (names[m] == "qf") dq = r.tightness;
    if (names[m] == "wy") dw = r.tightness;
    cell.reports.push_back(r);
  }
  if (wants_ddelta(names)) {
    cell.values.push_back(dq && dw ? std::optional<double>(*dq - *dw) : std::nullopt);
  }
  return cell;
}

Cell qsl_cell(const ExperimentConfig& c, const Point& p, const std::vector<MC>& fs) {
  const ChannelModel ch = make_channel(c, p);
  const State rho0 = make_state(c, p);
  if (!(p.tau >= 0.0) || !std::isfinite(p.tau)) throw ConfigError("evolution time must be nonnegative and finite");
  const std::vector<double> ells = staged("path length", [&] { return path_lengths(ch, rho0, p.tau, fs, c.quadrature); });
  const State rho_tau = staged("evolve", [&] { return evolve(ch, rho0, p.tau); });
  return assemble(c.metrics, fs, ells, rho0, rho_tau, p.tau);
}

std::string describe_point(const std::vector<std::pair<std::string, double>>& values) {
  std::string s;
  for (const auto& [name, v] : values) {
    if (!s.empty()) s += ", ";
    s += name + "=" + format_number(v);
  }
  return s;
}

std::string optional_text(const std::optional<double>& v) { return v ? format_number(*v) : std::string("n/a"); }

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      if (i) out += ',';
      if (rows[r][i]) out += format_number(*rows[r][i]);
    }
    out += ',';
    out += flags[r];
    out += '\n';
  }
  return out;
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end() || it + 1 == header.end()) throw ValidationError("no numeric column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::optional<double> Table::at(std::size_t row, const std::string& name) const { return rows.at(row).at(column(name)); }

int resolve_threads(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw ConfigError("--threads must be at least 1");
    return *requested;
  }
  if (const char* env = std::getenv("QSL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError("QSL_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto count = static_cast<std::size_t>(std::max(1, threads));
  if (count == 1 || n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < std::min(count, n); ++k) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

BoundResult run_bound(const ExperimentConfig& c) {
  if (c.quantity != Quantity::QSL) throw ConfigError("bound needs the qsl quantity");
  if (!c.grid.empty()) throw ConfigError("bound takes a single-point config (no grid)");
  const Point p = base_point(c);
  const std::vector<MC> fs = make_metrics(c.metrics);
  const Cell cell = qsl_cell(c, p, fs);

  BoundResult out;
  out.table.header = {"tau"};
  for (const auto& col : metric_columns(c.metrics)) out.table.header.push_back(col);
  out.table.header.emplace_back("flags");
  std::vector<std::optional<double>> row{p.tau};
  row.insert(row.end(), cell.values.begin(), cell.values.end());
  out.table.rows.push_back(row);
  out.table.flags.push_back(cell.flags);

  const ChannelModel ch = make_channel(c, p);
  std::ostringstream text;
  text << "channel: " << ch.describe() << '\n';
  text << "evolution time: " << format_number(p.tau) << '\n';
  std::optional<double> best;
  std::string best_name;
  for (const QSLReport& r : cell.reports) {
    text << "[" << r.metric_name << "] path length " << format_number(r.path_length) << ", geodesic length "
         << optional_text(r.geodesic_length) << ", tightness " << optional_text(r.tightness) << ", bound time "
         << optional_text(r.bound_time);
    if (!r.flags().empty()) text << " (" << r.flags() << ")";
    text << '\n';
    if (r.tightness && (!best || *r.tightness < *best - kTightnessTie ||
                        (std::abs(*r.tightness - *best) <= kTightnessTie && r.metric == MetricKind::QuantumFisher))) {
      best = r.tightness;
      best_name = r.metric_name;
    }
  }
  if (best) text << "tightest: " << best_name << '\n';

  if (ch.kind() == ChannelKind::Unitary) {
    const State rho0 = make_state(c, p);
    const UnitaryBound mt = staged("mt bound", [&] { return mt_bound(ch, rho0, p.tau, c.quadrature); });
    const UnitaryBound wy = staged("wy bound", [&] { return wy_bound(ch, rho0, p.tau, c.quadrature); });
    text << "variance bound: " << format_number(mt.time) << (mt.stationary ? " (stationary)" : "") << '\n';
    text << "skew information bound: " << format_number(wy.time) << (wy.stationary ? " (stationary)" : "") << '\n';
    if (wy.cascade) text << "cascade bound: " << format_number(*wy.cascade) << '\n';
  }
  out.text = text.str();
  return out;
}

Table run_sweep(const ExperimentConfig& c) {
  if (c.quantity != Quantity::QSL) throw ConfigError("sweep needs the qsl quantity");
  if (c.grid.size() != 1 || !is_time_axis(c.grid.front().name)) {
    throw ConfigError("sweep needs exactly one grid axis, t or gamma_t");
  }
  const Axis& axis = c.grid.front();
  const std::vector<MC> fs = make_metrics(c.metrics);
  const Point base = base_point(c);
  const ChannelModel ch = make_channel(c, base);
  const State rho0 = make_state(c, base);

  std::vector<double> values, times;
  for (int i = 0; i < axis.steps; ++i) {
    values.push_back(axis.value(i));
    Point p = base;
    apply_axis(c, p, axis.name, values.back());
    if (!(p.tau >= 0.0) || !std::isfinite(p.tau)) throw ConfigError("sweep times must be nonnegative");
    times.push_back(p.tau);
  }
  const auto ells =
      staged("path length", [&] { return cumulative_path_lengths(ch, rho0, times, fs, c.quadrature); });

  Table t;
  t.header = {axis.name};
  for (const auto& col : metric_columns(c.metrics)) t.header.push_back(col);
  t.header.emplace_back("flags");
  for (std::size_t k = 0; k < times.size(); ++k) {
    const State rho_t = staged("evolve", [&] { return evolve(ch, rho0, times[k]); });
    const Cell cell = assemble(c.metrics, fs, ells[k], rho0, rho_t, times[k]);
    std::vector<std::optional<double>> row{values[k]};
    row.insert(row.end(), cell.values.begin(), cell.values.end());
    t.rows.push_back(std::move(row));
    t.flags.push_back(cell.flags);
  }
  return t;
}

Table run_contour(const ExperimentConfig& c, int threads) {
  if (c.grid.size() != 2) throw ConfigError("contour needs exactly two grid axes");
  const Axis& a0 = c.grid[0];
  const Axis& a1 = c.grid[1];
  const auto n0 = static_cast<std::size_t>(a0.steps);
  const auto n1 = static_cast<std::size_t>(a1.steps);
  const std::vector<MC> fs = make_metrics(c.metrics);
  const bool gap = c.quantity == Quantity::UnitaryGap;

  Table t;
  t.header = {a0.name, a1.name};
  if (gap) {
    t.header.emplace_back("gap");
  } else {
    for (const auto& col : metric_columns(c.metrics)) t.header.push_back(col);
  }
  t.header.emplace_back("flags");
  t.rows.resize(n0 * n1);
  t.flags.resize(n0 * n1);

  parallel_for(n0 * n1, threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / n1);
    const int j = static_cast<int>(idx % n1);
    const std::vector<std::pair<std::string, double>> values{{a0.name, a0.value(i)}, {a1.name, a1.value(j)}};
    std::vector<std::optional<double>> row{values[0].second, values[1].second};
    try {
      const Point p = point_at(c, values);
      if (gap) {
        row.emplace_back(staged("tightness gap", [&] { return unitary_qubit_tightness_gap(p.r0, p.phi); }));
      } else {
        const Cell cell = qsl_cell(c, p, fs);
        row.insert(row.end(), cell.values.begin(), cell.values.end());
        t.flags[idx] = cell.flags;
      }
    } catch (const ComputationError& e) {
      throw ComputationError(e.stage(), std::string(e.what()) + " at " + describe_point(values));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(e.what()) + " at " + describe_point(values));
    }
    t.rows[idx] = std::move(row);
  });
  return t;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace gqsl::cli

#include "gqsl/cli/app.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include <CLI11.hpp>

#include "gqsl/cli/experiments.hpp"
#include "gqsl/cli/verify.hpp"

namespace gqsl::cli {

namespace {

struct Args {
  std::string config;
  std::string out;
  std::string metrics;
  std::optional<int> threads;
  std::string level = "quick";
  std::vector<std::string> tolerances;
  std::vector<int> criteria;
};

ExperimentConfig load_with_overrides(const Args& a) {
  if (a.config.empty()) throw ConfigError("--config is required");
  ExperimentConfig c = load_config(a.config);
  if (!a.metrics.empty()) {
    c.metrics = split_list(a.metrics);
    // re-run validation on the edited config
    c = parse_config(to_json(c));
  }
  if (!a.out.empty()) c.output_path = a.out;
  return c;
}

void emit_table(const Table& t, const ExperimentConfig& c, std::ostream& out) {
  if (c.output_path.empty()) {
    out << t.to_csv();
  } else {
    write_text_file(c.output_path, t.to_csv());
  }
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--tolerance expects key=value, got '" + item + "'");
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--tolerance value is not a number in '" + item + "'");
    }
  }
  return out;
}

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

int run_verify_command(const Args& a, std::ostream& out) {
  VerifyOptions o;
  if (a.level == "full") {
    o.level = VerifyLevel::Full;
  } else if (a.level != "quick") {
    throw ConfigError("--level must be quick or full");
  }
  o.tolerance_overrides = parse_tolerances(a.tolerances);
  o.only.insert(a.criteria.begin(), a.criteria.end());
  o.threads = resolve_threads(a.threads);
  const auto results = run_verify(o, [&out](const CriterionResult& r) {
    out << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << ", "
        << seconds_text(r.seconds) << " s): " << r.detail << '\n'
        << std::flush;
  });
  const std::string summary = verify_summary_json(results, o.level);
  if (a.out.empty()) {
    out << summary << '\n';
  } else {
    write_text_file(a.out, summary + "\n");
  }
  const bool ok = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
  if (!ok) {
    out << "failed criteria:";
    for (const auto& r : results) {
      if (!r.passed) out << ' ' << r.id;
    }
    out << '\n';
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric speed limits for qubit dynamics", "qsl"};
  app.require_subcommand(1);
  Args a;
  auto add_common = [&a](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", a.config, "experiment config (JSON)");
    if (config_required) opt->required();
    sub->add_option("--out", a.out, "output file (CSV, or JSON summary for verify)");
    sub->add_option("--threads", a.threads, "worker threads (default: QSL_THREADS or hardware)");
  };
  auto* bound = app.add_subcommand("bound", "QSL report at a single point");
  auto* sweep = app.add_subcommand("sweep", "time sweep of path lengths and tightness");
  auto* contour = app.add_subcommand("contour", "two-axis grid of tightness values");
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  for (auto* sub : {bound, sweep, contour}) {
    add_common(sub, true);
    sub->add_option("--metrics", a.metrics, "comma separated subset of qf,wy,min");
  }
  add_common(verify, false);
  verify->add_option("--level", a.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--tolerance", a.tolerances, "override a tolerance, key=value (test hook)");
  verify->add_option("--criteria", a.criteria, "run only these criterion ids")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qsl: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (verify->parsed()) return run_verify_command(a, out);
    const ExperimentConfig c = load_with_overrides(a);
    if (bound->parsed()) {
      const BoundResult r = run_bound(c);
      out << r.text;
      if (!c.output_path.empty()) write_text_file(c.output_path, r.table.to_csv());
    } else if (sweep->parsed()) {
      emit_table(run_sweep(c), c, out);
    } else {
      emit_table(run_contour(c, resolve_threads(a.threads)), c, out);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "qsl: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ComputationError& e) {
    err << "qsl: computation error in stage '" << e.stage() << "': " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "qsl: computation error: " << e.what() << '\n';
    return kExitComputation;
  }
}

}  // namespace gqsl::cli

#pragma once

// Experiment runners behind the qsl command: single-point reports, time
// sweeps and two-axis contours, all producing CSV tables.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gqsl/cli/config.hpp"

namespace gqsl::cli {

/// Failure inside a computation (exit code 3); `stage` names the step.
class ComputationError : public Error {
 public:
  ComputationError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct Table {
  std::vector<std::string> header;  // last column is always "flags"
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::string> flags;

  std::string to_csv() const;
  std::size_t column(const std::string& name) const;
  std::optional<double> at(std::size_t row, const std::string& name) const;
};

/// Shortest round-trip decimal form ("%.17g").
std::string format_number(double v);

/// Explicit request, else QSL_THREADS, else the hardware concurrency.
int resolve_threads(std::optional<int> requested);

/// Runs fn(0..n-1) on `threads` workers pulling indices from a shared
/// counter. The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

struct BoundResult {
  Table table;
  std::string text;
};

BoundResult run_bound(const ExperimentConfig& c);
Table run_sweep(const ExperimentConfig& c);
Table run_contour(const ExperimentConfig& c, int threads);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace gqsl::cli

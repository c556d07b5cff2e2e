#pragma once

// Versioned JSON experiment configuration.

#include <optional>
#include <string>
#include <vector>

#include "gqsl/engine.hpp"

namespace gqsl::cli {

inline constexpr int kSchemaVersion = 1;

/// Raised for malformed or inconsistent configuration input (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ChannelSpec {
  std::string kind;             // unitary | parallel_dephasing | transversal_dephasing | amplitude_damping
  double omega0{0};
  double gamma{1};
  std::optional<CMatrixd> hamiltonian;  // unitary only
};

struct StateSpec {
  std::optional<Bloch> bloch;
  std::optional<CMatrixd> matrix;
};

struct Axis {
  std::string name;
  double min{0};
  double max{0};
  int steps{2};

  double value(int i) const;
};

enum class Quantity { QSL, UnitaryGap };

struct ExperimentConfig {
  std::string description;
  Quantity quantity{Quantity::QSL};
  ChannelSpec channel;
  StateSpec initial_state;
  std::optional<double> tau;
  std::optional<double> gamma_tau;
  std::vector<std::string> metrics{"qf", "wy"};
  std::vector<Axis> grid;
  QuadratureConfig quadrature;
  std::string output_path;
};

/// Parses "pi/2", "3*pi/4", "-pi", "0.25" and plain numbers.
double parse_angle(const std::string& text);

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
/// Canonical JSON form; parse_config(to_json(c)) reproduces c.
std::string to_json(const ExperimentConfig& c);

/// Parameters of one evaluation point after grid axes are applied.
struct Point {
  double r0{0}, theta0{0}, phi0{0};
  double omega0{0}, gamma{1};
  double tau{0};
  double phi{0};  // relative rotation angle (unitary gap)
};

Point base_point(const ExperimentConfig& c);
/// Applies an axis value; rate-dependent axes (beta, gamma_t) use the
/// current gamma, so gamma is applied first by `point_at`.
void apply_axis(const ExperimentConfig& c, Point& p, const std::string& axis, double value);
Point point_at(const ExperimentConfig& c, const std::vector<std::pair<std::string, double>>& values);

ChannelModel make_channel(const ExperimentConfig& c, const Point& p);
State make_state(const ExperimentConfig& c, const Point& p);
std::vector<MC> make_metrics(const std::vector<std::string>& names);
std::vector<std::string> split_list(const std::string& csv);

}  // namespace gqsl::cli

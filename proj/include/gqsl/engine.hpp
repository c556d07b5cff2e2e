#pragma once

// Path lengths by composite Gauss-Legendre quadrature, geodesic lengths,
// tightness indicators, metric selection and the unitary-case bounds.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gqsl/channels.hpp"

namespace gqsl {

struct QuadratureConfig {
  int panels = 256;
  int order = 8;           // Gauss-Legendre nodes per panel, 2..16
  bool refine = true;      // double panels until two estimates agree
  double rel_target = 1e-8;
  int max_panels = 1 << 14;
  /// Map the first interval as t = a + (b - a) s^2, which removes the
  /// t^{-1/2} speed singularity of trajectories leaving a pure state.
  bool graded_start = true;

  void validate() const;
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// Gauss-Legendre rule of order n (1 <= n <= 64), computed once and cached.
const GaussRule& gauss_legendre(int n);

using ScalarIntegrand = std::function<double(double)>;
/// Writes `width` integrand values for argument t into `out`.
using VectorIntegrand = std::function<void(double t, double* out)>;

double integrate(const ScalarIntegrand& f, double a, double b, const QuadratureConfig& q);
std::vector<double> integrate(const VectorIntegrand& f, int width, double a, double b, const QuadratureConfig& q);

/// Speed sqrt(g^f(t)) of the trajectory for each metric at time t.
std::vector<double> speeds(const ChannelModel& ch, const State& rho0, double t, const std::vector<MC>& fs);

/// Path lengths over [0, tau] for several metrics from shared trajectory samples.
std::vector<double> path_lengths(const ChannelModel& ch, const State& rho0, double tau, const std::vector<MC>& fs,
                                 const QuadratureConfig& q = {});

double path_length(const ChannelModel& ch, const State& rho0, double tau, const MC& f,
                   const QuadratureConfig& q = {});

/// Cumulative lengths at each of the ascending `times`; result[k][m] is the
/// length up to times[k] for metric m.
std::vector<std::vector<double>> cumulative_path_lengths(const ChannelModel& ch, const State& rho0,
                                                         const std::vector<double>& times, const std::vector<MC>& fs,
                                                         const QuadratureConfig& q = {});

/// Bures angle (QF) or Hellinger angle (WY); other metrics raise GeodesicUnknownError.
double geodesic_length(const State& rho, const State& sigma, const MC& f);

bool has_geodesic(const MC& f) noexcept;

struct QSLReport {
  MetricKind metric{MetricKind::QuantumFisher};
  std::string metric_name;
  double path_length{0};
  std::optional<double> geodesic_length;
  std::optional<double> tightness;
  std::optional<double> bound_time;  // tau * L / ell
  double evolution_time{0};
  bool degenerate{false};            // L below 1e-12
  bool degenerate_endpoint{false};   // L below 1e-12 while ell > 0; tightness left empty
  bool saturated{false};             // tightness <= 1e-6

  std::string flags() const;
};

/// Threshold below which a geodesic length is treated as zero.
inline constexpr double kDegenerateGeodesic = 1e-12;
/// Tightness ties within this margin are resolved in favour of QF.
inline constexpr double kTightnessTie = 1e-12;

/// Assembles a report from computed lengths. With `strict`, a vanishing
/// geodesic under a nonzero path raises DegenerateEndpointError; otherwise
/// the report is flagged and the tightness left empty.
QSLReport make_report(const MC& f, double ell, std::optional<double> geodesic, double tau, bool strict);

/// Reports for several metrics from shared samples; metrics without a known
/// geodesic get path lengths only.
std::vector<QSLReport> qsl_reports(const ChannelModel& ch, const State& rho0, double tau, const std::vector<MC>& fs,
                                   const QuadratureConfig& q = {}, bool strict = true);

QSLReport tightness(const ChannelModel& ch, const State& rho0, double tau, const MC& f,
                    const QuadratureConfig& q = {});

struct BestMetric {
  MetricKind winner{MetricKind::QuantumFisher};
  std::string winner_name;
  std::vector<QSLReport> reports;
};

BestMetric best_metric(const ChannelModel& ch, const State& rho0, double tau, const std::vector<MC>& candidates,
                       const QuadratureConfig& q = {});

double variance(const State& rho, const CMatrixd& h);
/// I(rho, H) = -(1/2) Tr([sqrt(rho), H]^2).
double skew_information(const State& rho, const CMatrixd& h);
/// (1/2) Tr(rho {A - <A>, B - <B>}).
double symmetrized_covariance(const State& rho, const CMatrixd& a, const CMatrixd& b);

struct UnitaryBound {
  double time{0};               // the lower bound on tau
  double geodesic_length{0};
  double mean_speed{0};         // time average of sqrt(variance) or sqrt(skew information)
  bool stationary{false};       // vanishing mean speed; time reported as 0
  std::optional<double> cascade;  // L^WY / (sqrt(2) mean sqrt(variance)), wy_bound only
  bool endpoints_commute{false};
};

UnitaryBound mt_bound(const ChannelModel& ch, const State& rho0, double tau, const QuadratureConfig& q = {});
UnitaryBound wy_bound(const ChannelModel& ch, const State& rho0, double tau, const QuadratureConfig& q = {});

}  // namespace gqsl

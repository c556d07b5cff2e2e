#include "gqsl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace gqsl {

namespace {

GaussRule build_rule(int n) {
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return r;
}

/// Fixed composite rule; width integrands accumulated in a fixed order.
std::vector<double> composite(const VectorIntegrand& f, int width, double a, double b, int panels, int order,
                              bool graded) {
  const GaussRule& rule = gauss_legendre(order);
  const double len = b - a;
  std::vector<double> acc(static_cast<std::size_t>(width), 0.0);
  std::vector<double> buf(static_cast<std::size_t>(width), 0.0);
  for (int p = 0; p < panels; ++p) {
    std::vector<double> panel(static_cast<std::size_t>(width), 0.0);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double s = (p + 0.5 * (1.0 + rule.nodes[k])) / panels;
      double t;
      double jac;
      if (graded) {
        t = a + len * s * s;
        jac = 2.0 * len * s;
      } else {
        t = a + len * s;
        jac = len;
      }
      f(t, buf.data());
      for (int m = 0; m < width; ++m) panel[static_cast<std::size_t>(m)] += rule.weights[k] * jac * buf[static_cast<std::size_t>(m)];
    }
    for (int m = 0; m < width; ++m) acc[static_cast<std::size_t>(m)] += panel[static_cast<std::size_t>(m)] * 0.5 / panels;
  }
  return acc;
}

std::vector<double> integrate_segment(const VectorIntegrand& f, int width, double a, double b, int panels,
                                      const QuadratureConfig& q, bool graded) {
  if (b <= a) return std::vector<double>(static_cast<std::size_t>(width), 0.0);
  std::vector<double> prev = composite(f, width, a, b, panels, q.order, graded);
  if (!q.refine) return prev;
  constexpr double kAbsoluteFloor = 1e-14;
  for (int n = 2 * panels; n <= q.max_panels; n *= 2) {
    std::vector<double> next = composite(f, width, a, b, n, q.order, graded);
    bool converged = true;
    for (int m = 0; m < width; ++m) {
      const double d = std::abs(next[static_cast<std::size_t>(m)] - prev[static_cast<std::size_t>(m)]);
      if (d > q.rel_target * std::abs(next[static_cast<std::size_t>(m)]) + kAbsoluteFloor) converged = false;
    }
    if (converged) return next;
    if (2 * n > q.max_panels) {
      throw QuadratureError("quadrature did not reach the relative target before the panel cap", prev.front(),
                            next.front());
    }
    prev = std::move(next);
  }
  throw QuadratureError("quadrature did not reach the relative target before the panel cap", prev.front(),
                        prev.front());
}

VectorIntegrand speed_integrand(const ChannelModel& ch, const State& rho0, const std::vector<MC>& fs) {
  return [&ch, &rho0, &fs](double t, double* out) {
    const std::vector<double> v = speeds(ch, rho0, t, fs);
    std::copy(v.begin(), v.end(), out);
  };
}

void require_unitary(const ChannelModel& ch) {
  if (ch.kind() != ChannelKind::Unitary) throw DomainError("bound defined for unitary dynamics only");
}

}  // namespace

void QuadratureConfig::validate() const {
  if (panels < 1) throw ValidationError("quadrature: panels must be >= 1");
  if (order < 2 || order > 16) throw ValidationError("quadrature: order must lie in 2..16");
  if (!(rel_target > 0.0)) throw ValidationError("quadrature: relative target must be positive");
  if (max_panels < panels) throw ValidationError("quadrature: panel cap below the initial panel count");
}

const GaussRule& gauss_legendre(int n) {
  static const std::vector<GaussRule> rules = [] {
    std::vector<GaussRule> v;
    v.reserve(65);
    v.emplace_back();
    for (int k = 1; k <= 64; ++k) v.push_back(build_rule(k));
    return v;
  }();
  if (n < 1 || n > 64) throw DomainError("Gauss-Legendre order must lie in 1..64");
  return rules[static_cast<std::size_t>(n)];
}

double integrate(const ScalarIntegrand& f, double a, double b, const QuadratureConfig& q) {
  VectorIntegrand g = [&f](double t, double* out) { out[0] = f(t); };
  return integrate(g, 1, a, b, q).front();
}

std::vector<double> integrate(const VectorIntegrand& f, int width, double a, double b, const QuadratureConfig& q) {
  q.validate();
  if (width < 1) throw DomainError("integrand width must be positive");
  if (!(b >= a)) throw DomainError("integration interval reversed");
  return integrate_segment(f, width, a, b, q.panels, q, q.graded_start);
}

std::vector<double> speeds(const ChannelModel& ch, const State& rho0, double t, const std::vector<MC>& fs) {
  const EvolvedState s = evolve_with_derivative(ch, rho0, t);
  const Spectrum spec = spectral_decompose(s.rho);
  std::vector<double> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(std::sqrt(std::max(0.0, ds2_from_drho(spec, s.drho, f).total())));
  return out;
}

std::vector<std::vector<double>> cumulative_path_lengths(const ChannelModel& ch, const State& rho0,
                                                         const std::vector<double>& times, const std::vector<MC>& fs,
                                                         const QuadratureConfig& q) {
  q.validate();
  if (fs.empty()) throw ValidationError("no metrics requested");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0) || !std::isfinite(times[k])) throw DomainError("times must be nonnegative and finite");
    if (k > 0 && times[k] < times[k - 1]) throw DomainError("times must be ascending");
  }
  const int width = static_cast<int>(fs.size());
  std::vector<std::vector<double>> out(times.size(), std::vector<double>(fs.size(), 0.0));
  if (times.empty()) return out;
  const double horizon = times.back();
  if (horizon == 0.0) return out;

  std::vector<double> cuts = ch.breakpoints(horizon);
  const VectorIntegrand g = speed_integrand(ch, rho0, fs);
  std::vector<double> running(fs.size(), 0.0);
  double at = 0.0;
  std::size_t bp = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    while (at < times[k]) {
      double next = times[k];
      if (bp < cuts.size() && cuts[bp] < next) next = cuts[bp++];
      else if (bp < cuts.size() && cuts[bp] == next) ++bp;
      const int panels = std::max(2, static_cast<int>(std::ceil(q.panels * (next - at) / horizon)));
      const std::vector<double> part = integrate_segment(g, width, at, next, panels, q, q.graded_start && at == 0.0);
      for (std::size_t m = 0; m < fs.size(); ++m) running[m] += part[m];
      at = next;
    }
    out[k] = running;
  }
  return out;
}

std::vector<double> path_lengths(const ChannelModel& ch, const State& rho0, double tau, const std::vector<MC>& fs,
                                 const QuadratureConfig& q) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("evolution time must be nonnegative and finite");
  return cumulative_path_lengths(ch, rho0, {tau}, fs, q).front();
}

double path_length(const ChannelModel& ch, const State& rho0, double tau, const MC& f, const QuadratureConfig& q) {
  return path_lengths(ch, rho0, tau, {f}, q).front();
}

bool has_geodesic(const MC& f) noexcept {
  return f.kind() == MetricKind::QuantumFisher || f.kind() == MetricKind::WignerYanase;
}

namespace {

Eigen::Vector3d bloch_components(const CMatrixd& m) {
  return {2 * m(0, 1).real(), -2 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

// Qubit angles from squared chord lengths; arccos of a fidelity near 1
// cannot resolve separations below ~1e-8. Mixedness at rounding level is
// dropped (as in psd_sqrt), otherwise its square root dominates.
constexpr double kMixedFloor = 16 * std::numeric_limits<double>::epsilon();

double root_mixedness(double m) { return m <= kMixedFloor ? 0.0 : std::sqrt(m); }

double qubit_bures_angle(const Eigen::Vector3d& r1, const Eigen::Vector3d& r2) {
  const double a = root_mixedness(1 - r1.squaredNorm());
  const double b = root_mixedness(1 - r2.squaredNorm());
  const double s2 = std::clamp(0.25 * (r1 - r2).squaredNorm() + 0.25 * (a - b) * (a - b), 0.0, 1.0);
  return std::atan2(std::sqrt(s2), std::sqrt(1 - s2));
}

double qubit_hellinger_angle(const Eigen::Vector3d& r1, const Eigen::Vector3d& r2) {
  // sqrt(rho) = alpha I + b . sigma
  auto root = [](const Eigen::Vector3d& r) {
    const double n = std::min(1.0, r.norm());
    const double sp = std::sqrt((1 + n) / 2), sm = root_mixedness((1 - n) / 2);
    const Eigen::Vector3d b = n > 0.0 ? Eigen::Vector3d(r * ((sp - sm) / (2 * n))) : Eigen::Vector3d::Zero();
    return std::pair{(sp + sm) / 2, b};
  };
  const auto [a1, b1] = root(r1);
  const auto [a2, b2] = root(r2);
  const double d = (a1 - a2) * (a1 - a2) + (b1 - b2).squaredNorm();  // 1 - affinity
  return 2 * std::asin(std::min(1.0, std::sqrt(d / 2)));
}

}  // namespace

double geodesic_length(const State& rho, const State& sigma, const MC& f) {
  if (!has_geodesic(f)) {
    throw GeodesicUnknownError("no closed-form geodesic length for metric '" + f.name() + "'");
  }
  if (rho.dim() != sigma.dim()) throw DimensionError("geodesic_length: dimension mismatch");
  if (rho.matrix() == sigma.matrix()) return 0.0;
  if (rho.dim() == 2) {
    const Eigen::Vector3d r1 = bloch_components(rho.matrix());
    const Eigen::Vector3d r2 = bloch_components(sigma.matrix());
    return f.kind() == MetricKind::QuantumFisher ? qubit_bures_angle(r1, r2) : qubit_hellinger_angle(r1, r2);
  }
  if (f.kind() == MetricKind::QuantumFisher) return std::acos(std::sqrt(fidelity(rho, sigma)));
  return std::acos(affinity(rho, sigma));
}

std::string QSLReport::flags() const {
  std::string s;
  auto add = [&s](const char* f) {
    if (!s.empty()) s += ';';
    s += f;
  };
  if (degenerate) add("degenerate");
  if (degenerate_endpoint) add("degenerate_endpoint");
  if (saturated) add("saturated");
  return s;
}

QSLReport make_report(const MC& f, double ell, std::optional<double> geodesic, double tau, bool strict) {
  QSLReport r;
  r.metric = f.kind();
  r.metric_name = f.name();
  r.path_length = ell;
  r.evolution_time = tau;
  r.geodesic_length = geodesic;
  if (!geodesic) return r;
  const double L = *geodesic;
  if (L < kDegenerateGeodesic) {
    r.degenerate = true;
    if (ell <= kDegenerateGeodesic) {
      r.tightness = 0.0;
      r.bound_time = 0.0;
      r.saturated = true;
      return r;
    }
    if (strict) throw DegenerateEndpointError("endpoints coincide while the path has nonzero length");
    r.degenerate_endpoint = true;
    return r;
  }
  r.tightness = (ell - L) / L;
  r.bound_time = ell > 0.0 ? std::min(tau, tau * L / ell) : 0.0;
  r.saturated = *r.tightness <= 1e-6;
  return r;
}

std::vector<QSLReport> qsl_reports(const ChannelModel& ch, const State& rho0, double tau, const std::vector<MC>& fs,
                                   const QuadratureConfig& q, bool strict) {
  const std::vector<double> ells = path_lengths(ch, rho0, tau, fs, q);
  const State rho_tau = evolve(ch, rho0, tau);
  std::vector<QSLReport> out;
  for (std::size_t m = 0; m < fs.size(); ++m) {
    std::optional<double> L;
    if (has_geodesic(fs[m])) L = geodesic_length(rho0, rho_tau, fs[m]);
    out.push_back(make_report(fs[m], ells[m], L, tau, strict));
  }
  return out;
}

QSLReport tightness(const ChannelModel& ch, const State& rho0, double tau, const MC& f, const QuadratureConfig& q) {
  if (!has_geodesic(f)) {
    throw GeodesicUnknownError("no closed-form geodesic length for metric '" + f.name() + "'");
  }
  return qsl_reports(ch, rho0, tau, {f}, q, true).front();
}

BestMetric best_metric(const ChannelModel& ch, const State& rho0, double tau, const std::vector<MC>& candidates,
                       const QuadratureConfig& q) {
  if (candidates.empty()) throw ValidationError("best_metric: empty candidate list");
  for (const auto& f : candidates) {
    if (!has_geodesic(f)) {
      throw GeodesicUnknownError("best_metric: candidate '" + f.name() + "' has no closed-form geodesic");
    }
  }
  BestMetric out;
  out.reports = qsl_reports(ch, rho0, tau, candidates, q, true);
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.reports.size(); ++i) {
    const double di = out.reports[i].tightness.value_or(0.0);
    const double db = out.reports[best].tightness.value_or(0.0);
    if (di < db - kTightnessTie) {
      best = i;
    } else if (std::abs(di - db) <= kTightnessTie && out.reports[i].metric == MetricKind::QuantumFisher &&
               out.reports[best].metric != MetricKind::QuantumFisher) {
      best = i;
    }
  }
  out.winner = out.reports[best].metric;
  out.winner_name = out.reports[best].metric_name;
  return out;
}

double variance(const State& rho, const CMatrixd& h) {
  return symmetrized_covariance(rho, h, h);
}

double skew_information(const State& rho, const CMatrixd& h) {
  if (h.rows() != rho.dim() || h.cols() != rho.dim()) throw DimensionError("skew_information: dimension mismatch");
  const CMatrixd comm = commutator(psd_sqrt(rho.matrix()), h);
  return std::max(0.0, 0.5 * comm.squaredNorm());
}

double symmetrized_covariance(const State& rho, const CMatrixd& a, const CMatrixd& b) {
  const Eigen::Index n = rho.dim();
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n) {
    throw DimensionError("symmetrized_covariance: dimension mismatch");
  }
  for (const CMatrixd* m : {&a, &b}) {
    if (hermiticity_defect(*m) > 1e-10 * std::max(1.0, m->cwiseAbs().maxCoeff())) {
      throw ValidationError("observable is not Hermitian");
    }
  }
  const CMatrixd& r = rho.matrix();
  const CMatrixd id = CMatrixd::Identity(n, n);
  const CMatrixd da = a - (r * a).trace().real() * id;
  const CMatrixd db = b - (r * b).trace().real() * id;
  const double c = 0.5 * (r * (da * db + db * da)).trace().real();
  return (&a == &b || a == b) ? std::max(0.0, c) : c;
}

UnitaryBound mt_bound(const ChannelModel& ch, const State& rho0, double tau, const QuadratureConfig& q) {
  require_unitary(ch);
  if (!(tau >= 0.0)) throw DomainError("evolution time must be nonnegative");
  UnitaryBound out;
  if (tau == 0.0) return out;
  const State rho_tau = evolve(ch, rho0, tau);
  out.geodesic_length = geodesic_length(rho0, rho_tau, MC::quantum_fisher());
  const double integral = integrate(
      [&](double t) { return std::sqrt(variance(evolve(ch, rho0, t), generator_at(ch, t))); }, 0.0, tau, q);
  out.mean_speed = integral / tau;
  out.endpoints_commute = commutator(rho0.matrix(), rho_tau.matrix()).cwiseAbs().maxCoeff() <= 1e-10;
  if (out.mean_speed <= 1e-14) {
    out.stationary = true;
    return out;
  }
  out.time = out.geodesic_length / out.mean_speed;
  return out;
}

UnitaryBound wy_bound(const ChannelModel& ch, const State& rho0, double tau, const QuadratureConfig& q) {
  require_unitary(ch);
  if (!(tau >= 0.0)) throw DomainError("evolution time must be nonnegative");
  UnitaryBound out;
  if (tau == 0.0) return out;
  const State rho_tau = evolve(ch, rho0, tau);
  out.geodesic_length = geodesic_length(rho0, rho_tau, MC::wigner_yanase());
  const VectorIntegrand g = [&](double t, double* v) {
    const State rho = evolve(ch, rho0, t);
    const CMatrixd h = generator_at(ch, t);
    v[0] = std::sqrt(skew_information(rho, h));
    v[1] = std::sqrt(variance(rho, h));
  };
  const std::vector<double> integrals = integrate(g, 2, 0.0, tau, q);
  out.mean_speed = integrals[0] / tau;
  const double mean_sd = integrals[1] / tau;
  out.endpoints_commute = commutator(rho0.matrix(), rho_tau.matrix()).cwiseAbs().maxCoeff() <= 1e-10;
  if (mean_sd > 1e-14) out.cascade = out.geodesic_length / (std::numbers::sqrt2 * mean_sd);
  if (out.mean_speed <= 1e-14) {
    out.stationary = true;
    return out;
  }
  out.time = out.geodesic_length / (std::numbers::sqrt2 * out.mean_speed);
  return out;
}

}  // namespace gqsl

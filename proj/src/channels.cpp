#include "gqsl/channels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace gqsl {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_rate(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("decay rate must be positive and finite");
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be nonnegative and finite");
}

void require_qubit(const State& rho) {
  if (rho.dim() != 2) throw DimensionError("qubit channel applied to a state of dimension != 2");
}

CMatrixd apply_kraus(const std::vector<CMatrixd>& ks, const CMatrixd& rho) {
  CMatrixd out = CMatrixd::Zero(rho.rows(), rho.cols());
  for (const auto& k : ks) out += k * rho * k.adjoint();
  return out;
}

CMatrixd td_apply(double beta, double u, const CMatrixd& rho) {
  const CMatrixd s = td_smatrix(beta, u);
  const CMatrixd sig[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
  CMatrixd out = CMatrixd::Zero(2, 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (s(i, j) == cplx(0.0)) continue;
      out += s(i, j) * sig[i] * rho * sig[j];
    }
  }
  return out * 0.5;
}

/// Generator of the unitary dynamics at time t (exact when known).
CMatrixd unitary_hamiltonian(const UnitaryDynamics& u, double t) {
  if (u.generator) return u.generator(t);
  return unitary_generator(u.propagator, t);
}

void check_unitary(const CMatrixd& u) {
  const CMatrixd defect = u.adjoint() * u - CMatrixd::Identity(u.rows(), u.cols());
  if (u.rows() != u.cols() || defect.cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("propagator is not unitary");
  }
}

/// Normalized eigenvectors of the qubit state with Bloch data z, w = x + i y
/// and radius R: (z +- R, w). The better-conditioned vector is normalized
/// directly and the other is taken as its orthogonal complement.
std::pair<CVectord, CVectord> qubit_eigenvectors(double z, cplx w, double radius) {
  CVectord plus(2), minus(2);
  if (radius <= 1e-300) {
    plus << 1, 0;
    minus << 0, 1;
    return {plus, minus};
  }
  plus << cplx(z + radius), w;
  minus << cplx(z - radius), w;
  if (plus.norm() >= minus.norm()) {
    plus /= plus.norm();
    minus << -std::conj(plus(1)), std::conj(plus(0));
  } else {
    minus /= minus.norm();
    plus << -std::conj(minus(1)), std::conj(minus(0));
  }
  return {plus, minus};
}

AnalyticSpectrum spectrum_from_bloch(double z, cplx w, double radius) {
  AnalyticSpectrum s;
  s.p_plus = (1 + radius) / 2;
  s.p_minus = (1 - radius) / 2;
  auto [p, m] = qubit_eigenvectors(z, w, radius);
  s.eigvec_plus = std::move(p);
  s.eigvec_minus = std::move(m);
  return s;
}

/// Adds the coherence term c^f(p+, p-) * weight, tagging divergence.
double coherence_term(const MC& f, double p_plus, double p_minus, double weight) {
  if (weight == 0.0) return 0.0;
  const KernelValue<double> c = c_kernel(f, std::max(p_plus, 0.0), std::max(p_minus, 0.0));
  if (c.infinite) throw DivergentMetricError("metric with f(0) = 0 is divergent at a pure state");
  return c.value * weight;
}

/// 8 beta^2 int_0^u e^{-v} shc(v)^2 dv, which equals 1 - e^{-u} G for the
/// plus state; used where the direct difference cancels.
double td_plus_deficit(double beta, double u) {
  const auto& gl = [] {
    // 16-point Gauss-Legendre on [-1, 1].
    static const double x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                                0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
    static const double w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                                0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
    return std::pair<const double*, const double*>(x, w);
  }();
  constexpr int kPanels = 8;
  const double h = u / kPanels;
  double sum = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int k = 0; k < 8; ++k) {
      for (int sgn : {-1, 1}) {
        const double v = mid + sgn * gl.first[k] * h / 2;
        const double shc = td_parameters(beta, v).shc;
        sum += gl.second[k] * std::exp(-v) * shc * shc;
      }
    }
  }
  return 8 * beta * beta * sum * h / 2;
}

}  // namespace

std::vector<CMatrixd> pd_kraus(double omega0, double gamma, double t) {
  const double q = std::exp(-gamma * t);
  const cplx ph = std::exp(-kI * (omega0 * t / 2));
  CMatrixd k0 = CMatrixd::Zero(2, 2);
  CMatrixd k1 = CMatrixd::Zero(2, 2);
  k0(0, 0) = std::sqrt((1 + q) / 2) * ph;
  k0(1, 1) = std::sqrt((1 + q) / 2) * std::conj(ph);
  k1(0, 0) = std::sqrt((1 - q) / 2) * ph;
  k1(1, 1) = -std::sqrt((1 - q) / 2) * std::conj(ph);
  return {k0, k1};
}

std::vector<CMatrixd> ad_kraus(double gamma, double t) {
  const double lambda = -std::expm1(-gamma * t);
  CMatrixd k0 = CMatrixd::Zero(2, 2);
  CMatrixd k1 = CMatrixd::Zero(2, 2);
  k0(0, 0) = 1;
  k0(1, 1) = std::exp(-gamma * t / 2);
  k1(0, 1) = std::sqrt(lambda);
  return {k0, k1};
}

ChannelModel ChannelModel::unitary(Propagator u, Eigen::Index dim) {
  if (!u) throw ValidationError("empty propagator");
  if (dim < 1) throw DomainError("dimension must be positive");
  return ChannelModel(UnitaryDynamics{std::move(u), {}, {}, dim});
}

ChannelModel ChannelModel::constant_hamiltonian(const CMatrixd& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw DimensionError("Hamiltonian must be square");
  if (hermiticity_defect(h) > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
    throw ValidationError("Hamiltonian is not Hermitian");
  }
  const CMatrixd hh = hermitian_part(h);
  Eigen::SelfAdjointEigenSolver<CMatrixd> es(hh);
  const CMatrixd v = es.eigenvectors();
  const RVectord e = es.eigenvalues();
  Propagator prop = [v, e](double t) {
    const CVectord phases = (e * (-t)).unaryExpr([](double a) { return std::exp(cplx(0.0, a)); });
    return CMatrixd(v * phases.asDiagonal() * v.adjoint());
  };
  Hamiltonian gen = [hh](double) { return hh; };
  return ChannelModel(UnitaryDynamics{std::move(prop), std::move(gen), {}, h.rows()});
}

ChannelModel ChannelModel::piecewise_hamiltonian(const std::vector<std::pair<double, CMatrixd>>& pieces) {
  if (pieces.empty()) throw ValidationError("piecewise Hamiltonian needs at least one piece");
  const Eigen::Index n = pieces.front().second.rows();
  std::vector<double> starts;
  std::vector<CMatrixd> hs;
  double t0 = 0.0;
  for (const auto& [duration, h] : pieces) {
    if (h.rows() != n || h.cols() != n) throw DimensionError("piecewise Hamiltonian: inconsistent dimensions");
    if (hermiticity_defect(h) > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
      throw ValidationError("piecewise Hamiltonian: piece is not Hermitian");
    }
    if (!(duration > 0.0)) throw DomainError("piecewise Hamiltonian: durations must be positive");
    starts.push_back(t0);
    hs.push_back(hermitian_part(h));
    t0 += duration;
  }
  // Propagators at the start of each piece.
  std::vector<CMatrixd> u_start{CMatrixd::Identity(n, n)};
  for (std::size_t k = 0; k + 1 < hs.size(); ++k) {
    u_start.push_back(unitary_exp(hs[k], starts[k + 1] - starts[k]) * u_start.back());
  }
  auto locate = [starts](double t) {
    const auto it = std::upper_bound(starts.begin(), starts.end(), t);
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - starts.begin()) - 1));
  };
  Propagator prop = [=](double t) {
    const std::size_t k = locate(t);
    return CMatrixd(unitary_exp(hs[k], t - starts[k]) * u_start[k]);
  };
  Hamiltonian gen = [=](double t) { return hs[locate(t)]; };
  std::vector<double> bps(starts.begin() + 1, starts.end());
  return ChannelModel(UnitaryDynamics{std::move(prop), std::move(gen), std::move(bps), n});
}

ChannelModel ChannelModel::parallel_dephasing(double omega0, double gamma) {
  require_rate(gamma);
  if (!std::isfinite(omega0)) throw DomainError("frequency must be finite");
  return ChannelModel(ParallelDephasing{omega0, gamma});
}

ChannelModel ChannelModel::transversal_dephasing(double omega0, double gamma) {
  require_rate(gamma);
  if (!(omega0 >= 0.0) || !std::isfinite(omega0)) throw DomainError("frequency must be nonnegative and finite");
  return ChannelModel(TransversalDephasing{omega0, gamma});
}

ChannelModel ChannelModel::amplitude_damping(double gamma) {
  require_rate(gamma);
  return ChannelModel(AmplitudeDamping{gamma});
}

ChannelKind ChannelModel::kind() const noexcept {
  switch (v_.index()) {
    case 0: return ChannelKind::Unitary;
    case 1: return ChannelKind::ParallelDephasing;
    case 2: return ChannelKind::TransversalDephasing;
    default: return ChannelKind::AmplitudeDamping;
  }
}

double ChannelModel::beta() const noexcept {
  if (const auto* p = std::get_if<ParallelDephasing>(&v_)) return p->omega0 / p->gamma;
  if (const auto* p = std::get_if<TransversalDephasing>(&v_)) return p->omega0 / p->gamma;
  return 0.0;
}

double ChannelModel::gamma() const noexcept {
  if (const auto* p = std::get_if<ParallelDephasing>(&v_)) return p->gamma;
  if (const auto* p = std::get_if<TransversalDephasing>(&v_)) return p->gamma;
  if (const auto* p = std::get_if<AmplitudeDamping>(&v_)) return p->gamma;
  return 0.0;
}

std::string ChannelModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, UnitaryDynamics>) {
          os << "unitary(dim=" << c.dim << ")";
        } else if constexpr (std::is_same_v<T, ParallelDephasing>) {
          os << "parallel_dephasing(omega0=" << c.omega0 << ", gamma=" << c.gamma << ")";
        } else if constexpr (std::is_same_v<T, TransversalDephasing>) {
          os << "transversal_dephasing(omega0=" << c.omega0 << ", gamma=" << c.gamma << ")";
        } else {
          os << "amplitude_damping(gamma=" << c.gamma << ")";
        }
      },
      v_);
  return os.str();
}

std::vector<double> ChannelModel::breakpoints(double tau) const {
  std::vector<double> out;
  if (const auto* u = std::get_if<UnitaryDynamics>(&v_)) {
    for (double b : u->breakpoints) {
      if (b > 0.0 && b < tau) out.push_back(b);
    }
  }
  return out;
}

CMatrixd unitary_exp(const CMatrixd& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrixd> es(CMatrixd(hermitian_part(h)));
  const CVectord phases = (es.eigenvalues() * (-t)).unaryExpr([](double a) { return std::exp(cplx(0.0, a)); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

State evolve(const ChannelModel& ch, const State& rho0, double t) {
  require_time(t);
  if (t == 0.0) return rho0;
  const CMatrixd& m = rho0.matrix();
  return std::visit(
      [&](const auto& c) -> State {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, UnitaryDynamics>) {
          if (rho0.dim() != c.dim) throw DimensionError("state and propagator dimensions differ");
          const CMatrixd u = c.propagator(t);
          if (u.rows() != c.dim || u.cols() != c.dim) throw DimensionError("propagator has the wrong dimension");
          check_unitary(u);
          return State::from_numeric(u * m * u.adjoint());
        } else if constexpr (std::is_same_v<T, ParallelDephasing>) {
          require_qubit(rho0);
          return State::from_numeric(apply_kraus(pd_kraus(c.omega0, c.gamma, t), m));
        } else if constexpr (std::is_same_v<T, TransversalDephasing>) {
          require_qubit(rho0);
          return State::from_numeric(td_apply(c.omega0 / c.gamma, c.gamma * t, m));
        } else {
          require_qubit(rho0);
          return State::from_numeric(apply_kraus(ad_kraus(c.gamma, t), m));
        }
      },
      ch.data());
}

CMatrixd lindblad_rhs(const ChannelModel& ch, const CMatrixd& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("qubit master equation needs a 2x2 matrix");
  const CMatrixd z = pauli::z();
  const CMatrixd x = pauli::x();
  return std::visit(
      [&](const auto& c) -> CMatrixd {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, UnitaryDynamics>) {
          throw DomainError("lindblad_rhs: unitary dynamics are time dependent; use state_derivative");
        } else if constexpr (std::is_same_v<T, ParallelDephasing>) {
          const CMatrixd h = z * (c.omega0 / 2);
          return CMatrixd(-kI * commutator(h, rho) - (c.gamma / 2) * (rho - z * rho * z));
        } else if constexpr (std::is_same_v<T, TransversalDephasing>) {
          const CMatrixd h = z * (c.omega0 / 2);
          return CMatrixd(-kI * commutator(h, rho) - (c.gamma / 2) * (rho - x * rho * x));
        } else {
          CMatrixd lower = CMatrixd::Zero(2, 2);
          lower(0, 1) = 1;  // |0><1|: decay towards |0>
          const CMatrixd raise = lower.adjoint();
          const CMatrixd n = raise * lower;
          return CMatrixd(c.gamma * (lower * rho * raise - 0.5 * (n * rho + rho * n)));
        }
      },
      ch.data());
}

EvolvedState evolve_with_derivative(const ChannelModel& ch, const State& rho0, double t) {
  State rho = evolve(ch, rho0, t);
  CMatrixd drho;
  if (const auto* u = std::get_if<UnitaryDynamics>(&ch.data())) {
    const CMatrixd h = unitary_hamiltonian(*u, t);
    drho = -kI * commutator(h, rho.matrix());
  } else {
    drho = lindblad_rhs(ch, rho.matrix());
  }
  return {std::move(rho), hermitian_part(drho)};
}

CMatrixd generator_at(const ChannelModel& ch, double t) {
  const auto* u = std::get_if<UnitaryDynamics>(&ch.data());
  if (u == nullptr) throw DomainError("generator requested for non-unitary dynamics");
  require_time(t);
  return unitary_hamiltonian(*u, t);
}

CMatrixd state_derivative(const ChannelModel& ch, const State& rho0, double t) {
  return evolve_with_derivative(ch, rho0, t).drho;
}

CMatrixd unitary_generator(const Propagator& u, double t, double h) {
  require_time(t);
  if (!u) throw ValidationError("empty propagator");
  if (!(h > 0.0)) h = std::max(1e-6, 1e-6 * t);
  const CMatrixd u0 = u(t);
  check_unitary(u0);
  CMatrixd du_dag;
  if (t - h >= 0.0) {
    du_dag = (u(t + h).adjoint() - u(t - h).adjoint()) / (2 * h);
  } else {
    du_dag = (-3.0 * u0.adjoint() + 4.0 * u(t + h).adjoint() - u(t + 2 * h).adjoint()) / (2 * h);
  }
  return hermitian_part(CMatrixd(-kI * u0 * du_dag));
}

AnalyticSpectrum pd_spectrum(const Bloch& b0, double omega0, double gamma, double t) {
  b0.validate();
  require_rate(gamma);
  require_time(t);
  const double q = std::exp(-gamma * t);
  const double ct = std::cos(b0.theta);
  const double st = std::sin(b0.theta);
  const double xi = std::sqrt(ct * ct + q * q * st * st);
  AnalyticSpectrum s = spectrum_from_bloch(b0.r * ct, b0.r * q * st * std::exp(kI * (omega0 * t + b0.phi)), b0.r * xi);
  s.aux["xi"] = xi;
  s.aux["q"] = q;
  return s;
}

AnalyticSpectrum td_spectrum(const Bloch& b0, double omega0, double gamma, double t) {
  b0.validate();
  require_rate(gamma);
  require_time(t);
  const TDParameters p = td_parameters(omega0 / gamma, gamma * t);
  const double ct = std::cos(b0.theta);
  const double st = std::sin(b0.theta);
  const cplx coh = ((p.b + kI * p.c) * std::exp(kI * b0.phi) + p.f * std::exp(-kI * b0.phi)) * st;
  const double zeta = p.b * p.b + p.c * p.c + p.f * p.f +
                      2 * p.f * (p.b * std::cos(2 * b0.phi) - p.c * std::sin(2 * b0.phi));
  const double z = (2 * p.a - 1) * ct;
  const double xi = std::sqrt(std::max(0.0, z * z + zeta * st * st));
  AnalyticSpectrum s = spectrum_from_bloch(b0.r * z, b0.r * coh, b0.r * xi);
  s.aux["xi_tilde"] = xi;
  s.aux["zeta_tilde"] = zeta;
  return s;
}

AnalyticSpectrum ad_spectrum(const Bloch& b0, double gamma, double t) {
  b0.validate();
  require_rate(gamma);
  require_time(t);
  const double lambda = -std::expm1(-gamma * t);
  const double keep = std::exp(-gamma * t);  // 1 - lambda without cancellation
  const double ct = std::cos(b0.theta);
  const double zeta = 1 - b0.r * b0.r + lambda * (1 - b0.r * ct) * (1 - b0.r * ct);
  const double vartheta = std::sqrt(std::max(0.0, 1 - zeta * keep));
  const double varsigma = lambda + b0.r * keep * ct;
  const cplx coh = std::exp(kI * b0.phi) * b0.r * std::sqrt(keep) * std::sin(b0.theta);
  AnalyticSpectrum s = spectrum_from_bloch(varsigma, coh, vartheta);
  s.aux["vartheta"] = vartheta;
  s.aux["zeta"] = zeta;
  s.aux["varsigma"] = varsigma;
  s.aux["lambda"] = lambda;
  return s;
}

Split pd_analytic_FQ(const Bloch& b0, double omega0, double gamma, double t, const MC& f) {
  const AnalyticSpectrum s = pd_spectrum(b0, omega0, gamma, t);
  const double q = s.aux.at("q");
  const double xi = s.aux.at("xi");
  const double dq = -gamma * q;
  const double st = std::sin(b0.theta);
  const double ct = std::cos(b0.theta);
  const double r2 = b0.r * b0.r;

  Split out;
  const double num = r2 * q * q * st * st * st * st * dq * dq;
  if (num != 0.0) {
    const double den = 4 * xi * xi * (1 - r2 * xi * xi);
    if (!(den > 0.0)) throw SingularPointError("parallel dephasing: classical term singular at a pure state", t);
    out.classical = num / den;
  }
  const double coh_rate = omega0 * omega0 * q * q + (xi > 0.0 ? ct * ct * dq * dq / (xi * xi) : 0.0);
  out.quantum = coherence_term(f, s.p_plus, s.p_minus, coh_rate * r2 * st * st / 8);
  return out;
}

TDParameters td_parameters(double beta, double u) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be nonnegative and finite");
  require_time(u);
  const double s = 1 - 4 * beta * beta;  // Omega^2
  TDParameters p;
  const double damp = std::exp(-u / 2);
  if (std::abs(s) * u * u < 1e-4) {
    const double u2 = u * u;
    p.ch = 1 + s * u2 / 8 + s * s * u2 * u2 / 384;
    p.shc = (u / 2) * (1 + s * u2 / 24 + s * s * u2 * u2 / 1920);
    p.b = damp * p.ch;
    p.f = damp * p.shc;
  } else if (s > 0.0) {
    const double om = std::sqrt(s);
    const double x = om * u / 2;
    p.ch = std::cosh(x);
    p.shc = std::sinh(x) / om;
    // e^{-u/2} cosh and e^{-u/2} sinh without overflow for large u.
    const double grow = std::exp(x - u / 2);
    const double decay = std::exp(-x - u / 2);
    p.b = (grow + decay) / 2;
    p.f = (grow - decay) / (2 * om);
  } else {
    const double om = std::sqrt(-s);
    const double x = om * u / 2;
    p.ch = std::cos(x);
    p.shc = std::sin(x) / om;
    p.b = damp * p.ch;
    p.f = damp * p.shc;
  }
  p.a = (1 + std::exp(-u)) / 2;
  p.d = -std::expm1(-u) / 2;
  p.c = 2 * beta * p.f;
  return p;
}

CMatrixd td_smatrix(double beta, double u) {
  const TDParameters p = td_parameters(beta, u);
  CMatrixd s = CMatrixd::Zero(4, 4);
  s(0, 0) = p.a + p.b;
  s(1, 1) = p.d + p.f;
  s(2, 2) = p.d - p.f;
  s(3, 3) = p.a - p.b;
  s(0, 3) = kI * p.c;
  s(3, 0) = -kI * p.c;
  return s;
}

Split td_plus_FQ(double beta, double u, const MC& f) {
  const TDParameters p = td_parameters(beta, u);
  const double g = 1 + 2 * p.shc * p.shc + 2 * p.shc * p.ch;
  const double decay = std::exp(-u);
  const double radius2 = decay * g;
  const double deficit = radius2 > 0.5 ? td_plus_deficit(beta, u) : 1 - radius2;
  const double radius = std::sqrt(std::max(0.0, 1 - deficit));
  const double p_plus = (1 + radius) / 2;
  const double p_minus = deficit / (4 * p_plus);  // (1 - R^2) / (2 (1 + R))

  Split out;
  const double shc2 = p.shc * p.shc;
  const double num = 4 * beta * beta * beta * beta * decay * shc2 * shc2;
  if (num != 0.0) {
    if (!(deficit > 0.0)) throw SingularPointError("transversal dephasing: classical term singular", u);
    out.classical = num / (g * deficit);
  }
  out.quantum = coherence_term(f, p_plus, p_minus, beta * beta * decay / (8 * g));
  return out;
}

Split ad_analytic_FQ(const Bloch& b0, double gamma, double t, const MC& f) {
  const AnalyticSpectrum s = ad_spectrum(b0, gamma, t);
  const double vartheta = s.aux.at("vartheta");
  const double zeta = s.aux.at("zeta");
  const double varsigma = s.aux.at("varsigma");
  const double keep = std::exp(-gamma * t);
  const double ct = std::cos(b0.theta);
  const double st = std::sin(b0.theta);
  const double rate2 = gamma * gamma * keep * keep;  // (d lambda / dt)^2

  if (vartheta <= 1e-12) throw SingularPointError("amplitude damping: trajectory crosses the maximally mixed state", t);
  Split out;
  const double num = zeta - keep * (1 - b0.r * ct) * (1 - b0.r * ct);
  if (num != 0.0) {
    const double den = 16 * vartheta * vartheta * zeta * keep;
    if (!(den > 0.0)) throw SingularPointError("amplitude damping: classical term singular at a pure state", t);
    out.classical = rate2 * num * num / den;
  }
  const double w = b0.r * b0.r * st * st * (2 - varsigma) * (2 - varsigma) / (32 * vartheta * vartheta * keep);
  out.quantum = rate2 * coherence_term(f, s.p_plus, s.p_minus, w);
  return out;
}

}  // namespace gqsl

#pragma once

// Dynamics: unitary evolution from a propagator and three qubit noise
// channels (parallel dephasing, transversal dephasing, amplitude damping).

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gqsl/mcmetric.hpp"
#include "gqsl/qstate.hpp"
#include "gqsl/types.hpp"

namespace gqsl {

using State = DensityOperator<double>;
using Bloch = BlochVector<double>;
using Spectrum = SpectralDecomposition<double>;
using MC = MCFunction<double>;
using Split = MetricSplit<double>;

/// Time-dependent propagator U(t) with U(0) = I.
using Propagator = std::function<CMatrixd(double)>;
/// Time-dependent Hamiltonian H(t).
using Hamiltonian = std::function<CMatrixd(double)>;

struct UnitaryDynamics {
  Propagator propagator;
  Hamiltonian generator;             // empty: recovered by finite differences of U
  std::vector<double> breakpoints;   // times where H(t) may jump
  Eigen::Index dim{0};
};

struct ParallelDephasing {
  double omega0{0};
  double gamma{1};
};

struct TransversalDephasing {
  double omega0{0};
  double gamma{1};
};

struct AmplitudeDamping {
  double gamma{1};
};

enum class ChannelKind { Unitary, ParallelDephasing, TransversalDephasing, AmplitudeDamping };

class ChannelModel {
 public:
  using Variant = std::variant<UnitaryDynamics, ParallelDephasing, TransversalDephasing, AmplitudeDamping>;

  /// Arbitrary propagator; generator obtained by finite differences.
  static ChannelModel unitary(Propagator u, Eigen::Index dim);
  /// U(t) = exp(-i H t).
  static ChannelModel constant_hamiltonian(const CMatrixd& h);
  /// Time-ordered product of constant pieces (duration, H); the last piece
  /// extends to infinity.
  static ChannelModel piecewise_hamiltonian(const std::vector<std::pair<double, CMatrixd>>& pieces);
  static ChannelModel parallel_dephasing(double omega0, double gamma);
  static ChannelModel transversal_dephasing(double omega0, double gamma);
  static ChannelModel amplitude_damping(double gamma);

  ChannelKind kind() const noexcept;
  const Variant& data() const noexcept { return v_; }
  /// omega0 / gamma for the dephasing kinds, 0 otherwise.
  double beta() const noexcept;
  /// Gamma for the noise kinds, 0 for unitary dynamics.
  double gamma() const noexcept;
  std::string describe() const;
  /// Interior times in (0, tau) where the time derivative may be discontinuous.
  std::vector<double> breakpoints(double tau) const;

 private:
  explicit ChannelModel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Kraus pairs of the dephasing (with its free precession) and damping maps at time t.
std::vector<CMatrixd> pd_kraus(double omega0, double gamma, double t);
std::vector<CMatrixd> ad_kraus(double gamma, double t);

/// exp(-i H t) for Hermitian H.
CMatrixd unitary_exp(const CMatrixd& h, double t);

State evolve(const ChannelModel& ch, const State& rho0, double t);

/// Right-hand side of the master equation for the noise kinds.
CMatrixd lindblad_rhs(const ChannelModel& ch, const CMatrixd& rho);

CMatrixd state_derivative(const ChannelModel& ch, const State& rho0, double t);

/// Hamiltonian generating unitary dynamics at time t (exact when the model
/// knows it, finite differences of U otherwise).
CMatrixd generator_at(const ChannelModel& ch, double t);

struct EvolvedState {
  State rho;
  CMatrixd drho;
};

EvolvedState evolve_with_derivative(const ChannelModel& ch, const State& rho0, double t);

/// Generator H_t = -i U dU^dagger/dt by central differences (one-sided near
/// t = 0). `h <= 0` selects the default step max(1e-6, 1e-6 t).
CMatrixd unitary_generator(const Propagator& u, double t, double h = 0);

struct AnalyticSpectrum {
  double p_plus{1};
  double p_minus{0};
  CVectord eigvec_plus;
  CVectord eigvec_minus;
  std::map<std::string, double> aux;
};

AnalyticSpectrum pd_spectrum(const Bloch& b0, double omega0, double gamma, double t);
AnalyticSpectrum td_spectrum(const Bloch& b0, double omega0, double gamma, double t);
AnalyticSpectrum ad_spectrum(const Bloch& b0, double gamma, double t);

/// Per dt^2.
Split pd_analytic_FQ(const Bloch& b0, double omega0, double gamma, double t, const MC& f);

struct TDParameters {
  double a{1}, b{1}, c{0}, d{0}, f{0};
  double ch{1};   // cosh(Omega u / 2), or its trigonometric continuation
  double shc{0};  // sinh(Omega u / 2) / Omega, or its continuation
};

TDParameters td_parameters(double beta, double u);
CMatrixd td_smatrix(double beta, double u);
/// Plus-state metric per du^2 with u = Gamma t.
Split td_plus_FQ(double beta, double u, const MC& f);

/// Per dt^2.
Split ad_analytic_FQ(const Bloch& b0, double gamma, double t, const MC& f);

}  // namespace gqsl

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gqsl/channels.hpp"
#include "support.hpp"

using namespace gqsl;
using namespace testing_support;

namespace {

constexpr double kPi = std::numbers::pi;
const MC kQF = MC::quantum_fisher();
const MC kWY = MC::wigner_yanase();

// Classic RK4 on the master equation, independent of the closed-form maps.
CMatrixd rk4(const ChannelModel& ch, CMatrixd rho, double t, int steps) {
  const double h = t / steps;
  for (int k = 0; k < steps; ++k) {
    const CMatrixd k1 = lindblad_rhs(ch, rho);
    const CMatrixd k2 = lindblad_rhs(ch, rho + h / 2 * k1);
    const CMatrixd k3 = lindblad_rhs(ch, rho + h / 2 * k2);
    const CMatrixd k4 = lindblad_rhs(ch, rho + h * k3);
    rho += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return rho;
}

std::vector<ChannelModel> noise_models() {
  return {ChannelModel::parallel_dephasing(1.3, 0.7),   ChannelModel::transversal_dephasing(0.2, 1.0),
          ChannelModel::transversal_dephasing(0.5, 1.0), ChannelModel::transversal_dephasing(3.0, 0.8),
          ChannelModel::amplitude_damping(0.9)};
}

CMatrixd projector(const CVectord& v) { return v * v.adjoint(); }

Split numeric_FQ(const ChannelModel& ch, const Bloch& b0, double t, const MC& f) {
  const EvolvedState e = evolve_with_derivative(ch, from_bloch(b0), t);
  return ds2_from_drho(spectral_decompose(e.rho), e.drho, f);
}

}  // namespace

TEST(Evolve, IdentityAtTimeZero) {
  std::mt19937_64 rng(21);
  const State rho = from_bloch(random_bloch(rng));
  for (const auto& ch : noise_models()) {
    EXPECT_EQ(evolve(ch, rho, 0.0).matrix(), rho.matrix());
  }
  const auto u = ChannelModel::constant_hamiltonian(pauli::x());
  EXPECT_EQ(evolve(u, rho, 0.0).matrix(), rho.matrix());
}

TEST(Evolve, RejectsNegativeTime) {
  EXPECT_THROW(evolve(ChannelModel::amplitude_damping(1), State::maximally_mixed(2), -1.0), DomainError);
}

TEST(Evolve, NoiseChannelsRequireQubits) {
  EXPECT_THROW(evolve(ChannelModel::amplitude_damping(1), State::maximally_mixed(3), 1.0), DimensionError);
}

TEST(Evolve, AmplitudeDampingFixesGroundState) {
  const State g = from_bloch(Bloch{1, 0, 0});
  for (double t : {0.1, 1.0, 30.0}) {
    EXPECT_LT(max_abs(evolve(ChannelModel::amplitude_damping(2.0), g, t).matrix() - g.matrix()), 1e-15);
  }
}

TEST(Evolve, DephasingChannelsAreUnital) {
  const State mixed = State::maximally_mixed(2);
  for (const auto& ch : {ChannelModel::parallel_dephasing(0.4, 1.0), ChannelModel::transversal_dephasing(0.3, 1.0),
                         ChannelModel::transversal_dephasing(2.0, 1.0)}) {
    for (double t : {0.3, 4.0}) {
      EXPECT_LT(max_abs(evolve(ch, mixed, t).matrix() - mixed.matrix()), 1e-14);
    }
  }
}

TEST(Evolve, TraceAndPositivityPreserved) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> time(0.0, 8.0);
  for (const auto& ch : noise_models()) {
    for (int k = 0; k < 100; ++k) {
      const State out = evolve(ch, from_bloch(random_bloch(rng)), time(rng));
      EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
      EXPECT_GE(spectral_decompose(out).eigenvalues.minCoeff(), -1e-12);
    }
  }
}

TEST(Evolve, SemigroupProperty) {
  std::mt19937_64 rng(23);
  for (const auto& ch : noise_models()) {
    for (int k = 0; k < 20; ++k) {
      const State rho = from_bloch(random_bloch(rng));
      const double s = 0.37 * (k + 1) / 10.0, t = 0.91 * (k + 2) / 10.0;
      const CMatrixd split = evolve(ch, evolve(ch, rho, s), t).matrix();
      EXPECT_LT(max_abs(split - evolve(ch, rho, s + t).matrix()), 1e-9);
    }
  }
}

TEST(Evolve, MatchesMasterEquationIntegration) {
  std::mt19937_64 rng(24);
  for (const auto& ch : noise_models()) {
    for (int k = 0; k < 5; ++k) {
      const State rho = from_bloch(random_bloch(rng));
      const double t = 0.5 + 1.1 * k;
      EXPECT_LT(max_abs(rk4(ch, rho.matrix(), t, 4000) - evolve(ch, rho, t).matrix()), 1e-10) << ch.describe();
    }
  }
}

TEST(Evolve, UnitaryMatchesMatrixExponential) {
  std::mt19937_64 rng(25);
  const CMatrixd h = random_hermitian(rng, 3);
  const State rho = random_state(rng, 3);
  const CMatrixd u = unitary_exp(h, 0.8);
  const CMatrixd expected = u * rho.matrix() * u.adjoint();
  EXPECT_LT(max_abs(evolve(ChannelModel::constant_hamiltonian(h), rho, 0.8).matrix() - expected), 1e-12);
  EXPECT_THROW(evolve(ChannelModel::constant_hamiltonian(h), State::maximally_mixed(2), 0.8), DimensionError);
}

TEST(Evolve, RejectsNonUnitaryPropagator) {
  const auto bad = ChannelModel::unitary([](double) { return CMatrixd(2.0 * CMatrixd::Identity(2, 2)); }, 2);
  EXPECT_THROW(evolve(bad, State::maximally_mixed(2), 1.0), ValidationError);
}

TEST(Kraus, Completeness) {
  for (double t : {0.0, 0.2, 1.0, 7.0}) {
    CMatrixd sum = CMatrixd::Zero(2, 2), dual = CMatrixd::Zero(2, 2);
    for (const auto& k : pd_kraus(0.7, 1.2, t)) {
      sum += k.adjoint() * k;
      dual += k * k.adjoint();
    }
    EXPECT_LT(max_abs(sum - CMatrixd::Identity(2, 2)), 1e-14);
    EXPECT_LT(max_abs(dual - CMatrixd::Identity(2, 2)), 1e-14);
    sum.setZero();
    for (const auto& k : ad_kraus(1.2, t)) sum += k.adjoint() * k;
    EXPECT_LT(max_abs(sum - CMatrixd::Identity(2, 2)), 1e-14);
  }
}

TEST(TransversalMap, ProcessMatrixIsPositive) {
  for (double beta : {0.0, 0.2, 0.5, 0.9, 4.0}) {
    for (double u : {0.0, 0.01, 1.0, 10.0, 800.0}) {
      const CMatrixd s = td_smatrix(beta, u);
      EXPECT_LT(hermiticity_defect(s), 1e-15);
      Eigen::SelfAdjointEigenSolver<CMatrixd> es(s);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12) << beta << " " << u;
      EXPECT_NEAR(s.trace().real(), 2.0, 1e-12);
    }
  }
}

TEST(TransversalMap, ParametersAtZero) {
  for (double beta : {0.0, 0.3, 0.5, 2.0}) {
    const TDParameters p = td_parameters(beta, 0.0);
    EXPECT_EQ(p.a, 1.0);
    EXPECT_EQ(p.b, 1.0);
    EXPECT_EQ(p.c, 0.0);
    EXPECT_EQ(p.d, 0.0);
    EXPECT_EQ(p.f, 0.0);
  }
}

TEST(TransversalMap, BranchesAreContinuous) {
  // Around the series cut |1 - 4 beta^2| u^2 = 1e-4.
  for (double beta : {0.3, 0.7}) {
    const double s = std::abs(1 - 4 * beta * beta);
    const double cut = std::sqrt(1e-4 / s);
    const TDParameters lo = td_parameters(beta, cut * (1 - 1e-13));
    const TDParameters hi = td_parameters(beta, cut * (1 + 1e-13));
    EXPECT_NEAR(lo.b, hi.b, 1e-12);
    EXPECT_NEAR(lo.f, hi.f, 1e-12);
    EXPECT_NEAR(lo.c, hi.c, 1e-12);
  }
  const TDParameters crit = td_parameters(0.5, 3.0);
  const TDParameters near = td_parameters(0.5 + 1e-7, 3.0);
  EXPECT_NEAR(crit.b, near.b, 1e-6);
  EXPECT_NEAR(crit.f, near.f, 1e-6);
}

TEST(TransversalMap, LargeTimeStaysFinite) {
  for (double beta : {0.0, 0.1, 0.49}) {
    const TDParameters p = td_parameters(beta, 2000.0);
    EXPECT_TRUE(std::isfinite(p.b));
    EXPECT_TRUE(std::isfinite(p.f));
    EXPECT_NEAR(p.a, 0.5, 1e-15);
    EXPECT_NEAR(p.d, 0.5, 1e-15);
  }
  EXPECT_THROW(td_parameters(-0.1, 1.0), DomainError);
}

TEST(StateDerivative, MatchesCentralDifferences) {
  std::mt19937_64 rng(26);
  std::vector<ChannelModel> models = noise_models();
  models.push_back(ChannelModel::constant_hamiltonian(pauli::y() * 0.8));
  for (const auto& ch : models) {
    const State rho = from_bloch(random_bloch(rng, 0.2, 0.9));
    const double t = 0.7;
    const CMatrixd exact = state_derivative(ch, rho, t);
    auto fd = [&](double h) {
      return CMatrixd((evolve(ch, rho, t + h).matrix() - evolve(ch, rho, t - h).matrix()) / (2 * h));
    };
    const double e1 = max_abs(fd(1e-3) - exact);
    const double e2 = max_abs(fd(5e-4) - exact);
    EXPECT_LT(e1, 1e-6) << ch.describe();
    // second-order convergence
    if (e1 > 1e-10) {
      EXPECT_LT(e2, e1 / 3) << ch.describe();
    }
  }
}

TEST(StateDerivative, VanishesAtFixedPoints) {
  EXPECT_LT(max_abs(state_derivative(ChannelModel::amplitude_damping(1), from_bloch(Bloch{1, 0, 0}), 2.0)), 1e-15);
  EXPECT_LT(max_abs(state_derivative(ChannelModel::parallel_dephasing(1, 1), State::maximally_mixed(2), 2.0)),
            1e-15);
}

TEST(StateDerivative, UnitaryCommutatorMagnitude) {
  const double omega = 1.7;
  const auto ch = ChannelModel::constant_hamiltonian(pauli::z() * (omega / 2));
  const CMatrixd d = state_derivative(ch, from_bloch(Bloch{1, kPi / 2, 0}), 0.4);
  EXPECT_NEAR(std::abs(d(0, 1)), omega / 2, 1e-14);
  EXPECT_NEAR(std::abs(d(0, 0)), 0.0, 1e-15);
}

TEST(Spectra, AnalyticMatchesNumeric) {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> time(0.01, 5.0);
  for (int k = 0; k < 200; ++k) {
    const Bloch b = random_bloch(rng, 0.05, 0.95);
    const double t = time(rng);
    const double w = 0.1 + 0.02 * k, g = 0.5 + 0.01 * k;
    const std::pair<AnalyticSpectrum, ChannelModel> cases[] = {
        {pd_spectrum(b, w, g, t), ChannelModel::parallel_dephasing(w, g)},
        {td_spectrum(b, w, g, t), ChannelModel::transversal_dephasing(w, g)},
        {ad_spectrum(b, g, t), ChannelModel::amplitude_damping(g)}};
    for (const auto& [a, ch] : cases) {
      const Spectrum s = spectral_decompose(evolve(ch, from_bloch(b), t));
      EXPECT_NEAR(a.p_plus, s.eigenvalues(0), 1e-12);
      EXPECT_NEAR(a.p_minus, s.eigenvalues(1), 1e-12);
      if (a.p_plus - a.p_minus > 1e-6) {
        EXPECT_LT(max_abs(projector(a.eigvec_plus) - projector(s.eigenvectors.col(0))), 1e-9);
        EXPECT_LT(max_abs(projector(a.eigvec_minus) - projector(s.eigenvectors.col(1))), 1e-9);
      }
    }
  }
}

TEST(Spectra, SpecialCases) {
  const Bloch pole{0.6, 0, 0};
  const AnalyticSpectrum pd = pd_spectrum(pole, 1.0, 1.0, 3.0);
  EXPECT_NEAR(pd.p_plus, 0.8, 1e-15);
  EXPECT_NEAR(pd.aux.at("xi"), 1.0, 1e-15);
  const AnalyticSpectrum ad = ad_spectrum(Bloch{0.4, 1.0, 2.0}, 1.0, 0.0);
  EXPECT_NEAR(ad.p_plus, 0.7, 1e-15);
  EXPECT_NEAR(ad.p_minus, 0.3, 1e-15);
}

TEST(AnalyticMetric, ParallelDephasingPoleHasNoQuantumPart) {
  const Split s = pd_analytic_FQ(Bloch{0.6, 0, 0}, 2.0, 1.0, 1.0, kQF);
  EXPECT_EQ(s.quantum, 0.0);
  EXPECT_EQ(s.classical, 0.0);
}

TEST(AnalyticMetric, ParallelDephasingEquatorWithoutRotation) {
  const Split s = pd_analytic_FQ(Bloch{0.8, kPi / 2, 0}, 0.0, 1.0, 0.5, kQF);
  EXPECT_NEAR(s.quantum, 0.0, 1e-15);
  EXPECT_GT(s.classical, 0.0);
}

TEST(AnalyticMetric, AzimuthIndependence) {
  for (const MC* f : {&kQF, &kWY}) {
    const Split a = pd_analytic_FQ(Bloch{0.7, 1.0, 0.0}, 1.5, 1.0, 0.8, *f);
    const Split b = pd_analytic_FQ(Bloch{0.7, 1.0, 4.0}, 1.5, 1.0, 0.8, *f);
    EXPECT_NEAR(a.total(), b.total(), 1e-14);
    const Split c = ad_analytic_FQ(Bloch{0.7, 1.0, 0.0}, 1.0, 0.8, *f);
    const Split d = ad_analytic_FQ(Bloch{0.7, 1.0, 4.0}, 1.0, 0.8, *f);
    EXPECT_NEAR(c.total(), d.total(), 1e-14);
  }
}

TEST(AnalyticMetric, MatchesNumericLineElement) {
  std::mt19937_64 rng(28);
  std::uniform_real_distribution<double> time(0.05, 4.0);
  for (int k = 0; k < 100; ++k) {
    const Bloch b = random_bloch(rng, 0.05, 0.95);
    const double t = time(rng);
    for (const MC* f : {&kQF, &kWY}) {
      const Split pa = pd_analytic_FQ(b, 0.9, 1.1, t, *f);
      const Split pn = numeric_FQ(ChannelModel::parallel_dephasing(0.9, 1.1), b, t, *f);
      EXPECT_NEAR(pa.classical, pn.classical, 1e-8 * std::max(1.0, pn.classical));
      EXPECT_NEAR(pa.quantum, pn.quantum, 1e-8 * std::max(1.0, pn.quantum));
      const Split aa = ad_analytic_FQ(b, 1.1, t, *f);
      const Split an = numeric_FQ(ChannelModel::amplitude_damping(1.1), b, t, *f);
      EXPECT_NEAR(aa.classical, an.classical, 1e-8 * std::max(1.0, an.classical));
      EXPECT_NEAR(aa.quantum, an.quantum, 1e-8 * std::max(1.0, an.quantum));
    }
  }
}

TEST(AnalyticMetric, TransversalPlusStateMatchesNumeric) {
  const Bloch plus{1, kPi / 2, 0};
  for (double beta : {0.1, 0.5, 1.0, 3.0}) {
    for (double u : {0.05, 0.1, 1.0, 4.0}) {
      for (const MC* f : {&kQF, &kWY}) {
        const Split a = td_plus_FQ(beta, u, *f);
        const Split n = numeric_FQ(ChannelModel::transversal_dephasing(beta, 1.0), plus, u, *f);
        EXPECT_NEAR(a.total(), n.total(), 1e-8 * std::max(1.0, n.total())) << beta << " " << u;
      }
    }
  }
}

TEST(AnalyticMetric, TransversalLimits) {
  // Without rotation the plus state is a fixed point of the dissipator.
  const Split still = td_plus_FQ(0.0, 1.0, kQF);
  EXPECT_NEAR(still.total(), 0.0, 1e-15);
  const Split early = td_plus_FQ(1.0, 1e-6, kQF);
  EXPECT_TRUE(std::isfinite(early.total()));
}

TEST(AnalyticMetric, AmplitudeDampingPole) {
  const Split s = ad_analytic_FQ(Bloch{0.5, 0, 0}, 1.0, 1.0, kWY);
  EXPECT_EQ(s.quantum, 0.0);
  EXPECT_GT(s.classical, 0.0);
}

TEST(AnalyticMetric, AmplitudeDampingSingularCrossing) {
  // |1> passes through I/2 at Gamma t = ln 2.
  EXPECT_THROW(ad_analytic_FQ(Bloch{1, kPi, 0}, 1.0, std::log(2.0), kQF), SingularPointError);
}

TEST(Generator, KnownHamiltonians) {
  const CMatrixd h = pauli::z() * 0.6 + pauli::x() * 0.2;
  const auto prop = [h](double t) { return unitary_exp(h, t); };
  for (double t : {0.0, 0.5, 3.0}) {
    EXPECT_LT(max_abs(unitary_generator(prop, t) - h), 1e-8);
  }
  EXPECT_LT(max_abs(unitary_generator([](double) { return CMatrixd(CMatrixd::Identity(2, 2)); }, 1.0)), 1e-12);
  EXPECT_THROW(unitary_generator([](double) { return CMatrixd(2.0 * CMatrixd::Identity(2, 2)); }, 1.0),
               ValidationError);
}

TEST(Generator, PiecewiseHamiltonian) {
  const CMatrixd h1 = pauli::x() * 0.5, h2 = pauli::z() * 1.5;
  const auto ch = ChannelModel::piecewise_hamiltonian({{1.0, h1}, {1.0, h2}});
  EXPECT_LT(max_abs(generator_at(ch, 0.5) - h1), 1e-14);
  EXPECT_LT(max_abs(generator_at(ch, 1.5) - h2), 1e-14);
  const auto& prop = std::get<UnitaryDynamics>(ch.data()).propagator;
  EXPECT_LT(max_abs(unitary_generator(prop, 0.5) - h1), 1e-8);
  EXPECT_LT(max_abs(unitary_generator(prop, 1.5) - h2), 1e-8);
  const CMatrixd u = unitary_exp(h2, 0.5) * unitary_exp(h1, 1.0);
  EXPECT_LT(max_abs(prop(1.5) - u), 1e-14);
  EXPECT_THROW(generator_at(ChannelModel::amplitude_damping(1), 0.5), DomainError);
}

TEST(ChannelModel, Describe) {
  EXPECT_EQ(ChannelModel::amplitude_damping(1).describe(), "amplitude_damping(gamma=1)");
  EXPECT_EQ(ChannelModel::constant_hamiltonian(pauli::z()).kind(), ChannelKind::Unitary);
  EXPECT_NEAR(ChannelModel::parallel_dephasing(3, 2).beta(), 1.5, 1e-15);
}

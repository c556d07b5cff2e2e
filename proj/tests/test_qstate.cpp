#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gqsl/qstate.hpp"
#include "support.hpp"

using namespace gqsl;
using namespace testing_support;

namespace {

constexpr double kPi = std::numbers::pi;

State ket0() { return from_bloch(Bloch{1, 0, 0}); }
State ket1() { return from_bloch(Bloch{1, kPi, 0}); }

}  // namespace

TEST(DensityOperator, RejectsNonHermitian) {
  CMatrixd m(2, 2);
  m << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(State{m}, ValidationError);
}

TEST(DensityOperator, RejectsWrongTrace) {
  EXPECT_THROW(State{CMatrixd::Identity(2, 2)}, ValidationError);
}

TEST(DensityOperator, RejectsNegativeEigenvalue) {
  CMatrixd m(2, 2);
  m << 1.1, 0, 0, -0.1;
  EXPECT_THROW(State{m}, ValidationError);
}

TEST(DensityOperator, RejectsNonSquare) { EXPECT_THROW(State{CMatrixd::Zero(2, 3)}, ValidationError); }

TEST(DensityOperator, PositivityToleranceBoundary) {
  CMatrixd ok(2, 2), bad(2, 2);
  ok << 1.0 + 5e-11, 0, 0, -5e-11;
  bad << 1.0 + 1e-9, 0, 0, -1e-9;
  EXPECT_NO_THROW(State{ok});
  EXPECT_THROW(State{bad}, ValidationError);
}

TEST(FromBloch, Examples) {
  EXPECT_LT(max_abs(from_bloch(Bloch{0, 0, 0}).matrix() - CMatrixd::Identity(2, 2) / 2.0), 1e-15);
  CMatrixd zero(2, 2);
  zero << 1, 0, 0, 0;
  EXPECT_LT(max_abs(ket0().matrix() - zero), 1e-15);
  CMatrixd half(2, 2);
  half << 0.5, 0.25, 0.25, 0.5;
  EXPECT_LT(max_abs(from_bloch(Bloch{0.5, kPi / 2, 0}).matrix() - half), 1e-15);
}

TEST(FromBloch, DomainErrors) {
  EXPECT_THROW(from_bloch(Bloch{1.1, 0, 0}), DomainError);
  EXPECT_THROW(from_bloch(Bloch{-0.1, 0, 0}), DomainError);
  EXPECT_THROW(from_bloch(Bloch{0.5, 4.0, 0}), DomainError);
  EXPECT_THROW(from_bloch(Bloch{0.5, 1.0, 2 * kPi}), DomainError);
}

TEST(ToBloch, Examples) {
  const Bloch mixed = to_bloch(State::maximally_mixed(2));
  EXPECT_EQ(mixed.r, 0.0);
  EXPECT_EQ(mixed.theta, 0.0);
  EXPECT_EQ(mixed.phi, 0.0);
  const Bloch north = to_bloch(ket0());
  EXPECT_NEAR(north.r, 1.0, 1e-15);
  EXPECT_NEAR(north.theta, 0.0, 1e-15);
  CMatrixd d(2, 2);
  d << 0.75, 0, 0, 0.25;
  const Bloch b = to_bloch(State{d});
  EXPECT_NEAR(b.r, 0.5, 1e-15);
  EXPECT_NEAR(b.theta, 0.0, 1e-15);
  EXPECT_NEAR(b.phi, 0.0, 1e-15);
}

TEST(ToBloch, RejectsNonQubit) { EXPECT_THROW(to_bloch(State::maximally_mixed(3)), DimensionError); }

TEST(ToBloch, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const State rho = from_bloch(random_bloch(rng));
    EXPECT_LT(max_abs(from_bloch(to_bloch(rho)).matrix() - rho.matrix()), 1e-12);
  }
}

TEST(SpectralDecompose, MaximallyMixed) {
  const Spectrum s = spectral_decompose(State::maximally_mixed(2));
  EXPECT_NEAR(s.eigenvalues(0), 0.5, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 0.5, 1e-15);
}

TEST(SpectralDecompose, BlochEigenvalues) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    const Bloch b = random_bloch(rng);
    const Spectrum s = spectral_decompose(from_bloch(b));
    EXPECT_NEAR(s.eigenvalues(0), (1 + b.r) / 2, 1e-12);
    EXPECT_NEAR(s.eigenvalues(1), (1 - b.r) / 2, 1e-12);
  }
}

TEST(SpectralDecompose, InvariantsOnRandomStates) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 300; ++k) {
    const Eigen::Index d = 2 + k % 5;
    const State rho = random_state(rng, d);
    const Spectrum s = spectral_decompose(rho);
    EXPECT_NEAR(s.eigenvalues.sum(), 1.0, 1e-10);
    for (Eigen::Index j = 0; j < d; ++j) {
      EXPECT_GE(s.eigenvalues(j), -1e-10);
      if (j > 0) {
        EXPECT_GE(s.eigenvalues(j - 1), s.eigenvalues(j));
      }
    }
    EXPECT_LT(max_abs(s.eigenvectors.adjoint() * s.eigenvectors - CMatrixd::Identity(d, d)), 1e-10);
    EXPECT_LT(max_abs(s.reconstruct() - rho.matrix()), 1e-10);
  }
}

TEST(SpectralDecompose, ThresholdDomain) {
  const State rho = State::maximally_mixed(2);
  EXPECT_THROW(spectral_decompose(rho, 0.0), DomainError);
  EXPECT_THROW(spectral_decompose(rho, 1e-5), DomainError);
  EXPECT_NO_THROW(spectral_decompose(rho, 1e-6));
}

TEST(SpectralDecompose, NullSpaceFlagging) {
  const Spectrum s = spectral_decompose(ket0());
  EXPECT_EQ(s.rank(), 1);
  EXPECT_TRUE(s.is_null(1));
  EXPECT_EQ(s.population(1), 0.0);
}

TEST(SpectralDecompose, DeterministicPhaseAndOrder) {
  const Spectrum s = spectral_decompose(State::maximally_mixed(3));
  for (Eigen::Index j = 0; j < 3; ++j) {
    for (Eigen::Index i = 0; i < 3; ++i) {
      if (std::abs(s.eigenvectors(i, j)) > 1e-12) {
        EXPECT_NEAR(s.eigenvectors(i, j).imag(), 0.0, 1e-15);
        EXPECT_GT(s.eigenvectors(i, j).real(), 0.0);
        break;
      }
    }
  }
  const Spectrum again = spectral_decompose(State::maximally_mixed(3));
  EXPECT_EQ(s.eigenvectors, again.eigenvectors);
}

TEST(Fidelity, Examples) {
  std::mt19937_64 rng(14);
  const State rho = random_state(rng, 3);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(ket0(), ket1()), 0.0, 1e-15);
  EXPECT_NEAR(fidelity(ket0(), State::maximally_mixed(2)), 0.5, 1e-15);
  EXPECT_THROW(fidelity(ket0(), State::maximally_mixed(3)), DimensionError);
}

TEST(Affinity, Examples) {
  std::mt19937_64 rng(15);
  const State rho = random_state(rng, 4);
  EXPECT_NEAR(affinity(rho, rho), 1.0, 1e-12);
  EXPECT_NEAR(affinity(ket0(), ket1()), 0.0, 1e-15);
  EXPECT_NEAR(affinity(ket0(), State::maximally_mixed(2)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(affinity(ket0(), State::maximally_mixed(3)), DimensionError);
}

TEST(Fidelity, SymmetryRangeAndAffinityRelation) {
  std::mt19937_64 rng(16);
  for (int k = 0; k < 500; ++k) {
    const Eigen::Index d = 2 + k % 3;
    const State a = random_state(rng, d);
    const State b = random_state(rng, d);
    const double f = fidelity(a, b);
    const double g = affinity(a, b);
    EXPECT_NEAR(f, fidelity(b, a), 1e-10);
    EXPECT_NEAR(g, affinity(b, a), 1e-10);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0);
    EXPECT_LE(g, std::sqrt(f) + 1e-10);
  }
}

TEST(Fidelity, PureStateOverlap) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const CVectord u = random_complex(rng, 3, 1).col(0).normalized();
    const CVectord v = random_complex(rng, 3, 1).col(0).normalized();
    EXPECT_NEAR(fidelity(State::pure(u), State::pure(v)), std::norm(u.dot(v)), 1e-10);
  }
}

TEST(QubitClosedForms, Examples) {
  const Bloch a{0.7, 1.1, 2.0};
  EXPECT_NEAR(qubit_fidelity(a, a), 1.0, 1e-12);
  EXPECT_NEAR(qubit_fidelity(Bloch{1, 0, 0}, Bloch{1, kPi, 0}), 0.0, 1e-15);
  const Bloch pure{1.0, 0.3, 0.4};
  EXPECT_NEAR(qubit_affinity(pure, pure), 1.0, 1e-12);
  EXPECT_NEAR(qubit_affinity(Bloch{0, 0, 0}, Bloch{0, 0, 0}), 1.0, 1e-15);
}

TEST(QubitClosedForms, MatchMatrixRootsOnRandomPairs) {
  std::mt19937_64 rng(18);
  for (int k = 0; k < 1000; ++k) {
    const Bloch a = random_bloch(rng);
    const Bloch b = random_bloch(rng);
    EXPECT_NEAR(qubit_fidelity(a, b), fidelity(from_bloch(a), from_bloch(b)), 1e-10);
    EXPECT_NEAR(qubit_affinity(a, b), affinity(from_bloch(a), from_bloch(b)), 1e-10);
  }
}

TEST(QubitClosedForms, ZeroRadiusAffinity) {
  const Bloch centre{0, 0, 0};
  const Bloch b{0.6, 1.0, 1.0};
  EXPECT_NEAR(qubit_affinity(centre, b), affinity(from_bloch(centre), from_bloch(b)), 1e-12);
}

TEST(ScalarTemplates, LongDoubleMatchesDouble) {
  using LD = long double;
  const BlochVector<LD> a{0.3L, 0.8L, 0.1L};
  const BlochVector<LD> b{0.9L, 2.0L, 4.0L};
  const LD f = fidelity(from_bloch(a), from_bloch(b));
  const LD g = affinity(from_bloch(a), from_bloch(b));
  EXPECT_NEAR(static_cast<double>(f), qubit_fidelity(Bloch{0.3, 0.8, 0.1}, Bloch{0.9, 2.0, 4.0}), 1e-14);
  EXPECT_NEAR(static_cast<double>(g), qubit_affinity(Bloch{0.3, 0.8, 0.1}, Bloch{0.9, 2.0, 4.0}), 1e-14);
}

#pragma once

// Density operators, Bloch parameterization, spectral decomposition and the
// statistical-distance primitives (Uhlmann fidelity, affinity).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gqsl/error.hpp"
#include "gqsl/types.hpp"

namespace gqsl {

/// Tolerance with a floor a few ulps above the scalar's epsilon, so that the
/// double-precision constants below stay meaningful for narrower types.
template <typename Real>
constexpr Real scaled_tolerance(double nominal) {
  return std::max(static_cast<Real>(nominal), Real(64) * std::numeric_limits<Real>::epsilon());
}

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double positivity = 1e-10;
inline constexpr double default_rank_threshold = 1e-12;
}  // namespace tolerance

template <typename Real = double>
class DensityOperator {
 public:
  using Matrix = CMatrix<Real>;

  /// Validates the matrix: Hermitian, unit trace, positive semidefinite.
  explicit DensityOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
      throw ValidationError("density operator must be a non-empty square matrix");
    }
    if (hermiticity_defect(m_) > scaled_tolerance<Real>(tolerance::hermitian)) {
      throw ValidationError("density operator is not Hermitian");
    }
    const Complex<Real> tr = m_.trace();
    if (std::abs(tr - Complex<Real>(1)) > scaled_tolerance<Real>(tolerance::trace)) {
      throw ValidationError("density operator does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -scaled_tolerance<Real>(tolerance::positivity)) {
      throw ValidationError("density operator is not positive semidefinite");
    }
  }

  /// Symmetrizes `m` before validating; for results of floating-point maps.
  static DensityOperator from_numeric(const Matrix& m) { return DensityOperator(hermitian_part(m)); }

  static DensityOperator maximally_mixed(Eigen::Index dim) {
    if (dim < 1) throw DomainError("dimension must be positive");
    return DensityOperator(Matrix::Identity(dim, dim) / Real(dim));
  }

  static DensityOperator pure(const CVector<Real>& psi) {
    const Real n = psi.norm();
    if (n == Real(0)) throw DomainError("state vector has zero norm");
    const CVector<Real> u = psi / n;
    return DensityOperator(Matrix(u * u.adjoint()));
  }

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// Qubit state in spherical Bloch coordinates.
template <typename Real = double>
struct BlochVector {
  Real r{0};
  Real theta{0};
  Real phi{0};

  void validate() const {
    if (!(r >= Real(0) && r <= Real(1))) throw DomainError("Bloch radius outside [0, 1]");
    if (!(theta >= Real(0) && theta <= std::numbers::pi_v<Real>)) {
      throw DomainError("Bloch polar angle outside [0, pi]");
    }
    if (!(phi >= Real(0) && phi < 2 * std::numbers::pi_v<Real>)) {
      throw DomainError("Bloch azimuth outside [0, 2pi)");
    }
  }

  Eigen::Matrix<Real, 3, 1> cartesian() const {
    using std::cos;
    using std::sin;
    return {r * sin(theta) * cos(phi), r * sin(theta) * sin(phi), r * cos(theta)};
  }
};

/// Spectrum in descending order; eigenvectors are the matching columns.
template <typename Real = double>
struct SpectralDecomposition {
  RVector<Real> eigenvalues;
  CMatrix<Real> eigenvectors;
  Real rank_threshold{static_cast<Real>(tolerance::default_rank_threshold)};

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }

  /// Eigenvalues below the rank threshold count as exact zeros downstream.
  bool is_null(Eigen::Index j) const { return eigenvalues(j) < rank_threshold; }

  Eigen::Index rank() const {
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < dim(); ++j) k += is_null(j) ? 0 : 1;
    return k;
  }

  /// Population with null-space members clamped to exactly zero.
  Real population(Eigen::Index j) const { return is_null(j) ? Real(0) : eigenvalues(j); }

  CMatrix<Real> reconstruct() const {
    return eigenvectors * eigenvalues.template cast<Complex<Real>>().asDiagonal() * eigenvectors.adjoint();
  }
};

template <typename Real = double>
DensityOperator<Real> from_bloch(const BlochVector<Real>& b) {
  b.validate();
  const Eigen::Matrix<Real, 3, 1> v = b.cartesian();
  CMatrix<Real> m = pauli::identity<Real>() + v(0) * pauli::x<Real>() + v(1) * pauli::y<Real>() +
                    v(2) * pauli::z<Real>();
  return DensityOperator<Real>::from_numeric(m * Real(0.5));
}

/// Cartesian Bloch vector of a qubit density operator.
template <typename Real = double>
Eigen::Matrix<Real, 3, 1> bloch_cartesian(const DensityOperator<Real>& rho) {
  if (rho.dim() != 2) throw DimensionError("Bloch representation requires a qubit (dim = 2)");
  const auto& m = rho.matrix();
  return {2 * m(0, 1).real(), -2 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

template <typename Real = double>
BlochVector<Real> to_bloch(const DensityOperator<Real>& rho) {
  using std::atan2;
  using std::acos;
  const Eigen::Matrix<Real, 3, 1> v = bloch_cartesian(rho);
  BlochVector<Real> b;
  b.r = std::min(Real(1), v.norm());
  if (b.r == Real(0)) return b;
  b.theta = acos(std::clamp(v(2) / v.norm(), Real(-1), Real(1)));
  if (v(0) != Real(0) || v(1) != Real(0)) {
    Real phi = atan2(v(1), v(0));
    if (phi < Real(0)) phi += 2 * std::numbers::pi_v<Real>;
    if (phi >= 2 * std::numbers::pi_v<Real>) phi = Real(0);
    b.phi = phi;
  }
  return b;
}

namespace detail {

/// Rotates the column so its first non-negligible component is real positive.
template <typename Real>
void fix_phase(Eigen::Ref<CVector<Real>> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Real a = std::abs(v(i));
    if (a > scaled_tolerance<Real>(1e-12)) {
      v *= std::conj(v(i)) / a;
      v(i) = Complex<Real>(a, 0);
      return;
    }
  }
}

template <typename Real>
bool lexicographically_greater(const CVector<Real>& a, const CVector<Real>& b) {
  const Real eps = scaled_tolerance<Real>(1e-12);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > eps) return a(i).real() > b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > eps) return a(i).imag() > b(i).imag();
  }
  return false;
}

}  // namespace detail

/// Eigendecomposition of any Hermitian matrix with the library's ordering
/// convention: descending eigenvalues, phase-fixed eigenvectors, ties broken
/// by lexicographic order of the eigenvector components.
template <typename Derived>
SpectralDecomposition<typename Derived::RealScalar> hermitian_spectrum(
    const Eigen::MatrixBase<Derived>& a,
    typename Derived::RealScalar rank_threshold = tolerance::default_rank_threshold) {
  using Real = typename Derived::RealScalar;
  using Matrix = CMatrix<Real>;
  if (a.rows() != a.cols()) throw DimensionError("matrix is not square");
  if (hermiticity_defect(a) > scaled_tolerance<Real>(1e-10) * std::max<Real>(1, a.cwiseAbs().maxCoeff())) {
    throw ValidationError("matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(hermitian_part(a))};
  const Eigen::Index n = a.rows();
  Matrix vecs = es.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) detail::fix_phase<Real>(vecs.col(j));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Real tie = scaled_tolerance<Real>(1e-14);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    const Real li = es.eigenvalues()(i);
    const Real lj = es.eigenvalues()(j);
    if (std::abs(li - lj) > tie) return li > lj;
    return detail::lexicographically_greater<Real>(vecs.col(i), vecs.col(j));
  });

  SpectralDecomposition<Real> out;
  out.rank_threshold = rank_threshold;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = es.eigenvalues()(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

template <typename Real>
SpectralDecomposition<Real> spectral_decompose(const DensityOperator<Real>& rho,
                                               Real rank_threshold = tolerance::default_rank_threshold) {
  if (!(rank_threshold > Real(0) && rank_threshold <= Real(1e-6))) {
    throw DomainError("rank threshold must lie in (0, 1e-6]");
  }
  return hermitian_spectrum(rho.matrix(), rank_threshold);
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues at the
/// rounding level of the largest one are zeroed before rooting, since their
/// square roots would otherwise leak ~1e-8 into rank-deficient results.
template <typename Derived>
CMatrix<typename Derived::RealScalar> psd_sqrt(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  using Matrix = CMatrix<Real>;
  Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(hermitian_part(a))};
  const Real floor = 16 * std::numeric_limits<Real>::epsilon() * std::max(Real(0), es.eigenvalues().maxCoeff());
  const RVector<Real> roots =
      es.eigenvalues().unaryExpr([floor](Real v) { return v <= floor ? Real(0) : std::sqrt(v); });
  return es.eigenvectors() * roots.template cast<Complex<Real>>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, evaluated as the
/// squared trace norm of sqrt(rho) sqrt(sigma).
template <typename Real>
Real fidelity(const DensityOperator<Real>& rho, const DensityOperator<Real>& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: dimension mismatch");
  const CMatrix<Real> product = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
  Eigen::JacobiSVD<CMatrix<Real>> svd(product);
  const Real root = svd.singularValues().sum();
  return std::clamp(root * root, Real(0), Real(1));
}

/// Quantum affinity Tr(sqrt(rho) sqrt(sigma)).
template <typename Real>
Real affinity(const DensityOperator<Real>& rho, const DensityOperator<Real>& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("affinity: dimension mismatch");
  const Complex<Real> tr = (psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix())).trace();
  return std::clamp(tr.real(), Real(0), Real(1));
}

/// Closed-form qubit fidelity from two Bloch vectors.
template <typename Real>
Real qubit_fidelity(const BlochVector<Real>& a, const BlochVector<Real>& b) {
  a.validate();
  b.validate();
  const Real overlap = a.cartesian().dot(b.cartesian());
  const Real mixedness = std::max(Real(0), (1 - a.r * a.r) * (1 - b.r * b.r));
  return std::clamp(Real(0.5) * (1 + overlap + std::sqrt(mixedness)), Real(0), Real(1));
}

/// Closed-form qubit affinity. With a zero radius the minus coefficient
/// vanishes, so the undefined direction cosine never enters.
template <typename Real>
Real qubit_affinity(const BlochVector<Real>& a, const BlochVector<Real>& b) {
  a.validate();
  b.validate();
  auto plus = [](Real r) { return std::sqrt(1 + r) + std::sqrt(1 - r); };
  auto minus = [](Real r) { return std::sqrt(1 + r) - std::sqrt(1 - r); };
  Real value = plus(a.r) * plus(b.r);
  if (a.r > Real(0) && b.r > Real(0)) {
    const Real cosine = std::clamp(a.cartesian().dot(b.cartesian()) / (a.r * b.r), Real(-1), Real(1));
    value += minus(a.r) * minus(b.r) * cosine;
  }
  return std::clamp(value / 4, Real(0), Real(1));
}

}  // namespace gqsl

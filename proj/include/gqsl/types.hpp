#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gqsl {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Double-precision shorthands used by the non-templated modules.
using cplx = Complex<double>;
using CMatrixd = CMatrix<double>;
using CVectord = CVector<double>;
using RMatrixd = RMatrix<double>;
using RVectord = RVector<double>;

namespace pauli {

template <typename Real = double>
CMatrix<Real> identity() {
  return CMatrix<Real>::Identity(2, 2);
}

template <typename Real = double>
CMatrix<Real> x() {
  CMatrix<Real> m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

template <typename Real = double>
CMatrix<Real> y() {
  CMatrix<Real> m(2, 2);
  m << Complex<Real>(0, 0), Complex<Real>(0, -1), Complex<Real>(0, 1), Complex<Real>(0, 0);
  return m;
}

template <typename Real = double>
CMatrix<Real> z() {
  CMatrix<Real> m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace pauli

/// Largest entrywise modulus of A - A^dagger.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// (A + A^dagger) / 2.
template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return Plain((a + a.adjoint()) * typename Derived::RealScalar(0.5));
}

template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  using Plain = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return Plain(a * b - b * a);
}

}  // namespace gqsl

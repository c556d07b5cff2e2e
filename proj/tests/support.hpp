#pragma once

// Test-side oracles and random inputs, independent of the library numerics.

#include <cmath>
#include <limits>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "gqsl/channels.hpp"

namespace testing_support {

using gqsl::CMatrixd;
using gqsl::cplx;
using gqsl::State;

/// Composite Simpson rule with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Complete elliptic integral of the second kind by the arithmetic-geometric mean.
inline double complete_e_agm(double m) {
  double a = 1.0, g = std::sqrt(1.0 - m), sum = m / 2.0, pow2 = 0.5;
  for (int k = 0; k < 64 && std::abs(a - g) > 4 * std::numeric_limits<double>::epsilon() * a; ++k) {
    const double an = (a + g) / 2.0;
    const double cn = (a - g) / 2.0;
    g = std::sqrt(a * g);
    a = an;
    pow2 *= 2.0;
    sum += pow2 * cn * cn;
  }
  return M_PI / (2.0 * a) * (1.0 - sum);
}

inline CMatrixd random_complex(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> n;
  CMatrixd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

inline State random_state(std::mt19937_64& rng, Eigen::Index d) {
  const CMatrixd g = random_complex(rng, d, d);
  CMatrixd m = g * g.adjoint();
  m /= m.trace().real();
  return State::from_numeric(m);
}

inline CMatrixd random_hermitian(std::mt19937_64& rng, Eigen::Index d) {
  const CMatrixd g = random_complex(rng, d, d);
  return 0.5 * (g + g.adjoint());
}

inline CMatrixd random_unitary(std::mt19937_64& rng, Eigen::Index d) {
  Eigen::HouseholderQR<CMatrixd> qr(random_complex(rng, d, d));
  return qr.householderQ() * CMatrixd::Identity(d, d);
}

inline gqsl::Bloch random_bloch(std::mt19937_64& rng, double rmin = 0.0, double rmax = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {rmin + (rmax - rmin) * u(rng), std::acos(1.0 - 2.0 * u(rng)), 2.0 * M_PI * u(rng) * 0.999999};
}

inline double max_abs(const CMatrixd& m) { return m.cwiseAbs().maxCoeff(); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support

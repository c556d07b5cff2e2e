#pragma once

// Morozova-Cencov functions, the kernel c^f and the contractive metric built
// from it, evaluated from (rho, drho) in the eigenbasis or from eigen data.

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gqsl/error.hpp"
#include "gqsl/qstate.hpp"
#include "gqsl/types.hpp"

namespace gqsl {

enum class MetricKind { QuantumFisher, WignerYanase, Minimal, Custom };

inline const char* metric_tag(MetricKind k) {
  switch (k) {
    case MetricKind::QuantumFisher: return "qf";
    case MetricKind::WignerYanase: return "wy";
    case MetricKind::Minimal: return "min";
    case MetricKind::Custom: return "custom";
  }
  return "?";
}

template <typename Real = double>
class MCFunction {
 public:
  using Evaluator = std::function<Real(Real)>;

  static MCFunction quantum_fisher() { return MCFunction(MetricKind::QuantumFisher, "qf", {}, Real(0.5)); }
  static MCFunction wigner_yanase() { return MCFunction(MetricKind::WignerYanase, "wy", {}, Real(0.25)); }
  static MCFunction minimal() { return MCFunction(MetricKind::Minimal, "min", {}, Real(0)); }

  /// User-supplied f. Operator monotonicity cannot be checked numerically;
  /// normalization, self-inversiveness and the f_min <= f <= f_max sandwich
  /// are enforced on a logarithmic grid over [0.01, 100]. The evaluator must
  /// be stateless.
  static MCFunction custom(std::string name, Evaluator f, Real f_at_zero) {
    if (!f) throw ValidationError("custom MC function: empty evaluator");
    if (!(f_at_zero >= Real(0) && f_at_zero <= Real(0.5))) {
      throw ValidationError("custom MC function: f(0) must lie in [0, 1/2]");
    }
    if (std::abs(f(Real(1)) - Real(1)) > Real(1e-12)) {
      throw ValidationError("custom MC function: not normalized, f(1) != 1");
    }
    constexpr int kGrid = 201;
    for (int i = 0; i < kGrid; ++i) {
      const Real t = std::pow(Real(10), Real(-2) + Real(4) * Real(i) / Real(kGrid - 1));
      const Real ft = f(t);
      if (!std::isfinite(ft)) throw ValidationError("custom MC function: non-finite value");
      if (std::abs(ft - t * f(1 / t)) > Real(1e-10)) {
        throw ValidationError("custom MC function: violates f(t) = t f(1/t)");
      }
      const Real slack = Real(1e-12) * std::max(Real(1), t);
      if (ft < 2 * t / (1 + t) - slack || ft > (1 + t) / 2 + slack) {
        throw ValidationError("custom MC function: outside the f_min <= f <= f_max sandwich");
      }
    }
    return MCFunction(MetricKind::Custom, std::move(name), std::move(f), f_at_zero);
  }

  MetricKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  Real at_zero() const noexcept { return f0_; }

  /// eval_f: f(t) for t >= 0.
  Real operator()(Real t) const {
    if (!(t >= Real(0))) throw DomainError("MC function evaluated at negative argument");
    if (t == Real(0)) return f0_;
    switch (kind_) {
      case MetricKind::QuantumFisher: return (1 + t) / 2;
      case MetricKind::WignerYanase: {
        const Real s = std::sqrt(t) + 1;
        return s * s / 4;
      }
      case MetricKind::Minimal: return 2 * t / (1 + t);
      case MetricKind::Custom: break;
    }
    return eval_(t);
  }

 private:
  MCFunction(MetricKind k, std::string name, Evaluator e, Real f0)
      : kind_(k), name_(std::move(name)), eval_(std::move(e)), f0_(f0) {}

  MetricKind kind_;
  std::string name_;
  Evaluator eval_;
  Real f0_;
};

template <typename Real>
Real eval_f(const MCFunction<Real>& f, Real t) {
  return f(t);
}

/// c^f(x, y); `infinite` tags the f(0) = 0 boundary instead of a float inf.
template <typename Real = double>
struct KernelValue {
  Real value{0};
  bool infinite{false};
};

template <typename Real>
KernelValue<Real> c_kernel(const MCFunction<Real>& f, Real x, Real y) {
  if (!(x >= Real(0) && y >= Real(0))) throw DomainError("kernel arguments must be nonnegative");
  if (x == Real(0) && y == Real(0)) throw DomainError("kernel undefined at x = y = 0");
  // Symmetric in (x, y); keep the larger argument as y so that x / y <= 1.
  if (x > y) std::swap(x, y);
  switch (f.kind()) {
    case MetricKind::QuantumFisher: return {2 / (x + y), false};
    case MetricKind::WignerYanase: {
      const Real s = std::sqrt(x) + std::sqrt(y);
      return {4 / (s * s), false};
    }
    case MetricKind::Minimal:
      if (x == Real(0)) return {Real(0), true};
      return {(x + y) / (2 * x * y), false};
    case MetricKind::Custom: break;
  }
  if (x == Real(0)) {
    if (f.at_zero() == Real(0)) return {Real(0), true};
    return {1 / (y * f.at_zero()), false};
  }
  return {1 / (y * f(x / y)), false};
}

template <typename Real = double>
struct MetricSplit {
  Real classical{0};
  Real quantum{0};
  Real total() const noexcept { return classical + quantum; }
};

template <typename Real = double>
struct MetricTensor {
  RMatrix<Real> classical;
  RMatrix<Real> quantum;
  RMatrix<Real> total() const { return classical + quantum; }
};

/// Squared line element (1/4)[sum_j D_jj^2 / p_j + 2 sum_{j<l} c^f(p_j,p_l) |D_jl|^2]
/// with D = V^dagger drho V in the eigenbasis of the state.
template <typename Real, typename Derived>
MetricSplit<Real> ds2_from_drho(const SpectralDecomposition<Real>& spec, const Eigen::MatrixBase<Derived>& drho,
                                const MCFunction<Real>& f) {
  const Eigen::Index n = spec.dim();
  if (drho.rows() != n || drho.cols() != n) throw DimensionError("ds2_from_drho: drho dimension mismatch");
  const Real scale = std::max(Real(1), drho.cwiseAbs().maxCoeff());
  const Real tol = scaled_tolerance<Real>(1e-10) * scale;
  if (hermiticity_defect(drho) > tol) throw ValidationError("ds2_from_drho: drho is not Hermitian");
  if (std::abs(drho.trace()) > tol) throw ValidationError("ds2_from_drho: drho is not traceless");

  const CMatrix<Real> d = spec.eigenvectors.adjoint() * drho * spec.eigenvectors;
  const Real negligible = scaled_tolerance<Real>(1e-12) * scale;

  MetricSplit<Real> out;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (spec.is_null(j)) continue;
    const Real djj = d(j, j).real();
    out.classical += djj * djj / spec.eigenvalues(j);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = j + 1; l < n; ++l) {
      const Real mod2 = std::norm(d(j, l));
      const Real pj = spec.population(j);
      const Real pl = spec.population(l);
      if (pj == Real(0) && pl == Real(0)) {
        if (std::sqrt(mod2) > negligible) throw DivergentMetricError("coherence between two null eigenvectors");
        continue;
      }
      const KernelValue<Real> c = c_kernel(f, pj, pl);
      if (c.infinite) {
        if (std::sqrt(mod2) > negligible) {
          throw DivergentMetricError("metric with f(0) = 0 is divergent at a rank-deficient state");
        }
        continue;
      }
      out.quantum += 2 * c.value * mod2;
    }
  }
  out.classical /= 4;
  out.quantum /= 4;
  return out;
}

/// F_{mu nu} = (1/4) sum_j dp_j^mu dp_j^nu / p_j and
/// Q_{mu nu} = (1/2) sum_{j<l} c^f(p_j,p_l) (p_j - p_l)^2 Re(A^mu_{jl} A^nu_{lj}).
template <typename Real>
MetricTensor<Real> metric_tensor(const RVector<Real>& populations, const std::vector<RVector<Real>>& dpopulations,
                                 const std::vector<CMatrix<Real>>& connections, const MCFunction<Real>& f,
                                 Real rank_threshold = tolerance::default_rank_threshold) {
  const Eigen::Index n = populations.size();
  const std::size_t m = dpopulations.size();
  if (connections.size() != m) throw DimensionError("metric_tensor: parameter count mismatch");
  for (std::size_t mu = 0; mu < m; ++mu) {
    if (dpopulations[mu].size() != n) throw DimensionError("metric_tensor: population derivative size");
    if (connections[mu].rows() != n || connections[mu].cols() != n) {
      throw DimensionError("metric_tensor: connection matrix size");
    }
    const Real scale = std::max(Real(1), connections[mu].cwiseAbs().maxCoeff());
    if (hermiticity_defect(connections[mu]) > scaled_tolerance<Real>(1e-10) * scale) {
      throw ValidationError("metric_tensor: connection matrix is not Hermitian");
    }
  }
  const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };

  MetricTensor<Real> out{RMatrix<Real>::Zero(idx(m), idx(m)), RMatrix<Real>::Zero(idx(m), idx(m))};
  for (Eigen::Index j = 0; j < n; ++j) {
    const Real p = populations(j);
    if (p < rank_threshold) continue;
    for (std::size_t mu = 0; mu < m; ++mu) {
      for (std::size_t nu = 0; nu < m; ++nu) {
        out.classical(idx(mu), idx(nu)) += dpopulations[mu](j) * dpopulations[nu](j) / p;
      }
    }
  }
  out.classical /= 4;

  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = j + 1; l < n; ++l) {
      const Real pj = populations(j) < rank_threshold ? Real(0) : populations(j);
      const Real pl = populations(l) < rank_threshold ? Real(0) : populations(l);
      const Real gap2 = (pj - pl) * (pj - pl);
      if (gap2 == Real(0)) continue;
      const KernelValue<Real> c = c_kernel(f, pj, pl);
      for (std::size_t mu = 0; mu < m; ++mu) {
        for (std::size_t nu = 0; nu < m; ++nu) {
          const Real w = (connections[mu](j, l) * connections[nu](l, j)).real();
          if (c.infinite) {
            if (std::abs(w) > scaled_tolerance<Real>(1e-24)) {
              throw DivergentMetricError("metric with f(0) = 0 is divergent at a rank-deficient state");
            }
            continue;
          }
          out.quantum(idx(mu), idx(nu)) += c.value * gap2 * w / 2;
        }
      }
    }
  }
  return out;
}

/// Unitary-case metric: connections are the mean-shifted generators in the
/// eigenbasis of the state; populations are constant so F = 0.
template <typename Real>
MetricTensor<Real> unitary_metric(const SpectralDecomposition<Real>& spec, const std::vector<CMatrix<Real>>& generators,
                                  const MCFunction<Real>& f) {
  const Eigen::Index n = spec.dim();
  std::vector<RVector<Real>> dp;
  std::vector<CMatrix<Real>> conn;
  RVector<Real> p(n);
  for (Eigen::Index j = 0; j < n; ++j) p(j) = spec.population(j);
  const CMatrix<Real> rho = spec.reconstruct();
  for (const auto& h : generators) {
    if (h.rows() != n || h.cols() != n) throw DimensionError("unitary_metric: generator dimension mismatch");
    if (hermiticity_defect(h) > scaled_tolerance<Real>(1e-10) * std::max<Real>(1, h.cwiseAbs().maxCoeff())) {
      throw ValidationError("unitary_metric: generator is not Hermitian");
    }
    const Complex<Real> mean = (rho * h).trace();
    const CMatrix<Real> shifted = h - mean.real() * CMatrix<Real>::Identity(n, n);
    conn.push_back(hermitian_part(CMatrix<Real>(spec.eigenvectors.adjoint() * shifted * spec.eigenvectors)));
    dp.push_back(RVector<Real>::Zero(n));
  }
  return metric_tensor(p, dp, conn, f, spec.rank_threshold);
}

}  // namespace gqsl

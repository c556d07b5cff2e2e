#include "gqsl/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gqsl/engine.hpp"
#include "gqsl/error.hpp"

namespace gqsl {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

/// Quadrature settings for the one-dimensional integrals: twice the engine
/// default resolution with graded start, since the integrands carry an
/// inverse square root at u = 0 for pure initial states.
QuadratureConfig oracle_quadrature() {
  QuadratureConfig q;
  q.panels = 512;
  q.order = 16;
  q.rel_target = 1e-12;
  return q;
}

bool pd_fixed_point(const PDClosedFormParams& p) { return p.delta_z() <= 0.0 || p.r0 == 0.0; }

bool ad_fixed_point(const ADClosedFormParams& p) { return 1.0 - p.r0 * std::cos(p.theta0) <= 0.0; }

double theta_fn(double x, double delta) {
  const double c = std::cos(x);
  const double s2 = std::sin(x) * std::sin(x);
  const double root = std::sqrt(delta * delta + s2);
  double value = std::atan2(c, root);
  if (delta == 0.0) return value;
  if (std::abs(c) >= 1.0 - 1e-12) {
    throw SingularPointError("minimal-metric closed form: |cos Phi| reaches 1", x);
  }
  const double dd = delta * (delta + root);
  value += delta * (-std::log(std::tan(x / 2)));  // arctanh(cos x)
  value += 0.5 * delta * std::log((1.0 - c + dd) / (1.0 + c + dd));
  return value;
}

}  // namespace

double carlson_rf(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z < 0.0) throw DomainError("carlson_rf: negative argument");
  if ((x == 0.0) + (y == 0.0) + (z == 0.0) > 1) throw DomainError("carlson_rf: more than one zero argument");
  constexpr double kTol = 0.0008;
  double xt = x, yt = y, zt = z, ave = 0, dx = 0, dy = 0, dz = 0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = (xt + yt + zt) / 3.0;
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kTol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
}

double carlson_rd(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z <= 0.0) throw DomainError("carlson_rd: invalid argument");
  if (x == 0.0 && y == 0.0) throw DomainError("carlson_rd: x and y both zero");
  constexpr double kTol = 0.0005;
  constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0, c4 = 3.0 / 26.0;
  constexpr double c5 = 0.25 * c3, c6 = 1.5 * c4;
  double xt = x, yt = y, zt = z, sum = 0.0, fac = 1.0, ave = 0, dx = 0, dy = 0, dz = 0;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lam));
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = 0.2 * (xt + yt + 3.0 * zt);
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kTol) break;
  }
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  return 3.0 * sum + fac * (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) + dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
                         (ave * std::sqrt(ave));
}

double ellip_e_incomplete(double phi, double m) {
  if (!(phi >= 0.0 && phi <= kHalfPi + 1e-15)) throw DomainError("ellip_e_incomplete: phi outside [0, pi/2]");
  if (!(m >= 0.0 && m <= 1.0)) throw DomainError("ellip_e_incomplete: m outside [0, 1]");
  phi = std::min(phi, kHalfPi);
  const double s = std::sin(phi);
  if (phi == 0.0) return 0.0;
  if (m == 0.0) return phi;
  if (m == 1.0) return s;
  const double c = std::cos(phi);
  const double c2 = phi == kHalfPi ? 0.0 : c * c;
  const double k = 1.0 - m * s * s;
  return s * carlson_rf(c2, k, 1.0) - (m / 3.0) * s * s * s * carlson_rd(c2, k, 1.0);
}

void PDClosedFormParams::validate() const {
  if (!(r0 >= 0.0 && r0 <= 1.0)) throw DomainError("r0 outside [0, 1]");
  if (!(theta0 >= 0.0 && theta0 <= std::numbers::pi)) throw DomainError("theta0 outside [0, pi]");
  if (!std::isfinite(beta)) throw DomainError("beta must be finite");
  if (!(gamma_tau >= 0.0) || !std::isfinite(gamma_tau)) throw DomainError("gamma_tau must be nonnegative");
}

double PDClosedFormParams::kappa2() const { return beta * beta / (1.0 + beta * beta); }

double PDClosedFormParams::delta_z() const {
  const double c = std::cos(theta0);
  return 1.0 - r0 * r0 * c * c;
}

double PDClosedFormParams::alpha() const {
  const double dz = delta_z();
  if (dz <= 0.0) return 0.0;
  return std::sqrt(std::clamp(1.0 - (1.0 - r0 * r0) / dz, 0.0, 1.0));
}

void ADClosedFormParams::validate() const {
  if (!(r0 >= 0.0 && r0 <= 1.0)) throw DomainError("r0 outside [0, 1]");
  if (!(theta0 >= 0.0 && theta0 <= std::numbers::pi)) throw DomainError("theta0 outside [0, pi]");
  if (!(gamma_tau >= 0.0) || !std::isfinite(gamma_tau)) throw DomainError("gamma_tau must be nonnegative");
}

double ADClosedFormParams::eps2() const {
  const double one_minus = 1.0 - r0 * std::cos(theta0);
  if (one_minus <= 0.0) return 0.0;
  const double s = std::sin(theta0);
  return r0 * r0 * s * s / (2.0 * one_minus);
}

double ADClosedFormParams::varpi() const {
  const double one_minus = 1.0 - r0 * std::cos(theta0);
  return std::sqrt(std::clamp(one_minus / (2.0 * (1.0 - eps2())), 0.0, 1.0));
}

double ADClosedFormParams::delta2() const { return eps2() / (4.0 * (1.0 - eps2())); }

double pd_length_qf(const PDClosedFormParams& p) {
  p.validate();
  if (p.gamma_tau == 0.0 || pd_fixed_point(p)) return 0.0;
  const double a = p.alpha();
  const double k2 = p.kappa2();
  const double pref = 0.5 * std::sqrt((1.0 + p.beta * p.beta) * p.delta_z());
  return pref * (ellip_e_incomplete(std::asin(a), k2) - ellip_e_incomplete(std::asin(a * std::exp(-p.gamma_tau)), k2));
}

double pd_length_wy(const PDClosedFormParams& p) {
  p.validate();
  if (p.gamma_tau == 0.0 || pd_fixed_point(p)) return 0.0;
  const double a = p.alpha();
  const double k2 = p.kappa2();
  const double dz = p.delta_z();
  const double c2 = std::cos(p.theta0) * std::cos(p.theta0);
  const double s2 = std::sin(p.theta0) * std::sin(p.theta0);
  const double r2 = p.r0 * p.r0;
  const auto integrand = [&](double u) {
    const double e2 = std::exp(-2.0 * u);
    const double a2e = a * a * e2;
    const double root = 1.0 + std::sqrt(dz * (1.0 - a2e));
    const double omega = r2 * (c2 + e2 * k2 * s2) / (root * root);
    const double psi = std::sqrt(omega + (1.0 - k2 * a2e) / (1.0 - a2e));
    return a * std::exp(-u) * psi;
  };
  const double pref = 0.5 * std::sqrt((1.0 + p.beta * p.beta) * dz);
  return pref * integrate(integrand, 0.0, p.gamma_tau, oracle_quadrature());
}

double pd_length_min(const PDClosedFormParams& p) {
  p.validate();
  if (p.gamma_tau == 0.0 || pd_fixed_point(p)) return 0.0;
  const double a = p.alpha();
  return 0.5 * std::sqrt(1.0 + p.beta * p.beta) * (std::asin(a) - std::asin(a * std::exp(-p.gamma_tau)));
}

double ad_length_qf(const ADClosedFormParams& p) {
  p.validate();
  if (p.gamma_tau == 0.0 || ad_fixed_point(p)) return 0.0;
  const double e2 = p.eps2();
  const double w = p.varpi();
  return std::sqrt(1.0 - e2) *
         (ellip_e_incomplete(std::asin(w), e2) - ellip_e_incomplete(std::asin(w * std::exp(-p.gamma_tau / 2)), e2));
}

double ad_length_wy(const ADClosedFormParams& p) {
  p.validate();
  if (p.gamma_tau == 0.0 || ad_fixed_point(p)) return 0.0;
  const double e2 = p.eps2();
  const double w = p.varpi();
  const auto integrand = [&](double u) {
    const double eh = std::exp(-u / 2);
    const double w2e = w * w * eh * eh;
    const double num = 1.0 + 2.0 * (1.0 - e2) * w2e;
    const double den = 1.0 + 2.0 * (1.0 - e2) * w * eh * std::sqrt(std::max(0.0, 1.0 - w2e));
    const double omega = e2 * num * num / (den * den);
    const double psi = std::sqrt(omega + (1.0 - e2 * w2e) / (1.0 - w2e));
    return w * eh * psi;
  };
  return 0.5 * std::sqrt(1.0 - e2) * integrate(integrand, 0.0, p.gamma_tau, oracle_quadrature());
}

double ad_length_min(const ADClosedFormParams& p) {
  p.validate();
  if (p.gamma_tau == 0.0 || ad_fixed_point(p)) return 0.0;
  const double w = p.varpi();
  const double delta = std::sqrt(p.delta2());
  const double phi0 = std::asin(w);
  const double phit = std::asin(w * std::exp(-p.gamma_tau / 2));
  return theta_fn(phit, delta) - theta_fn(phi0, delta);
}

double unitary_qubit_tightness_gap(double r0, double phi) {
  if (!(r0 >= 0.0 && r0 < 1.0)) throw DomainError("r0 outside [0, 1)");
  if (!(phi >= 0.0 && phi <= std::numbers::pi)) throw DomainError("phi outside [0, pi]");
  if (r0 == 0.0 || phi == 0.0) return 0.0;
  const double s = std::sqrt(1.0 - r0 * r0);
  const double half = std::sin(phi / 2);
  const double bures = std::asin(r0 * half);
  const double hellinger = 2.0 * std::asin(std::sqrt((1.0 - s) / 2.0) * half);
  return bures / hellinger - std::sqrt((1.0 + s) / 2.0);
}

}  // namespace gqsl

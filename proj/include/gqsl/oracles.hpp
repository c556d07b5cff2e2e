#pragma once

// Closed-form path lengths for the dephasing and amplitude-damping qubit
// channels, the incomplete elliptic integral they need, and the single-qubit
// unitary tightness gap. Used as ground truth for the quadrature engine.

namespace gqsl {

/// Carlson symmetric integrals R_F and R_D (duplication algorithm).
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

/// Incomplete elliptic integral of the second kind E(phi | m) for
/// phi in [0, pi/2], m in [0, 1].
double ellip_e_incomplete(double phi, double m);

struct PDClosedFormParams {
  double r0{0};
  double theta0{0};
  double beta{0};       // omega0 / Gamma
  double gamma_tau{0};  // Gamma tau

  void validate() const;
  double kappa2() const;       // beta^2 / (1 + beta^2)
  double delta_z() const;      // 1 - r0^2 cos^2 theta0
  double alpha() const;        // sqrt(1 - (1 - r0^2) / delta_z)
};

struct ADClosedFormParams {
  double r0{0};
  double theta0{0};
  double gamma_tau{0};

  void validate() const;
  double eps2() const;    // r0^2 sin^2 theta0 / (2 (1 - r0 cos theta0))
  double varpi() const;   // sqrt((1 - r0 cos theta0) / (2 (1 - eps2)))
  double delta2() const;  // eps2 / (4 (1 - eps2))
};

double pd_length_qf(const PDClosedFormParams& p);
double pd_length_wy(const PDClosedFormParams& p);
double pd_length_min(const PDClosedFormParams& p);

double ad_length_qf(const ADClosedFormParams& p);
double ad_length_wy(const ADClosedFormParams& p);
double ad_length_min(const ADClosedFormParams& p);

/// Bures-to-Hellinger angle ratio minus sqrt((1 + sqrt(1 - r0^2)) / 2) for a
/// qubit of Bloch radius r0 rotated by the relative angle phi.
double unitary_qubit_tightness_gap(double r0, double phi);

}  // namespace gqsl

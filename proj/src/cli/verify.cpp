#include "gqsl/cli/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gqsl/cli/experiments.hpp"
#include "gqsl/embedded_configs.hpp"
#include "gqsl/oracles.hpp"

namespace gqsl::cli {

namespace {

constexpr double kPi = std::numbers::pi;

using Rng = std::mt19937_64;

class Context {
 public:
  explicit Context(const VerifyOptions& o) : opts_(o) {}

  double tol(const std::string& key) const {
    if (const auto it = opts_.tolerance_overrides.find(key); it != opts_.tolerance_overrides.end()) return it->second;
    return default_tolerances().at(key);
  }
  bool full() const { return opts_.level == VerifyLevel::Full; }
  int threads() const { return opts_.threads; }

 private:
  const VerifyOptions& opts_;
};

/// Largest observed error against a bound, with the worst location.
struct Worst {
  double value{-std::numeric_limits<double>::infinity()};
  std::string where;
  int count{0};
  int violations{0};

  void add(double v, double bound, const std::string& at) {
    ++count;
    if (!(v <= bound)) ++violations;
    if (v > value || std::isnan(v)) {
      value = v;
      where = at;
    }
  }
  bool ok() const { return violations == 0; }
  std::string text(const std::string& label) const {
    std::ostringstream s;
    s << label << " max " << format_number(value) << " over " << count;
    if (violations) s << ", " << violations << " violations (worst at " << where << ")";
    return s.str();
  }
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt_params(std::initializer_list<std::pair<const char*, double>> ps) {
  std::ostringstream s;
  bool first = true;
  for (const auto& [k, v] : ps) {
    s << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  return s.str();
}

const std::vector<MC>& three_metrics() {
  static const std::vector<MC> fs{MC::quantum_fisher(), MC::wigner_yanase(), MC::minimal()};
  return fs;
}

struct PDCase {
  double r0, theta0, beta, gamma_tau;
};
struct ADCase {
  double r0, theta0, gamma_tau;
};

std::vector<PDCase> pd_grid() {
  std::vector<PDCase> out;
  for (double r0 : {0.25, 0.75})
    for (double th : {kPi / 4, kPi / 2})
      for (double beta : {0.0, 8.0})
        for (double gt : {2.0, 10.0}) out.push_back({r0, th, beta, gt});
  return out;
}

std::vector<ADCase> ad_grid() {
  std::vector<ADCase> out;
  for (double r0 : {0.25, 0.5})
    for (double th : {0.0, kPi / 4, kPi / 2})
      for (double gt : {5.0, 10.0}) out.push_back({r0, th, gt});
  return out;
}

struct Lengths {
  std::vector<double> ell;  // qf, wy, min
  State rho0;
  State rho_tau;
};

Lengths pd_engine(const PDCase& c) {
  const ChannelModel ch = ChannelModel::parallel_dephasing(c.beta, 1.0);
  const State rho0 = from_bloch(Bloch{c.r0, c.theta0, 0.0});
  return {path_lengths(ch, rho0, c.gamma_tau, three_metrics()), rho0, evolve(ch, rho0, c.gamma_tau)};
}

Lengths ad_engine(const ADCase& c) {
  const ChannelModel ch = ChannelModel::amplitude_damping(1.0);
  const State rho0 = from_bloch(Bloch{c.r0, c.theta0, 0.0});
  return {path_lengths(ch, rho0, c.gamma_tau, three_metrics()), rho0, evolve(ch, rho0, c.gamma_tau)};
}

Eigen::Vector3d random_direction(Rng& rng) {
  std::normal_distribution<double> n;
  Eigen::Vector3d v;
  do {
    v = {n(rng), n(rng), n(rng)};
  } while (v.norm() < 1e-6);
  return v.normalized();
}

State bloch_state(const Eigen::Vector3d& r) {
  CMatrixd m = 0.5 * (pauli::identity() + r.x() * pauli::x() + r.y() * pauli::y() + r.z() * pauli::z());
  return State::from_numeric(m);
}

struct UnitaryRun {
  ChannelModel ch;
  State rho0;
  double tau;
};

/// Random mixed qubit, random constant H = h0 I + h.sigma, rotation angle 2|h| tau in [0.05 pi, 0.95 pi].
/// The Bloch vector keeps an angle of at least asin(0.1) from the rotation axis.
UnitaryRun random_unitary_run(Rng& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const Eigen::Vector3d axis = random_direction(rng);
  Eigen::Vector3d dir;
  do {
    dir = random_direction(rng);
  } while (dir.cross(axis).norm() < 0.1);
  const double r = 0.05 + 0.9 * u01(rng);
  const double hnorm = 0.2 + 1.8 * u01(rng);
  const double h0 = 2.0 * u01(rng) - 1.0;
  const double angle = kPi * (0.05 + 0.9 * u01(rng));
  const Eigen::Vector3d h = hnorm * axis;
  const CMatrixd H = h0 * pauli::identity() + h.x() * pauli::x() + h.y() * pauli::y() + h.z() * pauli::z();
  return {ChannelModel::constant_hamiltonian(H), bloch_state(r * dir), angle / (2.0 * hnorm)};
}

CMatrixd random_complex(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n;
  CMatrixd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

State random_density(Rng& rng, Eigen::Index d) {
  const CMatrixd g = random_complex(rng, d, d);
  CMatrixd m = g * g.adjoint();
  m /= m.trace().real();
  return State::from_numeric(m);
}

CMatrixd random_hermitian(Rng& rng, Eigen::Index d) {
  const CMatrixd g = random_complex(rng, d, d);
  return 0.5 * (g + g.adjoint());
}

/// Kraus operators of a random channel from a random isometry d -> k d.
std::vector<CMatrixd> random_kraus(Rng& rng, Eigen::Index d, Eigen::Index k) {
  const CMatrixd g = random_complex(rng, d * k, d);
  Eigen::HouseholderQR<CMatrixd> qr(g);
  const CMatrixd v = qr.householderQ() * CMatrixd::Identity(d * k, d);
  std::vector<CMatrixd> out;
  for (Eigen::Index i = 0; i < k; ++i) out.emplace_back(v.block(i * d, 0, d, d));
  return out;
}

State apply_kraus(const std::vector<CMatrixd>& ks, const State& rho) {
  CMatrixd out = CMatrixd::Zero(rho.dim(), rho.dim());
  for (const auto& k : ks) out += k * rho.matrix() * k.adjoint();
  return State::from_numeric(out);
}

// ---------------------------------------------------------------------------

CriterionResult c1(const Context& ctx) {
  Worst w;
  for (const auto& c : pd_grid()) {
    const Lengths l = pd_engine(c);
    const double ref = pd_length_qf({c.r0, c.theta0, c.beta, c.gamma_tau});
    w.add(rel_err(l.ell[0], ref), ctx.tol("c1.rel"),
          fmt_params({{"r0", c.r0}, {"theta0", c.theta0}, {"beta", c.beta}, {"gamma_tau", c.gamma_tau}}));
  }
  return {1, "dephasing path length, quantum Fisher metric", w.ok(), w.text("relative error")};
}

CriterionResult c2(const Context& ctx) {
  Worst wy, mn;
  for (const auto& c : pd_grid()) {
    const Lengths l = pd_engine(c);
    const PDClosedFormParams p{c.r0, c.theta0, c.beta, c.gamma_tau};
    const std::string at =
        fmt_params({{"r0", c.r0}, {"theta0", c.theta0}, {"beta", c.beta}, {"gamma_tau", c.gamma_tau}});
    wy.add(rel_err(l.ell[1], pd_length_wy(p)), ctx.tol("c2.rel"), at);
    mn.add(rel_err(l.ell[2], pd_length_min(p)), ctx.tol("c2.rel"), at);
  }
  return {2, "dephasing path length, Wigner-Yanase and minimal metrics", wy.ok() && mn.ok(),
          wy.text("wy relative error") + "; " + mn.text("min relative error")};
}

CriterionResult c3(const Context& ctx) {
  Worst w[3];
  for (const auto& c : ad_grid()) {
    const Lengths l = ad_engine(c);
    const ADClosedFormParams p{c.r0, c.theta0, c.gamma_tau};
    const double ref[3] = {ad_length_qf(p), ad_length_wy(p), ad_length_min(p)};
    const std::string at = fmt_params({{"r0", c.r0}, {"theta0", c.theta0}, {"gamma_tau", c.gamma_tau}});
    for (int m = 0; m < 3; ++m) w[m].add(rel_err(l.ell[m], ref[m]), ctx.tol("c3.rel"), at);
  }
  return {3, "amplitude damping path lengths", w[0].ok() && w[1].ok() && w[2].ok(),
          w[0].text("qf") + "; " + w[1].text("wy") + "; " + w[2].text("min")};
}

CriterionResult c4(const Context& ctx) {
  const double slack = ctx.tol("c4.slack");
  const MC qf = MC::quantum_fisher();
  const MC wy = MC::wigner_yanase();
  Worst w;
  auto check = [&](const Lengths& l, const std::string& at) {
    w.add(geodesic_length(l.rho0, l.rho_tau, qf) - l.ell[0], slack, "qf " + at);
    w.add(geodesic_length(l.rho0, l.rho_tau, wy) - l.ell[1], slack, "wy " + at);
  };
  for (const auto& c : pd_grid()) check(pd_engine(c), "dephasing " + fmt_params({{"r0", c.r0}, {"beta", c.beta}}));
  for (const auto& c : ad_grid()) check(ad_engine(c), "damping " + fmt_params({{"r0", c.r0}, {"theta0", c.theta0}}));
  Rng rng(0x5eed0004);
  const int runs = ctx.full() ? 500 : 100;
  for (int k = 0; k < runs; ++k) {
    const UnitaryRun run = random_unitary_run(rng);
    const auto ells = path_lengths(run.ch, run.rho0, run.tau, {qf, wy});
    check({{ells[0], ells[1], 0.0}, run.rho0, evolve(run.ch, run.rho0, run.tau)}, "unitary run " + std::to_string(k));
  }
  return {4, "geodesic length never exceeds path length", w.ok(), w.text("L - ell")};
}

CriterionResult c5(const Context& ctx) {
  const MC qf = MC::quantum_fisher();
  const MC wy = MC::wigner_yanase();
  Worst dom;
  Rng rng(0x5eed0005);
  const int runs = ctx.full() ? 1000 : 200;
  for (int k = 0; k < runs; ++k) {
    const UnitaryRun run = random_unitary_run(rng);
    const auto reps = qsl_reports(run.ch, run.rho0, run.tau, {qf, wy});
    dom.add(*reps[0].tightness - *reps[1].tightness, ctx.tol("c5.slack"), "run " + std::to_string(k));
  }
  Worst gap;
  const int n = ctx.full() ? 200 : 50;
  for (int i = 0; i < n; ++i) {
    const double r0 = 0.99 * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double phi = kPi * j / (n - 1);
      gap.add(-unitary_qubit_tightness_gap(r0, phi), ctx.tol("c5.gap"), fmt_params({{"r0", r0}, {"phi", phi}}));
    }
  }
  return {5, "unitary qubit dominance of the quantum Fisher bound", dom.ok() && gap.ok(),
          dom.text("delta_qf - delta_wy") + "; " + gap.text("-gap")};
}

CriterionResult c6(const Context& ctx) {
  const std::vector<MC> fs{MC::quantum_fisher(), MC::wigner_yanase()};
  Worst pd;
  for (double gt : {0.5, 1.0, 2.0}) {
    const auto reps =
        qsl_reports(ChannelModel::parallel_dephasing(0.0, 1.0), from_bloch(Bloch{0.5, kPi / 2, 0.0}), gt, fs);
    for (const auto& r : reps) pd.add(*r.tightness, ctx.tol("c6.delta_pd"), r.metric_name + " gamma_tau=" + format_number(gt));
  }
  const double omega = 1.0;
  const double tau = kPi / omega;
  const ChannelModel rot = ChannelModel::constant_hamiltonian(0.5 * omega * pauli::z());
  const State plus = from_bloch(Bloch{1.0, kPi / 2, 0.0});
  const QSLReport r = tightness(rot, plus, tau, MC::quantum_fisher());
  const UnitaryBound mt = mt_bound(rot, plus, tau);
  const bool unitary_ok = *r.tightness <= ctx.tol("c6.delta_unitary") && rel_err(mt.time, tau) <= ctx.tol("c6.mt_rel");
  std::ostringstream d;
  d << pd.text("dephasing delta") << "; great circle delta " << format_number(*r.tightness) << ", bound/tau "
    << format_number(mt.time / tau);
  return {6, "saturation cases", pd.ok() && unitary_ok, d.str()};
}

double pd_ddelta(double beta) {
  const auto reps = qsl_reports(ChannelModel::parallel_dephasing(beta, 1.0), from_bloch(Bloch{0.5, kPi / 4, 0.0}),
                                10.0, {MC::quantum_fisher(), MC::wigner_yanase()});
  return *reps[0].tightness - *reps[1].tightness;
}

CriterionResult c7(const Context& ctx) {
  const double small = pd_ddelta(0.01);
  const double large = pd_ddelta(10.0);
  const int n = ctx.full() ? 50 : 20;
  QuadratureConfig q;
  q.panels = 32;
  const std::vector<MC> fs{MC::quantum_fisher(), MC::wigner_yanase()};
  std::vector<double> dd(static_cast<std::size_t>(n * n)), dwy(dd.size());
  parallel_for(dd.size(), ctx.threads(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / n;
    const int j = static_cast<int>(idx) % n;
    const double r0 = 0.01 + 0.98 * i / (n - 1);
    const double th = j == n - 1 ? kPi : kPi / 8 + (kPi - kPi / 8) * j / (n - 1);
    const auto reps = qsl_reports(ChannelModel::amplitude_damping(1.0), from_bloch(Bloch{r0, th, 0.0}), 10.0, fs, q);
    dd[idx] = *reps[0].tightness - *reps[1].tightness;
    dwy[idx] = *reps[1].tightness;
  });
  const double thr = ctx.tol("c7.ddelta");
  const double wy_thr = ctx.tol("c7.delta_wy");
  const double frac_dd =
      static_cast<double>(std::count_if(dd.begin(), dd.end(), [&](double v) { return v >= -thr; })) / dd.size();
  const double frac_wy =
      static_cast<double>(std::count_if(dwy.begin(), dwy.end(), [&](double v) { return v <= wy_thr; })) / dwy.size();
  const bool ok = small > 0.0 && large < 0.0 && frac_dd >= ctx.tol("c7.frac_ddelta") && frac_wy >= ctx.tol("c7.frac_wy");
  std::ostringstream d;
  d << "ddelta(beta=0.01) " << format_number(small) << ", ddelta(beta=10) " << format_number(large) << "; " << n << "x"
    << n << " damping grid: ddelta >= -tol on " << frac_dd * 100 << "%, delta_wy <= tol on " << frac_wy * 100 << "%";
  return {7, "metric regimes", ok, d.str()};
}

CriterionResult c8(const Context& ctx) {
  const std::vector<MC> fs{MC::quantum_fisher(), MC::wigner_yanase()};
  const State plus = from_bloch(Bloch{1.0, kPi / 2, 0.0});
  Worst closed;
  for (double beta : {0.1, 0.4, 1.0}) {
    const ChannelModel ch = ChannelModel::transversal_dephasing(beta, 1.0);
    for (double u : {0.5, 1.0, 3.0}) {
      const EvolvedState e = evolve_with_derivative(ch, plus, u);
      const Spectrum spec = spectral_decompose(e.rho);
      for (const MC& f : fs) {
        const Split num = ds2_from_drho(spec, e.drho, f);
        const Split ref = td_plus_FQ(beta, u, f);
        const std::string at = f.name() + " " + fmt_params({{"beta", beta}, {"u", u}});
        closed.add(rel_err(ref.classical, num.classical), ctx.tol("c8.rel"), "F " + at);
        closed.add(rel_err(ref.quantum, num.quantum), ctx.tol("c8.rel"), "Q " + at);
      }
    }
  }

  // Classical RK4 of the master equation, beta = 1 (oscillatory branch).
  Worst rk;
  {
    const double beta = 1.0;
    const ChannelModel ch = ChannelModel::transversal_dephasing(beta, 1.0);
    CMatrixd rho = plus.matrix();
    const double h = 1e-3;
    double t = 0.0;
    for (double target : {0.5, 1.0, 3.0}) {
      const int steps = static_cast<int>(std::lround((target - t) / h));
      for (int s = 0; s < steps; ++s) {
        const CMatrixd k1 = lindblad_rhs(ch, rho);
        const CMatrixd k2 = lindblad_rhs(ch, rho + 0.5 * h * k1);
        const CMatrixd k3 = lindblad_rhs(ch, rho + 0.5 * h * k2);
        const CMatrixd k4 = lindblad_rhs(ch, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      t = target;
      const State st = State::from_numeric(rho);
      const Spectrum spec = spectral_decompose(st);
      const CMatrixd drho = lindblad_rhs(ch, st.matrix());
      for (const MC& f : fs) {
        const Split num = ds2_from_drho(spec, drho, f);
        const Split ref = td_plus_FQ(beta, target, f);
        const std::string at = f.name() + " u=" + format_number(target);
        rk.add(rel_err(ref.classical, num.classical), ctx.tol("c8.rk4"), "F " + at);
        rk.add(rel_err(ref.quantum, num.quantum), ctx.tol("c8.rk4"), "Q " + at);
      }
    }
  }

  // Slow dephasing with a weak field: a short-time window where WY is tighter.
  const ChannelModel slow = ChannelModel::transversal_dephasing(0.01, 0.1);
  std::vector<double> times;
  for (int k = 1; k <= 20; ++k) times.push_back(0.5 * k);
  const auto ells = cumulative_path_lengths(slow, plus, times, fs);
  int wy_tighter = 0;
  double first = -1;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const State rt = evolve(slow, plus, times[k]);
    const double dq = (ells[k][0] - geodesic_length(plus, rt, fs[0])) / geodesic_length(plus, rt, fs[0]);
    const double dw = (ells[k][1] - geodesic_length(plus, rt, fs[1])) / geodesic_length(plus, rt, fs[1]);
    if (dw < dq) {
      ++wy_tighter;
      if (first < 0) first = times[k];
    }
  }
  std::ostringstream d;
  d << closed.text("closed form relative error") << "; " << rk.text("rk4 relative error") << "; WY tighter at "
    << wy_tighter << " of " << times.size() << " times";
  if (first >= 0) d << " (first t=" << format_number(first) << ")";
  return {8, "transversal dephasing", closed.ok() && rk.ok() && wy_tighter > 0, d.str()};
}

CriterionResult c9(const Context& ctx) {
  const double slack = ctx.tol("c9.slack");
  Rng rng(0x5eed0009);
  Worst luo;
  for (int k = 0; k < 10000; ++k) {
    const Eigen::Index d = 2 + k % 3;
    const State rho = random_density(rng, d);
    const CMatrixd h = random_hermitian(rng, d);
    const double var = variance(rho, h);
    luo.add(skew_information(rho, h) - var, slack * std::max(1.0, var), "sample " + std::to_string(k));
  }

  const MC qf = MC::quantum_fisher();
  const MC wy = MC::wigner_yanase();
  const MC mn = MC::minimal();
  Worst sandwich, order;
  for (int i = 0; i <= 2000; ++i) {
    const double t = std::pow(10.0, -4.0 + 8.0 * i / 2000.0);
    const double lo = 2 * t / (1 + t);
    const double hi = (1 + t) / 2;
    for (const MC* f : {&qf, &wy, &mn}) {
      const double v = (*f)(t);
      const double s = slack * std::max(1.0, t);
      sandwich.add(std::max(lo - v, v - hi), s, f->name() + " t=" + format_number(t));
    }
  }
  for (int i = 1; i <= 200; ++i) {
    for (int j = 1; j <= 200; ++j) {
      const double x = i / 200.0, y = j / 200.0;
      const double cq = c_kernel(qf, x, y).value;
      const double cw = c_kernel(wy, x, y).value;
      const double cm = c_kernel(mn, x, y).value;
      const double s = slack * cm;
      order.add(std::max(cq - cw, cw - cm), s, fmt_params({{"x", x}, {"y", y}}));
    }
  }
  int exact_failures = 0;
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    if (c_kernel(qf, p, 1.0 - p).value != 2.0) ++exact_failures;
  }

  Worst contract;
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index d = 2 + k % 2;
    const State rho = random_density(rng, d);
    const State sigma = random_density(rng, d);
    const auto ks = random_kraus(rng, d, 1 + k % 4);
    const State a = apply_kraus(ks, rho);
    const State b = apply_kraus(ks, sigma);
    for (const MC* f : {&qf, &wy}) {
      contract.add(geodesic_length(a, b, *f) - geodesic_length(rho, sigma, *f), slack,
                   f->name() + " sample " + std::to_string(k));
    }
  }
  std::ostringstream d;
  d << luo.text("skew - variance") << "; " << sandwich.text("sandwich excess") << "; " << order.text("kernel order excess")
    << "; c_qf(p,1-p) != 2 at " << exact_failures << " points; " << contract.text("distance increase");
  return {9, "structural inequalities", luo.ok() && sandwich.ok() && order.ok() && exact_failures == 0 && contract.ok(),
          d.str()};
}

CriterionResult c10(const Context& ctx) {
  ExperimentConfig c = parse_config(determinism_config_json());
  if (!ctx.full()) {
    for (auto& a : c.grid) a.steps = 12;
  }
  const std::string one = run_contour(c, 1).to_csv();
  bool same = true;
  std::ostringstream d;
  for (int threads : {4, 8}) {
    const bool eq = run_contour(c, threads).to_csv() == one;
    same = same && eq;
    d << threads << " threads " << (eq ? "identical" : "DIFFERENT") << "; ";
  }
  d << c.grid[0].steps << "x" << c.grid[1].steps << " cells, " << one.size() << " bytes";
  return {10, "contour output independent of thread count", same, d.str()};
}

using CheckFn = CriterionResult (*)(const Context&);

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"c1.rel", 1e-6},         {"c2.rel", 1e-6},          {"c3.rel", 1e-6},        {"c4.slack", 1e-8},
      {"c5.slack", 1e-9},       {"c5.gap", 1e-10},         {"c6.delta_pd", 1e-3},   {"c6.delta_unitary", 1e-6},
      {"c6.mt_rel", 1e-6},      {"c7.ddelta", 1e-6},       {"c7.delta_wy", 1e-2},   {"c7.frac_ddelta", 0.95},
      {"c7.frac_wy", 0.90},     {"c8.rel", 1e-8},          {"c8.rk4", 1e-6},        {"c9.slack", 1e-9},
  };
  return t;
}

const char* determinism_config_json() { return kDeterminismConfig; }

std::vector<CriterionResult> run_verify(const VerifyOptions& options, const VerifyProgress& progress) {
  for (const auto& [key, value] : options.tolerance_overrides) {
    if (!default_tolerances().count(key)) throw ConfigError("unknown tolerance '" + key + "'");
    (void)value;
  }
  const Context ctx(options);
  static const CheckFn checks[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  static const char* names[] = {"dephasing path length, quantum Fisher metric",
                                "dephasing path length, Wigner-Yanase and minimal metrics",
                                "amplitude damping path lengths",
                                "geodesic length never exceeds path length",
                                "unitary qubit dominance of the quantum Fisher bound",
                                "saturation cases",
                                "metric regimes",
                                "transversal dephasing",
                                "structural inequalities",
                                "contour output independent of thread count"};
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id) {
    if (!options.only.empty() && !options.only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = checks[id - 1](ctx);
    } catch (const std::exception& e) {
      r = {id, names[id - 1], false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) progress(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string verify_summary_json(const std::vector<CriterionResult>& results, VerifyLevel level) {
  nlohmann::json root;
  root["level"] = level == VerifyLevel::Full ? "full" : "quick";
  nlohmann::json list = nlohmann::json::array();
  nlohmann::json failed = nlohmann::json::array();
  for (const auto& r : results) {
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    if (!r.passed) failed.push_back(r.id);
  }
  root["criteria"] = list;
  root["failed"] = failed;
  root["passed"] = failed.empty();
  return root.dump(2);
}

}  // namespace gqsl::cli

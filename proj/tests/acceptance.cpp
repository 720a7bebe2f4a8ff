// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "nematic/beris_edwards.hpp"
#include "nematic/ericksen_leslie.hpp"
#include "nematic/hilbert_bridge.hpp"
#include "nematic/selfcheck.hpp"
#include "support/dense_oracle.hpp"

using namespace nematic;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const char* fmt, double value, double bound) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, value, bound);
    if (!detail.empty()) detail += "; ";
    detail += buf;
    if (!ok) {
      detail += " [violated]";
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::fabs(a - b) / (1.0 + std::fmax(std::fabs(a), std::fabs(b))); }

Mat3 director_gradient(const std::array<VectorField, 3>& g, std::size_t p) {
  Mat3 G;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) G(a, b) = g[b][p][a];
  return G;
}

DirectorField spherical_field(const Grid& g, const std::function<double(const Vec3&)>& polar,
                              const std::function<double(const Vec3&)>& azimuth) {
  DirectorField n(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.position(i);
    const double th = polar(x), ph = azimuth(x);
    n[i] = Vec3{{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}};
  }
  return n;
}

VectorField taylor_green(const Grid& g) {
  VectorField v(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.position(i);
    v[i] = Vec3{{std::sin(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]), -std::cos(kTwoPi * x[0]) * std::sin(kTwoPi * x[1]), 0.0}};
  }
  return v;
}

// ---------------------------------------------------------------------------

Verdict algebra_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240601);
  const int draws = 10000;
  double crit = 0, kernel = 0, coerc = 0, inv = 0, trip = 0, pin = 0, oracle_gap = 0;
  for (int t = 0; t < draws; ++t) {
    const MaterialParams p = random_params(rng);
    const BulkParams bp = p.bulk();
    const Vec3 n = random_unit(rng);
    const auto on = oracle::from_v(n);

    crit = std::fmax(crit, max_abs(bulk_gradient(uniaxial(bp.s, n), bp)));

    const Vec3 m = random_perp(rng, n);
    const QTensor qin = QTensor::from_matrix(outer(n, m) + outer(m, n));
    kernel = std::fmax(kernel, max_abs(linearized_H(qin, bp, n)));

    const QTensor q = random_qtensor(rng);
    const QTensor qo = project_out(q, n);
    const QTensor hq = linearized_H(qo, bp, n);
    coerc = std::fmax(coerc, bp.coercivity_constant() * norm2(qo) - contract(hq, qo));
    inv = std::fmax(inv, max_abs(inverse_H(hq, bp, n) - qo) / (1.0 + max_abs(qo)));
    oracle_gap = std::fmax(oracle_gap, oracle::max_diff(hq, oracle::H(oracle::from_q(qo), p.b, p.c, bp.s, on)));

    const QTensor a = project_in(random_qtensor(rng), n), b = project_in(random_qtensor(rng), n),
                  c = project_in(random_qtensor(rng), n);
    trip = std::fmax(trip, std::fabs(oracle::tr(oracle::mul(oracle::mul(oracle::from_q(a), oracle::from_q(b)),
                                                             oracle::from_q(c)))));

    const Vec3 qn = q.matrix() * n;
    const double qnn = dot(n, qn);
    pin = std::fmax(pin, std::fabs(norm2(project_in(q, n)) - (2.0 * dot(qn, qn) - 2.0 * qnn * qnn)));
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.require(crit <= 1e-12, "J(uniaxial) %.1e <= %.0e", crit, 1e-12);
  v.require(kernel <= 1e-13, "H(Q_in) %.1e <= %.0e", kernel, 1e-13);
  v.require(coerc <= 1e-10, "coercivity slack %.1e <= %.0e", coerc, 1e-10);
  v.require(inv <= 1e-12, "H^-1 H - id %.1e <= %.0e", inv, 1e-12);
  v.require(trip <= 1e-14, "tr(Q1Q2Q3) %.1e <= %.0e", trip, 1e-14);
  v.require(pin <= 1e-13, "|P_in Q|^2 identity %.1e <= %.0e", pin, 1e-13);
  v.require(oracle_gap <= 1e-12, "H vs dense oracle %.1e <= %.0e", oracle_gap, 1e-12);
  v.require(secs < 10.0, "runtime %.2fs < %.0fs", secs, 10.0);
  return v;
}

Verdict coefficient_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240602);
  double worst = 0.0, eta_id = 0.0, combo_id = 0.0;
  bool leslie = true;
  for (int t = 0; t < 1000; ++t) {
    const MaterialParams p = random_params(rng);
    const DerivedCoefficients d = derive_coefficients(p);
    for (const auto& c : identity_checks(p, d)) worst = std::fmax(worst, rel(c.lhs, c.rhs));
    const double g22 = d.gamma2 * d.gamma2 / d.gamma1;
    eta_id = std::fmax(eta_id, rel(2.0 * d.alpha4 + d.alpha5 + d.alpha6 - g22, 2.0 * p.eta));
    const double s = d.s;
    combo_id = std::fmax(combo_id, rel(1.5 * d.alpha4 + d.alpha5 + d.alpha6 + d.alpha1,
                                       1.5 * p.eta + (2.0 / 3.0) * p.Gamma * p.xi * p.xi * (1 - s) * (1 - s) *
                                                         (1 + 2 * s) * (1 + 2 * s)));
    const double b1 = d.alpha1 + g22, b2 = d.alpha4, b3 = d.alpha5 + d.alpha6 - g22;
    leslie = leslie && b2 > 0.0 && 2.0 * b2 + b3 > 0.0 && 1.5 * b2 + b3 + b1 > 0.0;
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.require(worst <= 1e-12, "identity table %.1e <= %.0e", worst, 1e-12);
  v.require(eta_id <= 1e-12, "2a4+a5+a6-g2^2/g1 = 2eta %.1e <= %.0e", eta_id, 1e-12);
  v.require(combo_id <= 1e-12, "(3/2)a4+a5+a6+a1 identity %.1e <= %.0e", combo_id, 1e-12);
  v.require(leslie, "Leslie inequalities hold %.0f (1 = all) >= %.0f", leslie ? 1.0 : 0.0, 1.0);
  v.require(secs < 1.0, "runtime %.2fs < %.0fs", secs, 1.0);
  return v;
}

Verdict energy_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g = Grid::make2d(64, 64);
  DiffOps ops(g, Scheme::Spectral);
  MaterialParams p;
  p.L1 = 0.6;
  p.L2 = 0.3;
  p.L3 = 0.2;
  const DerivedCoefficients d = derive_coefficients(p);
  const FrankConstants k = FrankConstants::from(d);
  const std::vector<DirectorField> fields{
      standard_director(g, 0.5),
      spherical_field(g, [](const Vec3& x) { return 1.0 + 0.3 * std::sin(kTwoPi * (x[0] + x[1])); },
                      [](const Vec3& x) { return 0.4 * std::cos(kTwoPi * x[0]); }),
      spherical_field(g, [](const Vec3& x) { return 0.8 + 0.2 * std::cos(2 * kTwoPi * x[1]) + 0.1 * std::sin(kTwoPi * x[0]); },
                      [](const Vec3& x) { return 0.5 * std::sin(kTwoPi * (x[0] - 2 * x[1])); })};
  double density = 0.0, total = 0.0, stress = 0.0;
  for (const auto& n : fields) {
    const QField Q0 = q0_of_director(n, d.s);
    const auto gQ = ops.gradient(Q0);
    const auto gn = ops.gradient(n);
    for (std::size_t i = 0; i < g.size(); ++i)
      density = std::fmax(density, std::fabs(elastic_density({gQ[0][i], gQ[1][i], gQ[2][i]}, p.L1, p.L2, p.L3) -
                                             frank_density(n[i], director_gradient(gn, i), k)));
    const double fe = landau_energy(Q0, p, ops).elastic;
    total = std::fmax(total, std::fabs(fe - frank_energy(n, k, ops)) / std::fabs(fe));
    const TensorField sd = distortion_stress(Q0, Q0, p.L1, p.L2, p.L3, ops);
    const TensorField se = ericksen_stress(ELState::at_rest(n), d, ops);
    for (std::size_t i = 0; i < g.size(); ++i) stress = std::fmax(stress, max_abs(sd[i] - se[i]));
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.require(density <= 1e-10, "density gap %.1e <= %.0e", density, 1e-10);
  v.require(total <= 1e-10, "relative energy gap %.1e <= %.0e", total, 1e-10);
  v.require(stress <= 1e-10, "stress gap %.1e <= %.0e", stress, 1e-10);
  v.require(secs < 10.0, "runtime %.2fs < %.0fs", secs, 10.0);
  return v;
}

Verdict variational_checks() {
  Rng rng(20240604);
  double jfd = 0.0, hfd = 0.0;
  const double h = 1e-5;
  for (int t = 0; t < 1000; ++t) {
    const MaterialParams p = random_params(rng);
    const BulkParams bp = p.bulk();
    const QTensor q = random_qtensor(rng), dq = random_qtensor(rng);
    const double fd = (bulk_energy(q + h * dq, bp) - bulk_energy(q - h * dq, bp)) / (2 * h);
    jfd = std::fmax(jfd, std::fabs(fd - contract(bulk_gradient(q, bp), dq)) / (1.0 + std::fabs(fd)));

    const Vec3 n = random_unit(rng);
    const QTensor q0 = uniaxial(bp.s, n);
    const QTensor dj = (1.0 / (2 * h)) * (bulk_gradient(q0 + h * dq, bp) - bulk_gradient(q0 - h * dq, bp));
    hfd = std::fmax(hfd, max_abs(dj - linearized_H(dq, bp, n)) / (1.0 + max_abs(dj)));
  }

  double frank = 0.0;
  const Grid g = Grid::make2d(32, 32);
  for (Scheme sch : {Scheme::Spectral, Scheme::Central2}) {
    DiffOps ops(g, sch);
    const FrankConstants k{1.1, 0.7, 1.9, 0.3};
    const DirectorField n = spherical_field(
        g, [](const Vec3& x) { return 1.1 + 0.3 * std::sin(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]); },
        [](const Vec3& x) { return 0.6 * std::sin(kTwoPi * (x[0] + x[1])); });
    VectorField delta(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec3 x = g.position(i);
      const Vec3 raw{{std::cos(kTwoPi * x[1]), std::sin(2 * kTwoPi * x[0]), 0.5}};
      delta[i] = raw - dot(raw, n[i]) * n[i];
    }
    const double eps = 1e-5;
    DirectorField np(g), nm(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      np[i] = renormalize(n[i] + eps * delta[i]);
      nm[i] = renormalize(n[i] - eps * delta[i]);
    }
    const double fd = (frank_energy(np, k, ops) - frank_energy(nm, k, ops)) / (2 * eps);
    const VectorField hf = frank_molecular_field(n, k, ops);
    const double an = -integrate(g, [&](std::size_t i) { return dot(hf[i], delta[i]); });
    frank = std::fmax(frank, std::fabs(fd - an) / std::fabs(an));
  }
  Verdict v;
  v.require(jfd <= 1e-8, "J vs FD of F_b %.1e <= %.0e", jfd, 1e-8);
  v.require(hfd <= 1e-8, "H vs FD of J %.1e <= %.0e", hfd, 1e-8);
  v.require(frank <= 1e-6, "h vs FD of E_F %.1e <= %.0e", frank, 1e-6);
  return v;
}

// ---------------------------------------------------------------------------

double be_fixed_point_gap() {
  MaterialParams p;
  p.L2 = 0.4;
  p.xi = 0.6;
  const Grid g = Grid::make2d(16, 16);
  double worst = 0.0;
  for (Scheme s : {Scheme::Central2, Scheme::Spectral})
    for (bool gf : {false, true}) {
      BEStepConfig cfg;
      cfg.scheme = s;
      cfg.gradient_flow_only = gf;
      BESolver solver(g, p, cfg);
      BEState st = BEState::zeros(g);
      st.Q = QField(g, uniaxial(critical_s(p.a, p.b, p.c).first, Vec3{{0.48, 0.6, 0.64}}));
      for (int k = 0; k < 5; ++k) {
        const BEState before = st;
        solver.step(st);
        for (std::size_t i = 0; i < g.size(); ++i)
          worst = std::fmax(worst, std::fmax(max_abs(st.Q[i] - before.Q[i]), norm(st.v[i] - before.v[i])));
      }
    }
  return worst;
}

double el_fixed_point_gap() {
  MaterialParams p;
  p.xi = 0.4;
  const DerivedCoefficients d = derive_coefficients(p);
  const Grid g = Grid::make2d(16, 16);
  double worst = 0.0;
  for (Scheme s : {Scheme::Central2, Scheme::Spectral}) {
    ELStepConfig cfg;
    cfg.scheme = s;
    ELSolver solver(g, d, cfg);
    ELState st = ELState::at_rest(DirectorField(g, Vec3{{0.0, 0.6, 0.8}}));
    for (int k = 0; k < 5; ++k) {
      const ELState before = st;
      solver.step(st);
      for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::fmax(worst, std::fmax(norm(st.n[i] - before.n[i]), norm(st.v[i] - before.v[i])));
    }
  }
  return worst;
}

double taylor_green_gap() {
  MaterialParams p;
  p.xi = 0.0;
  p.eta = 0.2;
  const Grid g = Grid::make2d(64, 64);
  const double expected = 2.0 * p.eta * kTwoPi * kTwoPi;
  double worst = 0.0;
  {
    BEStepConfig cfg;
    cfg.scheme = Scheme::Spectral;
    cfg.dt = 1e-4;
    BESolver solver(g, p, cfg);
    BEState st = BEState::zeros(g);
    st.Q = QField(g, uniaxial(critical_s(p.a, p.b, p.c).first, Vec3{{0.0, 0.0, 1.0}}));
    st.v = taylor_green(g);
    const double k0 = kinetic_energy(st.v);
    for (int i = 0; i < 500; ++i) solver.step(st);
    worst = std::fmax(worst, std::fabs(-std::log(kinetic_energy(st.v) / k0) / st.t / expected - 1.0));
  }
  {
    const DerivedCoefficients d = derive_coefficients(p);
    ELStepConfig cfg;
    cfg.scheme = Scheme::Spectral;
    cfg.dt = 1e-4;
    ELSolver solver(g, d, cfg);
    ELState st = ELState::at_rest(DirectorField(g, Vec3{{0.0, 0.0, 1.0}}));
    st.v = taylor_green(g);
    const double k0 = kinetic_energy(st.v);
    for (int i = 0; i < 500; ++i) solver.step(st);
    worst = std::fmax(worst, std::fabs(-std::log(kinetic_energy(st.v) / k0) / st.t / (2.0 * d.alpha4 * kTwoPi * kTwoPi) - 1.0));
  }
  return worst;
}

double ode_order() {
  MaterialParams p;
  const Grid g = Grid::make2d(8, 8);
  auto rhs = [&](double s) {
    return -(1.0 / (p.Gamma * p.epsilon)) * (-p.a * s - p.b / 3.0 * s * s + 2.0 * p.c / 3.0 * s * s * s);
  };
  const double T = 0.05, sample = 2e-3;
  const int nsamples = int(std::lround(T / sample));
  std::vector<double> ref{1.0};
  for (int j = 0; j < nsamples; ++j) {
    double s = ref.back();
    const int n = 2000;
    const double h = sample / n;
    for (int i = 0; i < n; ++i) {
      const double k1 = rhs(s), k2 = rhs(s + 0.5 * h * k1), k3 = rhs(s + 0.5 * h * k2), k4 = rhs(s + h * k3);
      s += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    ref.push_back(s);
  }
  std::vector<double> err;
  for (double dt : {2e-3, 1e-3, 5e-4, 2.5e-4}) {
    BEStepConfig cfg;
    cfg.dt = dt;
    cfg.gradient_flow_only = true;
    cfg.sigma_split = 0.0;
    BESolver solver(g, p, cfg);
    BEState st = BEState::zeros(g);
    st.Q = QField(g, uniaxial(1.0, Vec3{{0.0, 0.0, 1.0}}));
    double worst = 0.0;
    for (int j = 1; j <= nsamples; ++j) {
      for (long k = 0; k < std::lround(sample / dt); ++k) solver.step(st);
      worst = std::fmax(worst, std::fabs(-1.5 * (st.Q[0][0] + st.Q[0][3]) - ref[j]));
    }
    err.push_back(worst);
  }
  double order = 1e300;
  for (std::size_t i = 1; i < err.size(); ++i) order = std::fmin(order, std::log2(err[i - 1] / err[i]));
  return order;
}

std::pair<double, double> heat_orders() {
  MaterialParams p;
  p.L1 = 0.05;
  const DerivedCoefficients d = derive_coefficients(p);
  const double a = 0.4, T = 0.05;
  const double rate = d.k1 / d.gamma1 * kTwoPi * kTwoPi;
  auto run = [&](const Grid& g, Scheme s, double dt) {
    ELStepConfig cfg;
    cfg.dt = dt;
    cfg.scheme = s;
    cfg.gradient_flow_only = true;
    ELSolver solver(g, d, cfg);
    ELState st = ELState::at_rest(planar_director(g, [&](const Vec3& x) { return a * std::sin(kTwoPi * x[0]); }));
    for (long i = 0; i < std::lround(T / dt); ++i) solver.step(st);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double ref = a * std::exp(-rate * st.t) * std::sin(kTwoPi * g.position(i)[0]);
      err = std::fmax(err, std::fabs(std::atan2(st.n[i][1], st.n[i][0]) - ref));
    }
    return err;
  };
  std::vector<double> et, ex;
  for (double dt : {2e-3, 1e-3, 5e-4}) et.push_back(run(Grid::make2d(32, 8), Scheme::Spectral, dt));
  for (int n : {16, 32, 64}) ex.push_back(run(Grid::make2d(n, 8), Scheme::Central2, 2.5e-5));
  double time_order = 1e300, space_order = 1e300;
  for (std::size_t i = 1; i < 3; ++i) {
    time_order = std::fmin(time_order, std::log2(et[i - 1] / et[i]));
    space_order = std::fmin(space_order, std::log2(ex[i - 1] / ex[i]));
  }
  return {time_order, space_order};
}

Verdict dynamics_sanity() {
  Verdict v;
  v.require(be_fixed_point_gap() <= 1e-13, "BE fixed point drift %.1e <= %.0e", be_fixed_point_gap(), 1e-13);
  v.require(el_fixed_point_gap() <= 1e-13, "EL fixed point drift %.1e <= %.0e", el_fixed_point_gap(), 1e-13);
  const double tg = taylor_green_gap();
  v.require(tg <= 0.01, "Taylor-Green rate error %.2e <= %.2f", tg, 0.01);
  const double ode = ode_order();
  v.require(ode >= 1.0, "BE ODE oracle order %.3f >= %.0f", ode, 1.0);
  const auto [to, so] = heat_orders();
  v.require(to >= 1.0, "EL heat oracle time order %.3f >= %.0f", to, 1.0);
  v.require(so >= 1.8, "EL heat oracle space order (central) %.3f >= %.1f", so, 1.8);
  return v;
}

// ---------------------------------------------------------------------------

Verdict energy_dissipation() {
  double be_excess = -1e300, el_excess = -1e300;
  {
    MaterialParams p;
    p.L1 = 0.05;
    p.L2 = 0.02;
    p.L3 = 0.01;
    p.xi = 0.5;
    p.epsilon = 0.2;
    const Grid g = Grid::make2d(32, 32);
    for (Scheme s : {Scheme::Central2, Scheme::Spectral}) {
      BEStepConfig cfg;
      cfg.scheme = s;
      cfg.dt = 1.5e-3;
      BESolver solver(g, p, cfg);
      BEState st = BEState::zeros(g);
      const DirectorField n = standard_director(g, 0.5);
      for (std::size_t i = 0; i < g.size(); ++i) st.Q[i] = uniaxial(1.3, n[i]);
      st.v = taylor_green(g);
      for (auto& x : st.v.data) x = 0.1 * x;
      double prev = be_energy(st, p, solver.ops()).total;
      for (int k = 0; k < 200; ++k) {
        solver.step(st);
        const double e = be_energy(st, p, solver.ops()).total;
        be_excess = std::fmax(be_excess, (e - prev) / (1.0 + prev));
        prev = e;
      }
    }
  }
  MaterialParams p;
  p.L1 = 0.05;
  p.L2 = 0.02;
  p.xi = 0.5;
  const DerivedCoefficients d = derive_coefficients(p);
  auto el_initial = [](const Grid& g) {
    ELState st = ELState::at_rest(spherical_field(
        g, [](const Vec3& x) { return 0.5 * std::numbers::pi - 0.3 * std::cos(kTwoPi * x[1]); },
        [](const Vec3& x) { return 0.4 * std::sin(kTwoPi * x[0]) * std::cos(kTwoPi * x[1]); }));
    st.v = taylor_green(g);
    for (auto& x : st.v.data) x = 0.1 * x;
    return st;
  };
  {
    const Grid g = Grid::make2d(32, 32);
    for (Scheme s : {Scheme::Central2, Scheme::Spectral}) {
      ELStepConfig cfg;
      cfg.scheme = s;
      cfg.dt = 2e-4;
      ELSolver solver(g, d, cfg);
      ELState st = el_initial(g);
      double prev = el_energy(st, d, solver.ops()).total;
      for (int k = 0; k < 300; ++k) {
        solver.step(st);
        const double e = el_energy(st, d, solver.ops()).total;
        el_excess = std::fmax(el_excess, (e - prev) / (1.0 + prev));
        prev = e;
      }
    }
  }
  std::vector<double> mism;
  double min_rhs = 1e300;
  {
    const Grid g = Grid::make2d(32, 32);
    for (double dt : {1e-3, 5e-4, 2.5e-4}) {
      ELStepConfig cfg;
      cfg.scheme = Scheme::Spectral;
      cfg.dt = dt;
      ELSolver solver(g, d, cfg);
      ELState st = el_initial(g);
      for (long i = 0; i < std::lround(0.02 / dt); ++i) solver.step(st);
      std::vector<ELState> traj{st};
      for (long i = 0; i < std::lround(0.05 / dt); ++i) {
        solver.step(st);
        traj.push_back(st);
      }
      const EnergyLawReport rep = el_energy_law(traj, d, solver.ops());
      mism.push_back(rep.max_mismatch);
      min_rhs = std::fmin(min_rhs, rep.min_rhs);
    }
  }
  double order = 1e300;
  for (std::size_t i = 1; i < mism.size(); ++i) order = std::fmin(order, std::log2(mism[i - 1] / mism[i]));
  Verdict v;
  v.require(be_excess <= 1e-8, "BE max relative energy rise %.1e <= %.0e", be_excess, 1e-8);
  v.require(el_excess <= 1e-8, "EL max relative energy rise %.1e <= %.0e", el_excess, 1e-8);
  v.require(order >= 1.0, "EL energy-law mismatch order %.3f >= %.0f", order, 1.0);
  v.require(min_rhs >= 0.0, "EL dissipation min %.2e >= %.0f", min_rhs, 0.0);
  return v;
}

Verdict epsilon_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g = Grid::make2d(64, 64);
  MaterialParams p;
  p.L1 = 0.01;
  StudyConfig cfg;
  cfg.T = 2.0;
  cfg.samples = 10;
  const DirectorField n0 = standard_director(g, 0.5);
  const StudyResult r = convergence_study(n0, VectorField(g), p, cfg);
  const double secs = seconds_since(t0);

  // How far the reference director travels over the run.
  const DerivedCoefficients d = derive_coefficients(p);
  ELStepConfig ec;
  ec.scheme = Scheme::Spectral;
  ec.gradient_flow_only = true;
  ec.dt = cfg.el_dt;
  ELSolver el(g, d, ec);
  ELState st = ELState::at_rest(n0);
  for (long i = 0; i < std::lround(cfg.T / cfg.el_dt); ++i) el.step(st);
  double moved = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) moved = std::fmax(moved, std::acos(std::fmin(1.0, dot(st.n[i], n0[i]))));

  for (const auto& row : r.rows)
    std::printf("    epsilon %-6g max_err %.4e err_at_T %.4e E_frak total %.3e\n", row.epsilon, row.max_err,
                row.err_at_T, row.frak.total);
  Verdict v;
  v.require(r.slope_available && r.slope >= 0.8, "slope %.4f >= %.1f", r.slope, 0.8);
  v.require(r.slope <= 1.2, "slope %.4f <= %.1f", r.slope, 1.2);
  v.require(moved >= 0.3, "director rotation %.2f rad >= %.1f", moved, 0.3);
  v.require(secs <= 900.0, "runtime %.1fs <= %.0fs", secs, 900.0);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"algebra suite", algebra_suite},
      {"coefficient bridge", coefficient_suite},
      {"energy equivalence", energy_equivalence},
      {"gradient and variational checks", variational_checks},
      {"dynamics sanity", dynamics_sanity},
      {"energy dissipation", energy_dissipation},
      {"epsilon convergence", epsilon_convergence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu %-32s %s  %s\n", i + 1, criteria[i].name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

#include "nematic/beris_edwards.hpp"

#include <cmath>
#include <limits>

namespace nematic {

double default_lambda_bulk(const MaterialParams& p) {
  const double s = critical_s(p.a, p.b, p.c).first;
  return p.a + p.b * s + 3.0 * p.c * s * s;
}

namespace {

QTensor sym_traceless(const Mat3& m) { return QTensor::from_matrix(m); }

// Q Omega - Omega Q.
QTensor corotation(const QTensor& Q, const Mat3& W) { return commutator_sym(Q, W); }

}  // namespace

TensorField assemble_stresses(const BEState& st, const MaterialParams& p, const DiffOps& ops) {
  const QField H = molecular_field(st.Q, p, ops);
  const StrainVorticity sv = strain_vorticity(st.v, ops);
  TensorField sigma = distortion_stress(st.Q, st.Q, p.L1, p.L2, p.L3, ops);
  for (std::size_t i = 0; i < st.Q.size(); ++i) {
    const Mat3 q = st.Q[i].matrix();
    const Mat3 h = H[i].matrix();
    sigma[i] += p.eta * sv.D[i] - s_coupling(st.Q[i], H[i], p.xi).matrix() + (q * h - h * q);
  }
  return sigma;
}

QField q_rhs(const BEState& st, const MaterialParams& p, const DiffOps& ops) {
  QField r = molecular_field(st.Q, p, ops);
  const StrainVorticity sv = strain_vorticity(st.v, ops);
  const auto gQ = ops.gradient(st.Q);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Vec3& v = st.v[i];
    const QTensor adv = v[0] * gQ[0][i] + v[1] * gQ[1][i] + v[2] * gQ[2][i];
    r[i] = (1.0 / p.Gamma) * r[i] + s_coupling(st.Q[i], sym_traceless(sv.D[i]), p.xi) - adv -
           corotation(st.Q[i], sv.Omega[i]);
  }
  return r;
}

BEEnergy be_energy(const BEState& st, const MaterialParams& p, const DiffOps& ops) {
  const LandauEnergy le = landau_energy(st.Q, p, ops);
  BEEnergy e;
  e.kinetic = kinetic_energy(st.v);
  e.bulk = le.bulk;
  e.elastic = le.elastic;
  e.total = e.kinetic + e.bulk + e.elastic;
  return e;
}

void check_be_cfl(const BEState& st, const BEStepConfig& cfg, const MaterialParams& p) {
  if (!(cfg.dt > 0.0)) throw CflViolation("dt must be positive");
  if (cfg.gradient_flow_only) return;
  const double lambda = cfg.lambda_bulk > 0.0 ? cfg.lambda_bulk : default_lambda_bulk(p);
  const Grid& g = st.Q.grid;
  double hmin = g.h(0);
  for (int d = 1; d < g.dim; ++d) hmin = std::fmin(hmin, g.h(d));
  const double vmax = max_speed(st.v);
  const double adv = vmax > 0.0 ? hmin / vmax : std::numeric_limits<double>::infinity();
  const double relax = p.Gamma * p.epsilon / lambda;
  const double limit = cfg.cfl_safety * std::fmin(adv, relax);
  if (cfg.dt > limit) {
    throw CflViolation("dt = " + std::to_string(cfg.dt) + " exceeds cfl_safety*min(h/max|v|, Gamma*epsilon/lambda_bulk) = " +
                       std::to_string(limit));
  }
}

BESolver::BESolver(const Grid& g, const MaterialParams& p, const BEStepConfig& cfg)
    : params_(p), cfg_(cfg), ops_(g, cfg.scheme) {
  p.validate();
  if (!(cfg.dt > 0.0)) throw InvalidInput("dt must be positive");
  sigma_ = cfg.sigma_split >= 0.0 ? cfg.sigma_split : default_lambda_bulk(p);
}

void BESolver::update_q(BEState& st, const QField& rhs) const {
  const MaterialParams& p = params_;
  const double dt = cfg_.dt;
  const double alpha = 1.0 + sigma_ * dt / (p.Gamma * p.epsilon);
  const double beta = dt / p.Gamma;
  const double gam = 0.5 * beta * (p.L2 + p.L3);
  const bool filter = cfg_.dealias && cfg_.scheme == Scheme::Spectral;
  const std::size_t ns = ops_.spectral_size();

  std::array<Spectrum, 5> qh;
  Spectrum fh;
  for (int c = 0; c < 5; ++c) {
    ops_.forward(st.Q.component(c), qh[c]);
    ops_.forward(rhs.component(c), fh);
    for (std::size_t m = 0; m < ns; ++m) {
      const cplx f = (filter && !ops_.dealias_keep(m)) ? cplx(0.0) : fh[m];
      qh[c][m] = alpha * qh[c][m] + dt * f;
    }
  }
  for (std::size_t m = 0; m < ns; ++m) {
    const Vec3 k = ops_.kappa_vec(m);
    const double k2 = ops_.kappa2(m);
    const double A = alpha + beta * p.L1 * k2;
    std::array<std::array<cplx, 3>, 3> R;
    R[0][0] = qh[0][m];
    R[0][1] = R[1][0] = qh[1][m];
    R[0][2] = R[2][0] = qh[2][m];
    R[1][1] = qh[3][m];
    R[1][2] = R[2][1] = qh[4][m];
    R[2][2] = -qh[0][m] - qh[3][m];
    std::array<cplx, 3> Rk{};
    for (int i = 0; i < 3; ++i) Rk[i] = R[i][0] * k[0] + R[i][1] * k[1] + R[i][2] * k[2];
    const cplx kRk = k[0] * Rk[0] + k[1] * Rk[1] + k[2] * Rk[2];
    const cplx kw = kRk / (A + (4.0 / 3.0) * gam * k2);
    std::array<cplx, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = (Rk[i] - (gam / 3.0) * kw * k[i]) / (A + gam * k2);
    auto solve = [&](int i, int j) {
      cplx r = R[i][j] - gam * (w[i] * k[j] + k[i] * w[j]);
      if (i == j) r += (2.0 / 3.0) * gam * kw;
      return r / A;
    };
    qh[0][m] = solve(0, 0);
    qh[1][m] = solve(0, 1);
    qh[2][m] = solve(0, 2);
    qh[3][m] = solve(1, 1);
    qh[4][m] = solve(1, 2);
  }
  std::vector<double> buf;
  for (int c = 0; c < 5; ++c) {
    ops_.inverse(qh[c], buf);
    st.Q.set_component(c, buf);
  }
}

void BESolver::step(BEState& st) {
  const MaterialParams& p = params_;
  require_same_grid(st.Q.grid, ops_.grid(), "be_step");
  check_be_cfl(st, cfg_, p);
  const std::size_t n = st.Q.size();
  const double inv = -1.0 / (p.Gamma * p.epsilon);

  QField rhs(st.Q.grid);
  if (cfg_.gradient_flow_only) {
    for (std::size_t i = 0; i < n; ++i) rhs[i] = inv * bulk_gradient(st.Q[i], p.a, p.b, p.c);
    update_q(st, rhs);
  } else {
    const QField H = molecular_field(st.Q, p, ops_);
    const StrainVorticity sv = strain_vorticity(st.v, ops_);
    // div(v Q) componentwise: d_j (v_j Q_c).
    std::array<std::vector<double>, 5> divvq;
    for (int c = 0; c < 5; ++c) {
      divvq[c].assign(n, 0.0);
      for (int j = 0; j < st.Q.grid.dim; ++j) {
        std::vector<double> prod(n);
        for (std::size_t i = 0; i < n; ++i) prod[i] = st.v[i][j] * st.Q[i][c];
        const auto d = ops_.diff(prod, j);
        for (std::size_t i = 0; i < n; ++i) divvq[c][i] += d[i];
      }
    }
    TensorField sigma = distortion_stress(st.Q, st.Q, p.L1, p.L2, p.L3, ops_);
    for (std::size_t i = 0; i < n; ++i) {
      const QTensor& Q = st.Q[i];
      QTensor adv;
      for (int c = 0; c < 5; ++c) adv[c] = divvq[c][i];
      rhs[i] = inv * bulk_gradient(Q, p.a, p.b, p.c) + s_coupling(Q, sym_traceless(sv.D[i]), p.xi) - adv -
               corotation(Q, sv.Omega[i]);
      const Mat3 q = Q.matrix();
      const Mat3 h = H[i].matrix();
      sigma[i] += (q * h - h * q) - s_coupling(Q, H[i], p.xi).matrix();
    }
    VectorField force = ops_.divergence(sigma);
    const VectorField adv = skew_advection(st.v, ops_);
    for (std::size_t i = 0; i < n; ++i) force[i] += adv[i];

    update_q(st, rhs);
    viscous_projection_update(st.v, st.p, force, 0.5 * p.eta, cfg_.dt, ops_,
                              cfg_.dealias && cfg_.scheme == Scheme::Spectral);
  }
  ++steps_;
  st.t += cfg_.dt;
  if (!all_finite(st.Q) || !all_finite(st.v)) throw SolverAbort("non-finite value in Beris-Edwards state", steps_);
}

BEState be_step(const BEState& st, const BEStepConfig& cfg, const MaterialParams& p) {
  BESolver solver(st.Q.grid, p, cfg);
  BEState out = st;
  solver.step(out);
  return out;
}

}  // namespace nematic

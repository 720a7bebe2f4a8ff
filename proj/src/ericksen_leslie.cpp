#include "nematic/ericksen_leslie.hpp"

#include <cmath>
#include <limits>

namespace nematic {

namespace {

VectorField advective_derivative(const VectorField& v, const DirectorField& n, const DiffOps& ops) {
  const auto g = ops.gradient(n);
  VectorField r(n.grid);
  for (std::size_t i = 0; i < n.size(); ++i) r[i] = v[i][0] * g[0][i] + v[i][1] * g[1][i] + v[i][2] * g[2][i];
  return r;
}

Vec3 tangent(const Vec3& n, const Vec3& x) { return x - dot(n, x) * n; }

}  // namespace

VectorField corotational_rate(const ELState& st, const VectorField& n_t, const DiffOps& ops) {
  const VectorField adv = advective_derivative(st.v, st.n, ops);
  const StrainVorticity sv = strain_vorticity(st.v, ops);
  VectorField N(st.n.grid);
  for (std::size_t i = 0; i < N.size(); ++i) N[i] = n_t[i] + adv[i] - sv.Omega[i] * st.n[i];
  return N;
}

VectorField director_rhs(const ELState& st, const DerivedCoefficients& d, const DiffOps& ops) {
  if (!(d.gamma1 > 0.0)) throw InvalidInput("director_rhs requires gamma1 > 0");
  const VectorField h = frank_molecular_field(st.n, FrankConstants::from(d), ops);
  const VectorField adv = advective_derivative(st.v, st.n, ops);
  const StrainVorticity sv = strain_vorticity(st.v, ops);
  VectorField nt(st.n.grid);
  for (std::size_t i = 0; i < nt.size(); ++i) {
    const Vec3& n = st.n[i];
    const Vec3 x = sv.Omega[i] * n - adv[i] + (1.0 / d.gamma1) * (h[i] - d.gamma2 * (sv.D[i] * n));
    nt[i] = tangent(n, x);
  }
  return nt;
}

TensorField leslie_stress(const ELState& st, const VectorField& N, const DerivedCoefficients& d, const DiffOps& ops) {
  const StrainVorticity sv = strain_vorticity(st.v, ops);
  TensorField s(st.n.grid);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Vec3& n = st.n[i];
    const Mat3& D = sv.D[i];
    const Mat3 nn = outer(n, n);
    const Vec3 Dn = D * n;
    s[i] = (d.alpha1 * frob(nn, D)) * nn + d.alpha2 * outer(n, N[i]) + d.alpha3 * outer(N[i], n) + d.alpha4 * D +
           d.alpha5 * outer(n, Dn) + d.alpha6 * outer(Dn, n);
  }
  return s;
}

TensorField ericksen_stress(const ELState& st, const DerivedCoefficients& d, const DiffOps& ops) {
  const auto g = ops.gradient(st.n);
  const FrankConstants k = FrankConstants::from(d);
  TensorField s(st.n.grid);
  for (std::size_t p = 0; p < s.size(); ++p) {
    Mat3 G;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) G(a, b) = g[b][p][a];
    const Mat3 P = frank_flux_point(st.n[p], G, k);
    // sigma_ij = -P_kj d_i n_k = -(G^T P)_ij
    s[p] = -(transpose(G) * P);
  }
  return s;
}

ELEnergy el_energy(const ELState& st, const DerivedCoefficients& d, const DiffOps& ops) {
  ELEnergy e;
  e.kinetic = kinetic_energy(st.v);
  e.frank = frank_energy(st.n, FrankConstants::from(d), ops);
  e.total = e.kinetic + e.frank;
  return e;
}

double dissipation_density(const Mat3& D, const Vec3& n, const Vec3& h, const DerivedCoefficients& d) {
  const double dnn = frob(D, outer(n, n));
  const Vec3 Dn = D * n;
  const Vec3 nh = cross(n, h);
  return d.beta1 * dnn * dnn + d.beta2 * frob(D, D) + d.beta3 * dot(Dn, Dn) + dot(nh, nh) / d.gamma1;
}

double el_dissipation(const ELState& st, const DerivedCoefficients& d, const DiffOps& ops) {
  const VectorField h = frank_molecular_field(st.n, FrankConstants::from(d), ops);
  const StrainVorticity sv = strain_vorticity(st.v, ops);
  return integrate(st.n.grid, [&](std::size_t i) { return dissipation_density(sv.D[i], st.n[i], h[i], d); });
}

ELSolver::ELSolver(const Grid& g, const DerivedCoefficients& d, const ELStepConfig& cfg)
    : coeffs_(d), cfg_(cfg), ops_(g, cfg.scheme) {
  if (!(cfg.dt > 0.0)) throw InvalidInput("dt must be positive");
  if (!(d.gamma1 > 0.0)) throw InvalidInput("gamma1 must be positive");
}

void ELSolver::step(ELState& st) {
  const DerivedCoefficients& d = coeffs_;
  require_same_grid(st.n.grid, ops_.grid(), "el_step");
  const std::size_t n = st.n.size();
  const double dt = cfg_.dt;

  if (!cfg_.gradient_flow_only) {
    const Grid& g = st.n.grid;
    double hmin = g.h(0);
    for (int k = 1; k < g.dim; ++k) hmin = std::fmin(hmin, g.h(k));
    const double vmax = max_speed(st.v);
    if (vmax > 0.0 && dt > cfg_.cfl_safety * hmin / vmax)
      throw CflViolation("dt = " + std::to_string(dt) + " exceeds cfl_safety*h/max|v|");
  }

  const VectorField nt = director_rhs(st, d, ops_);

  if (!cfg_.gradient_flow_only) {
    const VectorField N = corotational_rate(st, nt, ops_);
    TensorField sigma = leslie_stress(st, N, d, ops_);
    const TensorField se = ericksen_stress(st, d, ops_);
    const StrainVorticity sv = strain_vorticity(st.v, ops_);
    for (std::size_t i = 0; i < n; ++i) sigma[i] += se[i] - d.alpha4 * sv.D[i];
    VectorField force = ops_.divergence(sigma);
    const VectorField adv = skew_advection(st.v, ops_);
    for (std::size_t i = 0; i < n; ++i) force[i] += adv[i];
    viscous_projection_update(st.v, st.p, force, 0.5 * d.alpha4, dt, ops_,
                              cfg_.dealias && cfg_.scheme == Scheme::Spectral);
  }

  double drift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 m = st.n[i] + dt * nt[i];
    const double len = norm(m);
    drift = std::fmax(drift, std::fabs(len - 1.0));
    st.n[i] = (1.0 / len) * m;
  }
  ++steps_;
  last_drift_ = drift;
  st.t += dt;
  if (!all_finite(st.n) || !all_finite(st.v)) throw SolverAbort("non-finite value in Ericksen-Leslie state", steps_);
  if (drift > cfg_.drift_tol)
    throw SolverAbort("director length drift " + std::to_string(drift) + " exceeds " + std::to_string(cfg_.drift_tol),
                      steps_);
}

ELState el_step(const ELState& st, const ELStepConfig& cfg, const DerivedCoefficients& d) {
  ELSolver solver(st.n.grid, d, cfg);
  ELState out = st;
  solver.step(out);
  return out;
}

EnergyLawReport el_energy_law(const std::vector<ELState>& traj, const DerivedCoefficients& d, const DiffOps& ops,
                              std::size_t steps_per_log) {
  if (traj.size() < 3) throw InvalidInput("el_energy_law needs at least 3 saved states");
  const double dt_log = traj[1].t - traj[0].t;
  if (!(dt_log > 0.0)) throw InvalidInput("el_energy_law needs increasing times");
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double gap = traj[k].t - traj[k - 1].t;
    if (std::fabs(gap - dt_log) > 1e-9 * (1.0 + dt_log)) throw InvalidInput("el_energy_law needs a uniform dt_log");
  }
  std::vector<ELEnergy> E;
  for (const auto& st : traj) E.push_back(el_energy(st, d, ops));
  EnergyLawReport rep;
  rep.min_rhs = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    EnergyLawRow row;
    row.step = k * steps_per_log;
    row.t = traj[k].t;
    row.kinetic = E[k].kinetic;
    row.frank = E[k].frank;
    row.lhs = -(E[k + 1].total - E[k - 1].total) / (2.0 * dt_log);
    row.rhs = el_dissipation(traj[k], d, ops);
    row.mismatch = std::fabs(row.lhs - row.rhs) / std::fmax(std::fabs(row.rhs), 1e-300);
    rep.max_mismatch = std::fmax(rep.max_mismatch, row.mismatch);
    rep.min_rhs = std::fmin(rep.min_rhs, row.rhs);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace nematic

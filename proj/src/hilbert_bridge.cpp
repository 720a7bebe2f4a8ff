#include "nematic/hilbert_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nematic {

QField q0_of_director(const DirectorField& n, double s) {
  QField Q(n.grid);
  for (std::size_t i = 0; i < n.size(); ++i) Q[i] = uniaxial(s, n[i]);
  return Q;
}

ExpansionData leading_corrector(const DirectorField& n, const VectorField& v0, const MaterialParams& p,
                                const DerivedCoefficients& d, const VectorField& n_t, const DiffOps& ops,
                                double tol_consistency) {
  require_unit(n);
  const BulkParams bp = p.bulk();
  const double s = d.s;
  ExpansionData e;
  e.n = n;
  e.v0 = v0;
  e.Q0 = q0_of_director(n, s);

  const ELState st{0.0, v0, ScalarField(n.grid), n};
  const VectorField N = corotational_rate(st, n_t, ops);
  const StrainVorticity sv = strain_vorticity(v0, ops);
  const QField LQ0 = elastic_operator(e.Q0, p.L1, p.L2, p.L3, ops);

  e.H0 = QField(n.grid);
  e.Q1_perp = QField(n.grid);
  std::vector<QTensor> arg(n.size());
  double arg_max = 0.0, in_max = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const Mat3 nN = outer(N[i], n[i]) + outer(n[i], N[i]);
    e.H0[i] = -p.Gamma * s * QTensor::from_matrix(nN) +
              p.Gamma * s_coupling(e.Q0[i], QTensor::from_matrix(sv.D[i]), p.xi);
    arg[i] = e.H0[i] - LQ0[i];
    arg_max = std::fmax(arg_max, max_abs(arg[i]));
    in_max = std::fmax(in_max, max_abs(project_in(arg[i], n[i])));
  }
  e.max_in_component = arg_max > 0.0 ? in_max / arg_max : 0.0;
  if (e.max_in_component > tol_consistency) {
    throw ConsistencyError("director field does not satisfy the EL torque balance (relative in-kernel component " +
                           std::to_string(e.max_in_component) + ")");
  }
  for (std::size_t i = 0; i < n.size(); ++i) e.Q1_perp[i] = inverse_H(project_out(arg[i], n[i]), bp, n[i]);
  return e;
}

PreparedData well_prepared_initial_data(const DirectorField& n0, const VectorField& v0, const MaterialParams& p,
                                        const DerivedCoefficients& d, double epsilon, const DiffOps& ops) {
  ELState el{0.0, v0, ScalarField(n0.grid), n0};
  const VectorField nt = director_rhs(el, d, ops);
  ExpansionData e = leading_corrector(n0, v0, p, d, nt, ops);
  BEState be{0.0, v0, ScalarField(n0.grid), QField(n0.grid)};
  for (std::size_t i = 0; i < n0.size(); ++i) be.Q[i] = e.Q0[i] + epsilon * e.Q1_perp[i];
  return {std::move(be), std::move(el), std::move(e)};
}

namespace {

struct GroupParts {
  double regular = 0.0;
  double singular = 0.0;
};

// integral of (1/eps) H_n(Q):Q + L(Q):Q, split into the (1/eps) part and the rest.
GroupParts h_eps_pairing(const QField& Q, const DirectorField& n, const BulkParams& bp, const MaterialParams& p,
                         const DiffOps& ops) {
  const QField LQ = elastic_operator(Q, p.L1, p.L2, p.L3, ops);
  GroupParts g;
  g.singular = integrate(Q.grid, [&](std::size_t i) { return contract(linearized_H(Q[i], bp, n[i]), Q[i]); }) /
               p.epsilon;
  g.regular = integrate(Q.grid, [&](std::size_t i) { return contract(LQ[i], Q[i]); });
  return g;
}

}  // namespace

RemainderEnergy remainder_energy(const QField& QR, const VectorField& vR, const DirectorField& n,
                                 const MaterialParams& p, double epsilon, const DiffOps& ops) {
  MaterialParams pe = p;
  pe.epsilon = epsilon;
  const BulkParams bp = p.bulk();
  const Grid& g = QR.grid;
  RemainderEnergy r;
  double singular_min = std::numeric_limits<double>::infinity();
  double singular_scale = 0.0;

  {
    const GroupParts hp = h_eps_pairing(QR, n, bp, pe, ops);
    const double v2 = integrate(g, [&](std::size_t i) { return dot(vR[i], vR[i]); });
    const double q2 = integrate(g, [&](std::size_t i) { return norm2(QR[i]); });
    r.group0 = v2 + hp.singular + hp.regular + q2;
    singular_min = std::fmin(singular_min, hp.singular);
    singular_scale = std::fmax(singular_scale, q2);
  }

  const auto gQ = ops.gradient(QR);
  const auto gv = ops.gradient(vR);
  QField lapQ(g);
  VectorField lapv(g);
  {
    double acc = 0.0, sing = 0.0;
    for (int dd = 0; dd < g.dim; ++dd) {
      const GroupParts hp = h_eps_pairing(gQ[dd], n, bp, pe, ops);
      acc += integrate(g, [&](std::size_t i) { return dot(gv[dd][i], gv[dd][i]); }) + hp.singular + hp.regular;
      sing += hp.singular;
      const QField d2Q = ops.derivative(gQ[dd], dd);
      const VectorField d2v = ops.derivative(gv[dd], dd);
      for (std::size_t i = 0; i < g.size(); ++i) {
        lapQ[i] += d2Q[i];
        lapv[i] += d2v[i];
      }
    }
    r.group1 = epsilon * epsilon * acc;
    singular_min = std::fmin(singular_min, sing);
  }
  {
    const GroupParts hp = h_eps_pairing(lapQ, n, bp, pe, ops);
    const double v2 = integrate(g, [&](std::size_t i) { return dot(lapv[i], lapv[i]); });
    r.group2 = std::pow(epsilon, 4) * (v2 + hp.singular + hp.regular);
    singular_min = std::fmin(singular_min, hp.singular);
  }
  r.total = r.group0 + r.group1 + r.group2;
  r.singular_part = singular_min;
  r.warning = singular_min < -1e-12 * (1.0 + singular_scale);
  return r;
}

std::string to_string(StudyMode m) { return m == StudyMode::Full ? "full" : "gradient_flow"; }

StudyMode study_mode_from_string(const std::string& s) {
  if (s == "gradient_flow") return StudyMode::GradientFlow;
  if (s == "full") return StudyMode::Full;
  throw InvalidInput("unknown mode '" + s + "' (expected gradient_flow or full)");
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidInput("fitted_slope needs at least two points");
  double mx = 0.0, my = 0.0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

StudyResult convergence_study(const DirectorField& n0, const VectorField& v0, const MaterialParams& p,
                              const StudyConfig& cfg) {
  p.validate();
  if (cfg.epsilons.empty()) throw InvalidInput("convergence_study needs at least one epsilon");
  for (std::size_t i = 1; i < cfg.epsilons.size(); ++i)
    if (!(cfg.epsilons[i] < cfg.epsilons[i - 1])) throw InvalidInput("epsilons must be sorted descending");
  if (!(cfg.T > 0.0) || cfg.samples < 1) throw InvalidInput("convergence_study needs T > 0 and samples >= 1");
  if (cfg.dt_factor > cfg.cfl_safety)
    throw CflViolation("dt_factor exceeds cfl_safety: dt <= cfl_safety*Gamma*epsilon/lambda_bulk violated");

  const DerivedCoefficients d = derive_coefficients(p);
  const Grid& g = n0.grid;
  const DiffOps ops(g, cfg.scheme);
  const bool grad_flow = cfg.mode == StudyMode::GradientFlow;
  const double s = d.s;
  const double lambda = default_lambda_bulk(p);
  const double interval = cfg.T / cfg.samples;

  StudyResult res;
  for (int k = 0; k <= cfg.samples; ++k) res.sample_times.push_back(k * interval);

  auto be_dt = [&](double eps) {
    const double dt_max = cfg.dt_factor * p.Gamma * eps / lambda;
    return interval / std::ceil(interval / dt_max - 1e-9);
  };
  if (!grad_flow) {
    const double vmax = max_speed(v0);
    double hmin = g.h(0);
    for (int k = 1; k < g.dim; ++k) hmin = std::fmin(hmin, g.h(k));
    for (double eps : cfg.epsilons) {
      const double dt = be_dt(eps);
      if (vmax > 0.0 && dt > cfg.cfl_safety * hmin / vmax)
        throw CflViolation("epsilon = " + std::to_string(eps) + " too large: dt = dt_factor*Gamma*epsilon/lambda_bulk = " +
                           std::to_string(dt) + " violates dt <= cfl_safety*h/max|v0| = " +
                           std::to_string(cfg.cfl_safety * hmin / vmax));
    }
  }

  // One reference run of the director system.
  ELStepConfig ec;
  ec.scheme = cfg.scheme;
  ec.gradient_flow_only = grad_flow;
  ec.cfl_safety = cfg.cfl_safety;
  const std::size_t el_per = std::size_t(std::ceil(interval / cfg.el_dt - 1e-9));
  ec.dt = interval / double(el_per);
  std::vector<ELState> ref;
  {
    ELSolver el(g, d, ec);
    ELState st{0.0, grad_flow ? VectorField(g) : v0, ScalarField(g), n0};
    ref.push_back(st);
    for (int k = 1; k <= cfg.samples; ++k) {
      for (std::size_t j = 0; j < el_per; ++j) el.step(st);
      ref.push_back(st);
    }
  }
  std::vector<QField> q0_ref;
  for (const auto& st : ref) q0_ref.push_back(q0_of_director(st.n, s));

  for (double eps : cfg.epsilons) {
    MaterialParams pe = p;
    pe.epsilon = eps;
    BEStepConfig bc;
    bc.dt = be_dt(eps);
    const std::size_t per = std::size_t(std::llround(interval / bc.dt));
    bc.sigma_split = cfg.sigma_split;
    bc.scheme = cfg.scheme;
    bc.gradient_flow_only = grad_flow;
    bc.cfl_safety = cfg.cfl_safety;

    PreparedData prep = well_prepared_initial_data(n0, grad_flow ? VectorField(g) : v0, pe, d, eps, ops);
    BESolver be(g, pe, bc);
    BEState st = prep.be;
    StudyRow row;
    row.epsilon = eps;
    row.be_dt = bc.dt;
    row.err_at_0 = l2_diff(st.Q, q0_ref[0]);
    row.max_err = row.err_at_0;
    try {
      for (int k = 1; k <= cfg.samples; ++k) {
        for (std::size_t j = 0; j < per; ++j) be.step(st);
        const double e = l2_diff(st.Q, q0_ref[k]);
        row.max_err = std::fmax(row.max_err, e);
        if (k == cfg.samples) row.err_at_T = e;
      }
    } catch (const SolverAbort& ex) {
      throw SolverAbort(std::string(ex.what()) + " [epsilon = " + std::to_string(eps) + "]", ex.step);
    } catch (const CflViolation& ex) {
      throw CflViolation(std::string(ex.what()) + " [epsilon = " + std::to_string(eps) + "]");
    } catch (const Error& ex) {
      throw Error(std::string(ex.what()) + " [epsilon = " + std::to_string(eps) + "]");
    }
    row.be_steps = be.steps_taken();

    const ELState& fin = ref.back();
    const VectorField nt = director_rhs(fin, d, ops);
    const ExpansionData ex =
        leading_corrector(fin.n, fin.v, pe, d, nt, ops, std::numeric_limits<double>::infinity());
    const double e3 = eps * eps * eps;
    QField QR(g);
    VectorField vR(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      QR[i] = (1.0 / e3) * (st.Q[i] - ex.Q0[i] - eps * ex.Q1_perp[i]);
      vR[i] = (1.0 / e3) * (st.v[i] - fin.v[i]);
    }
    row.frak = remainder_energy(QR, vR, fin.n, pe, eps, ops);
    res.rows.push_back(row);
  }

  if (res.rows.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : res.rows) {
      x.push_back(r.epsilon);
      y.push_back(r.max_err);
    }
    res.slope = fitted_slope(x, y);
    res.slope_available = true;
  }
  return res;
}

}  // namespace nematic

#include "nematic/flow.hpp"

#include <array>
#include <cmath>

namespace nematic {

VectorField skew_advection(const VectorField& v, const DiffOps& ops) {
  const TensorField G = ops.velocity_gradient(v);
  TensorField vv(v.grid);
  for (std::size_t p = 0; p < v.size(); ++p) vv[p] = outer(v[p], v[p]);
  VectorField out = ops.divergence(vv);
  for (std::size_t p = 0; p < v.size(); ++p) {
    out[p] += G[p] * v[p];
    out[p] *= -0.5;
  }
  return out;
}

void viscous_projection_update(VectorField& v, ScalarField& p, const VectorField& force, double nu, double dt,
                               const DiffOps& ops, bool dealias_force) {
  const std::size_t ns = ops.spectral_size();
  const int dim = ops.grid().dim;
  std::array<Spectrum, 3> vh;
  Spectrum fh;
  for (int c = 0; c < 3; ++c) {
    ops.forward(v.component(c), vh[c]);
    ops.forward(force.component(c), fh);
    const cplx mean = vh[c][0];
    for (std::size_t m = 0; m < ns; ++m) {
      cplx f = fh[m];
      if (dealias_force && !ops.dealias_keep(m)) f = 0.0;
      vh[c][m] = (vh[c][m] + dt * f) / (1.0 + dt * nu * ops.kappa2(m));
    }
    vh[c][0] = mean;
  }
  Spectrum ph(ns, cplx(0.0));
  for (std::size_t m = 1; m < ns; ++m) {
    const double k2 = ops.kappa2(m);
    if (k2 == 0.0) {
      for (int c = 0; c < 3; ++c) vh[c][m] = 0.0;
      continue;
    }
    cplx kv = 0.0;
    for (int d = 0; d < dim; ++d) kv += ops.kappa(d)[m] * vh[d][m];
    ph[m] = cplx(0.0, -1.0) * kv / (dt * k2);
    for (int d = 0; d < dim; ++d) vh[d][m] -= ops.kappa(d)[m] * kv / k2;
  }
  std::vector<double> buf;
  for (int c = 0; c < 3; ++c) {
    ops.inverse(vh[c], buf);
    v.set_component(c, buf);
  }
  ops.inverse(ph, buf);
  p.grid = v.grid;
  p.data = buf;
}

double kinetic_energy(const VectorField& v) {
  return 0.5 * integrate(v.grid, [&](std::size_t i) { return dot(v[i], v[i]); });
}

double divergence_norm(const VectorField& v, const DiffOps& ops) { return l2_norm(ops.divergence(v)); }

double gradient_norm(const VectorField& v, const DiffOps& ops) {
  const TensorField G = ops.velocity_gradient(v);
  return std::sqrt(integrate(v.grid, [&](std::size_t i) { return frob(G[i], G[i]); }));
}

double max_speed(const VectorField& v) {
  double m = 0.0;
  for (const auto& x : v.data) m = std::fmax(m, norm(x));
  return m;
}

}  // namespace nematic

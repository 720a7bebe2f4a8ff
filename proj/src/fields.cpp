#include "nematic/fields.hpp"

#include <array>

namespace nematic {

namespace {

using CMat = std::array<std::array<cplx, 3>, 3>;

CMat full(const cplx* q) {
  CMat m;
  m[0][0] = q[0];
  m[0][1] = m[1][0] = q[1];
  m[0][2] = m[2][0] = q[2];
  m[1][1] = q[3];
  m[1][2] = m[2][1] = q[4];
  m[2][2] = -q[0] - q[3];
  return m;
}

}  // namespace

void elastic_symbol(const Vec3& kappa, double L1, double L23, const cplx* q, cplx* out) {
  const CMat m = full(q);
  std::array<cplx, 3> w{};
  for (int i = 0; i < 3; ++i) w[i] = m[i][0] * kappa[0] + m[i][1] * kappa[1] + m[i][2] * kappa[2];
  const cplx kw = kappa[0] * w[0] + kappa[1] * w[1] + kappa[2] * w[2];
  const double k2 = dot(kappa, kappa);
  auto entry = [&](int i, int j) {
    cplx r = L1 * k2 * m[i][j] + 0.5 * L23 * (w[i] * kappa[j] + kappa[i] * w[j]);
    if (i == j) r -= (L23 / 3.0) * kw;
    return r;
  };
  out[0] = entry(0, 0);
  out[1] = entry(0, 1);
  out[2] = entry(0, 2);
  out[3] = entry(1, 1);
  out[4] = entry(1, 2);
}

QField elastic_operator(const QField& Q, double L1, double L2, double L3, const DiffOps& ops) {
  require_same_grid(Q.grid, ops.grid(), "elastic_operator");
  const std::size_t ns = ops.spectral_size();
  std::array<Spectrum, 5> qh;
  for (int c = 0; c < 5; ++c) ops.forward(Q.component(c), qh[c]);
  std::array<Spectrum, 5> oh;
  for (auto& s : oh) s.resize(ns);
  cplx in[5], out[5];
  for (std::size_t m = 0; m < ns; ++m) {
    for (int c = 0; c < 5; ++c) in[c] = qh[c][m];
    elastic_symbol(ops.kappa_vec(m), L1, L2 + L3, in, out);
    for (int c = 0; c < 5; ++c) oh[c][m] = out[c];
  }
  QField r(Q.grid);
  std::vector<double> buf;
  for (int c = 0; c < 5; ++c) {
    ops.inverse(oh[c], buf);
    r.set_component(c, buf);
  }
  return r;
}

TensorField distortion_stress(const QField& Q, const QField& Qt, double L1, double L2, double L3,
                              const DiffOps& ops) {
  require_same_grid(Q.grid, Qt.grid, "distortion_stress");
  const auto gQ = ops.gradient(Q);
  const auto gT = (&Q == &Qt) ? gQ : ops.gradient(Qt);
  TensorField sigma(Q.grid);
  for (std::size_t p = 0; p < Q.size(); ++p) {
    std::array<Mat3, 3> A, B;
    for (int d = 0; d < 3; ++d) {
      A[d] = gQ[d][p].matrix();
      B[d] = gT[d][p].matrix();
    }
    Vec3 w;
    for (int k = 0; k < 3; ++k) w[k] = A[0](k, 0) + A[1](k, 1) + A[2](k, 2);
    Mat3& s = sigma[p];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double t1 = frob(A[j], B[i]);
        double t2 = 0.0, t3 = 0.0;
        for (int k = 0; k < 3; ++k) {
          t2 += w[k] * B[i](k, j);
          for (int l = 0; l < 3; ++l) t3 += A[l](k, j) * B[i](k, l);
        }
        s(i, j) = -(L1 * t1 + L2 * t2 + L3 * t3);
      }
  }
  return sigma;
}

double bulk_shift(const MaterialParams& p) {
  const double s = critical_s(p.a, p.b, p.c).first;
  return bulk_energy(uniaxial(s, Vec3{{0.0, 0.0, 1.0}}), p.a, p.b, p.c);
}

double elastic_density(const std::array<QTensor, 3>& dQ, double L1, double L2, double L3) {
  std::array<Mat3, 3> A;
  for (int d = 0; d < 3; ++d) A[d] = dQ[d].matrix();
  double grad2 = 0.0, div2 = 0.0, cross = 0.0;
  for (int d = 0; d < 3; ++d) grad2 += frob(A[d], A[d]);
  for (int i = 0; i < 3; ++i) {
    const double w = A[0](i, 0) + A[1](i, 1) + A[2](i, 2);
    div2 += w * w;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) cross += A[k](i, j) * A[j](i, k);
  }
  return 0.5 * (L1 * grad2 + L2 * div2 + L3 * cross);
}

LandauEnergy landau_energy(const QField& Q, const MaterialParams& p, const DiffOps& ops) {
  const auto g = ops.gradient(Q);
  const double shift = bulk_shift(p);
  LandauEnergy e;
  e.bulk_raw = integrate(Q.grid, [&](std::size_t i) { return bulk_energy(Q[i], p.a, p.b, p.c); }) / p.epsilon;
  e.bulk = integrate(Q.grid, [&](std::size_t i) { return bulk_energy(Q[i], p.a, p.b, p.c) - shift; }) / p.epsilon;
  e.elastic = integrate(Q.grid, [&](std::size_t i) {
    return elastic_density({g[0][i], g[1][i], g[2][i]}, p.L1, p.L2, p.L3);
  });
  e.total = e.bulk + e.elastic;
  return e;
}

QField molecular_field(const QField& Q, const MaterialParams& p, const DiffOps& ops) {
  QField r = elastic_operator(Q, p.L1, p.L2, p.L3, ops);
  const double inv_eps = 1.0 / p.epsilon;
  for (std::size_t i = 0; i < Q.size(); ++i) r[i] = -inv_eps * bulk_gradient(Q[i], p.a, p.b, p.c) - r[i];
  return r;
}

namespace {

Mat3 director_gradient_at(const std::array<VectorField, 3>& g, std::size_t p) {
  Mat3 G;
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) G(k, j) = g[j][p][k];
  return G;
}

}  // namespace

double frank_density(const Vec3& n, const Mat3& G, const FrankConstants& k) {
  const double div = trace(G);
  const double gg = frob(G, G);
  const double ggt = frob(G, transpose(G));
  const Vec3 a = G * n;
  const double a2 = dot(a, a);
  return 0.5 * k.k1 * div * div + 0.5 * k.k2 * (gg - ggt - a2) + 0.5 * k.k3 * a2 +
         0.5 * (k.k2 + k.k4) * (ggt - div * div);
}

Mat3 frank_flux_point(const Vec3& n, const Mat3& G, const FrankConstants& k) {
  const double div = trace(G);
  const Vec3 a = G * n;
  const Mat3 Gt = transpose(G);
  const Mat3 an = outer(a, n);
  const Mat3 I = Mat3::identity();
  return (k.k1 * div) * I + k.k2 * (G - Gt - an) + k.k3 * an + (k.k2 + k.k4) * (Gt - div * I);
}

double frank_energy(const DirectorField& n, const FrankConstants& k, const DiffOps& ops) {
  require_unit(n);
  const auto g = ops.gradient(n);
  return integrate(n.grid, [&](std::size_t p) { return frank_density(n[p], director_gradient_at(g, p), k); });
}

TensorField frank_flux(const DirectorField& n, const FrankConstants& k, const DiffOps& ops) {
  require_unit(n);
  const auto g = ops.gradient(n);
  TensorField P(n.grid);
  for (std::size_t p = 0; p < n.size(); ++p) P[p] = frank_flux_point(n[p], director_gradient_at(g, p), k);
  return P;
}

VectorField frank_molecular_field(const DirectorField& n, const FrankConstants& k, const DiffOps& ops) {
  require_unit(n);
  const auto g = ops.gradient(n);
  TensorField P(n.grid);
  VectorField lower(n.grid);
  for (std::size_t p = 0; p < n.size(); ++p) {
    const Mat3 G = director_gradient_at(g, p);
    P[p] = frank_flux_point(n[p], G, k);
    const Vec3 a = G * n[p];
    lower[p] = (k.k3 - k.k2) * (transpose(G) * a);
  }
  VectorField h = ops.divergence(P);
  for (std::size_t p = 0; p < n.size(); ++p) h[p] -= lower[p];
  return h;
}

StrainVorticity strain_vorticity(const VectorField& v, const DiffOps& ops) {
  const TensorField G = ops.velocity_gradient(v);
  StrainVorticity r{TensorField(v.grid), TensorField(v.grid)};
  for (std::size_t p = 0; p < v.size(); ++p) {
    r.D[p] = sym(G[p]);
    r.Omega[p] = skew(G[p]);
  }
  return r;
}

}  // namespace nematic

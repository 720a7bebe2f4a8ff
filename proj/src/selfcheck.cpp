#include "nematic/selfcheck.hpp"

#include <cmath>
#include <numbers>

namespace nematic {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec3 random_unit(Rng& rng) {
  std::normal_distribution<double> nd;
  for (;;) {
    Vec3 v{{nd(rng), nd(rng), nd(rng)}};
    const double l = norm(v);
    if (l > 1e-3) return (1.0 / l) * v;
  }
}

Vec3 random_perp(Rng& rng, const Vec3& n) {
  for (;;) {
    Vec3 v = random_unit(rng);
    v -= dot(v, n) * n;
    const double l = norm(v);
    if (l > 1e-3) return (1.0 / l) * v;
  }
}

QTensor random_qtensor(Rng& rng, double scale) {
  QTensor q;
  for (auto& x : q.q) x = uniform(rng, -scale, scale);
  return q;
}

MaterialParams random_params(Rng& rng) {
  MaterialParams p;
  p.a = uniform(rng, 0.05, 3.0);
  p.b = uniform(rng, 0.05, 3.0);
  p.c = uniform(rng, 0.1, 3.0);
  p.L1 = uniform(rng, 0.01, 2.0);
  p.L2 = uniform(rng, -0.5, 1.0) * p.L1;
  p.L3 = uniform(rng, -0.4, 1.0) * p.L1;
  p.Gamma = uniform(rng, 0.1, 3.0);
  p.xi = uniform(rng, -1.5, 1.5);
  p.eta = uniform(rng, 0.1, 3.0);
  p.epsilon = uniform(rng, 0.01, 1.0);
  return p;
}

DirectorField planar_director(const Grid& g, const std::function<double(const Vec3&)>& theta) {
  DirectorField n(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double th = theta(g.position(i));
    n[i] = Vec3{{std::cos(th), std::sin(th), 0.0}};
  }
  return n;
}

DirectorField standard_director(const Grid& g, double amp) {
  const double kx = 2.0 * std::numbers::pi / g.len[0];
  const double ky = 2.0 * std::numbers::pi / g.len[1];
  return planar_director(g, [&](const Vec3& x) { return amp * std::sin(kx * x[0]) * std::cos(ky * x[1]); });
}

std::vector<CheckResult> run_selftest(std::uint64_t seed, int draws) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  double kernel = 0.0, coerc = 0.0, inv = 0.0, trip = 0.0, pin = 0.0, jcons = 0.0, crit = 0.0;
  for (int t = 0; t < draws; ++t) {
    const MaterialParams p = random_params(rng);
    const BulkParams bp = p.bulk();
    const Vec3 n = random_unit(rng);
    const Vec3 m = random_perp(rng, n);
    crit = std::fmax(crit, max_abs(bulk_gradient(uniaxial(bp.s, n), bp)));
    const QTensor qin = QTensor::from_matrix(outer(n, m) + outer(m, n));
    kernel = std::fmax(kernel, max_abs(linearized_H(qin, bp, n)));
    const QTensor q = random_qtensor(rng);
    const QTensor qo = project_out(q, n);
    const double lhs = contract(linearized_H(qo, bp, n), qo);
    coerc = std::fmax(coerc, bp.coercivity_constant() * norm2(qo) - lhs);
    const QTensor back = inverse_H(linearized_H(qo, bp, n), bp, n);
    inv = std::fmax(inv, max_abs(back - qo) / (1.0 + max_abs(qo)));
    const QTensor a = project_in(random_qtensor(rng), n), b = project_in(random_qtensor(rng), n),
                  c = project_in(random_qtensor(rng), n);
    trip = std::fmax(trip, std::fabs(trace(a.matrix() * b.matrix() * c.matrix())));
    const Vec3 qn = q.matrix() * n;
    const double qnn = dot(n, qn);
    pin = std::fmax(pin, std::fabs(norm2(project_in(q, n)) - (2.0 * dot(qn, qn) - 2.0 * qnn * qnn)));
    const QTensor jref = -p.a * q - 0.5 * p.b * bilinear_B(q, q) + (p.c / 3.0) * trilinear_C(q, q, q);
    jcons = std::fmax(jcons, max_abs(bulk_gradient(q, bp) - jref));
  }
  out.push_back({"J(uniaxial(s+,n)) = 0", crit <= 1e-12, crit, 1e-12});
  out.push_back({"H_{s,n}(Q_in) = 0", kernel <= 1e-13, kernel, 1e-13});
  out.push_back({"<HQ,Q> >= c0|Q|^2 on Q_out", coerc <= 1e-10, coerc, 1e-10});
  out.push_back({"H^-1 H = id on Q_out", inv <= 1e-12, inv, 1e-12});
  out.push_back({"tr(Q1 Q2 Q3) = 0 on Q_in", trip <= 1e-14, trip, 1e-14});
  out.push_back({"|P_in Q|^2 = 2|Qn|^2 - 2(Q:nn)^2", pin <= 1e-13, pin, 1e-13});
  out.push_back({"J = -aQ - (b/2)B(Q,Q) + (c/3)C(Q,Q,Q)", jcons <= 1e-13, jcons, 1e-13});

  double ident = 0.0;
  bool diss = true;
  for (int t = 0; t < draws; ++t) {
    const MaterialParams p = random_params(rng);
    const DerivedCoefficients d = derive_coefficients(p);
    for (const auto& c : identity_checks(p, d)) {
      const double r = std::fabs(c.lhs - c.rhs) / (1.0 + std::fmax(std::fabs(c.lhs), std::fabs(c.rhs)));
      ident = std::fmax(ident, r);
    }
    diss = diss && check_dissipation(d).all();
  }
  out.push_back({"coefficient identities", ident <= 1e-12, ident, 1e-12});
  out.push_back({"Leslie dissipation inequalities", diss, diss ? 0.0 : 1.0, 0.0});
  return out;
}

}  // namespace nematic

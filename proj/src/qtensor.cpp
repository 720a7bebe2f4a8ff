#include "nematic/qtensor.hpp"

#include <cmath>

#include "nematic/errors.hpp"

namespace nematic {

QTensor QTensor::from_matrix(const Mat3& m) {
  const double tr3 = trace(m) / 3.0;
  QTensor r;
  r[0] = m(0, 0) - tr3;
  r[1] = 0.5 * (m(0, 1) + m(1, 0));
  r[2] = 0.5 * (m(0, 2) + m(2, 0));
  r[3] = m(1, 1) - tr3;
  r[4] = 0.5 * (m(1, 2) + m(2, 1));
  return r;
}

Mat3 QTensor::matrix() const {
  Mat3 m;
  m(0, 0) = q[0];
  m(0, 1) = m(1, 0) = q[1];
  m(0, 2) = m(2, 0) = q[2];
  m(1, 1) = q[3];
  m(1, 2) = m(2, 1) = q[4];
  m(2, 2) = -q[0] - q[3];
  return m;
}

double max_abs(const QTensor& x) {
  double r = std::fabs(x[0] + x[3]);
  for (double v : x.q) r = std::fmax(r, std::fabs(v));
  return r;
}

Vec3 renormalize(const Vec3& v) {
  const double len = norm(v);
  if (!(std::fabs(len - 1.0) <= 1e-6)) {
    throw InvalidInput("director is not unit length (|n| = " + std::to_string(len) + ")");
  }
  return (1.0 / len) * v;
}

Director Director::make(const Vec3& v) { return Director(renormalize(v)); }

std::pair<double, double> critical_s(double a, double b, double c) {
  if (!(c > 0.0)) throw InvalidInput("critical_s requires c > 0");
  if (a < 0.0 || b < 0.0) throw InvalidInput("critical_s requires a >= 0 and b >= 0");
  if (a == 0.0 && b == 0.0) throw DegeneratePotential("a = b = 0: the only critical point is Q = 0");
  const double disc = std::sqrt(b * b + 24.0 * a * c);
  return {(b + disc) / (4.0 * c), (b - disc) / (4.0 * c)};
}

BulkParams BulkParams::make(double a, double b, double c, Root root) {
  const auto [sp, sm] = critical_s(a, b, c);
  BulkParams p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.s = root == Root::Plus ? sp : sm;
  p.coercive = b * p.s > 0.0 && 2.0 * c * p.s * p.s - b * p.s > 0.0;
  if (root == Root::Plus && !p.coercive) {
    throw InvalidInput("bulk parameters are not coercive at s+: need bs > 0 and 2cs^2 - bs > 0");
  }
  return p;
}

double BulkParams::coercivity_constant() const { return std::fmin(b * s, 2.0 * c * s * s - b * s); }

QTensor uniaxial(double s, const Vec3& n) {
  if (std::fabs(norm(n) - 1.0) > 1e-12) throw InvalidInput("uniaxial requires a unit director");
  QTensor r;
  r[0] = s * (n[0] * n[0] - 1.0 / 3.0);
  r[1] = s * n[0] * n[1];
  r[2] = s * n[0] * n[2];
  r[3] = s * (n[1] * n[1] - 1.0 / 3.0);
  r[4] = s * n[1] * n[2];
  return r;
}

QTensor uniaxial(double s, const Director& n) { return uniaxial(s, n.vec()); }

double bulk_energy(const QTensor& Q, double a, double b, double c) {
  const Mat3 m = Q.matrix();
  const Mat3 m2 = m * m;
  const double tr2 = trace(m2);
  const double tr3 = frob(m2, m);
  return -0.5 * a * tr2 - (b / 3.0) * tr3 + 0.25 * c * tr2 * tr2;
}

double bulk_energy(const QTensor& Q, const BulkParams& p) { return bulk_energy(Q, p.a, p.b, p.c); }

QTensor bulk_gradient(const QTensor& Q, double a, double b, double c) {
  const Mat3 m = Q.matrix();
  const Mat3 m2 = m * m;
  const double tr2 = trace(m2);
  // from_matrix removes the trace of Q^2, which is exactly the (b/3)|Q|^2 I term.
  return (-a + c * tr2) * Q - b * QTensor::from_matrix(m2);
}

QTensor bulk_gradient(const QTensor& Q, const BulkParams& p) { return bulk_gradient(Q, p.a, p.b, p.c); }

QTensor bilinear_B(const Mat3& Q1, const Mat3& Q2) {
  const Mat3 p = Q1 * Q2;
  const Mat3 r = p + transpose(p) - (2.0 / 3.0) * trace(p) * Mat3::identity();
  return QTensor::from_matrix(r);
}

QTensor bilinear_B(const QTensor& Q1, const QTensor& Q2) { return bilinear_B(Q1.matrix(), Q2.matrix()); }

QTensor trilinear_C(const QTensor& Q1, const QTensor& Q2, const QTensor& Q3) {
  return contract(Q2, Q3) * Q1 + contract(Q1, Q3) * Q2 + contract(Q1, Q2) * Q3;
}

QTensor linearized_H(const QTensor& Q, const BulkParams& p, const Vec3& n) {
  const Mat3 m = Q.matrix();
  const Mat3 nn = outer(n, n);
  const double qnn = frob(m, nn);
  const Mat3 I = Mat3::identity();
  const double bs = p.b * p.s;
  const Mat3 r = bs * (m - (nn * m + m * nn) + (2.0 / 3.0) * qnn * I) +
                 2.0 * p.c * p.s * p.s * qnn * (nn - (1.0 / 3.0) * I);
  return QTensor::from_matrix(r);
}

QTensor linearized_H(const QTensor& Q, const BulkParams& p, const Director& n) {
  return linearized_H(Q, p, n.vec());
}

QTensor project_in(const QTensor& Q, const Vec3& n) {
  const Mat3 m = Q.matrix();
  const Mat3 nn = outer(n, n);
  return QTensor::from_matrix(nn * m + m * nn - 2.0 * frob(m, nn) * nn);
}

QTensor project_out(const QTensor& Q, const Vec3& n) { return Q - project_in(Q, n); }
QTensor project_in(const QTensor& Q, const Director& n) { return project_in(Q, n.vec()); }
QTensor project_out(const QTensor& Q, const Director& n) { return project_out(Q, n.vec()); }

QTensor inverse_H(const QTensor& Q, const BulkParams& p, const Vec3& n, double tol_ker) {
  const double qn = std::sqrt(norm2(Q));
  if (qn == 0.0) return QTensor{};
  const double in = std::sqrt(norm2(project_in(Q, n)));
  if (in > tol_ker * qn) {
    throw DomainError("inverse_H: argument has a kernel component of relative size " + std::to_string(in / qn));
  }
  const double bs = p.b * p.s;
  const double den = 4.0 * p.c * p.s - p.b;
  if (bs == 0.0 || den == 0.0) throw SingularParameter("inverse_H: bs = 0 or 4cs - b = 0");
  const Mat3 m = Q.matrix();
  const Mat3 nn = outer(n, n);
  const double qnn = frob(m, nn);
  const Mat3 I = Mat3::identity();
  const Mat3 r = (1.0 / bs) * (m - (nn * m + m * nn) + (2.0 / 3.0) * qnn * I) +
                 ((4.0 * p.b + 2.0 * p.c * p.s) / (bs * den)) * qnn * (nn - (1.0 / 3.0) * I);
  return QTensor::from_matrix(r);
}

QTensor inverse_H(const QTensor& Q, const BulkParams& p, const Director& n, double tol_ker) {
  return inverse_H(Q, p, n.vec(), tol_ker);
}

QTensor s_coupling(const QTensor& Q, const QTensor& M, double xi) {
  if (xi == 0.0) return QTensor{};
  const Mat3 qb = Q.matrix() + (1.0 / 3.0) * Mat3::identity();
  const Mat3 mm = M.matrix();
  const Mat3 r = mm * qb + qb * mm - 2.0 * contract(Q, M) * qb;
  return xi * QTensor::from_matrix(r);
}

QTensor commutator_sym(const QTensor& Q, const Mat3& W) {
  const Mat3 m = Q.matrix();
  return QTensor::from_matrix(m * W - W * m);
}

}  // namespace nematic

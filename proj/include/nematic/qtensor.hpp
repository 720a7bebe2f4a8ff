#pragma once

#include <array>
#include <utility>

#include "nematic/linalg.hpp"

namespace nematic {

// Symmetric traceless 3x3 tensor stored as (q11, q12, q13, q22, q23); q33 = -q11 - q22.
struct QTensor {
  std::array<double, 5> q{};

  double& operator[](int i) { return q[i]; }
  double operator[](int i) const { return q[i]; }

  // Symmetric traceless part of m.
  static QTensor from_matrix(const Mat3& m);
  Mat3 matrix() const;

  QTensor& operator+=(const QTensor& o) {
    for (int i = 0; i < 5; ++i) q[i] += o.q[i];
    return *this;
  }
  QTensor& operator-=(const QTensor& o) {
    for (int i = 0; i < 5; ++i) q[i] -= o.q[i];
    return *this;
  }
  QTensor& operator*=(double s) {
    for (auto& x : q) x *= s;
    return *this;
  }
};

inline QTensor operator+(QTensor a, const QTensor& b) { return a += b; }
inline QTensor operator-(QTensor a, const QTensor& b) { return a -= b; }
inline QTensor operator*(double s, QTensor a) { return a *= s; }
inline QTensor operator*(QTensor a, double s) { return a *= s; }
inline QTensor operator-(QTensor a) { return a *= -1.0; }

// Q:P = tr(QP).
inline double contract(const QTensor& x, const QTensor& y) {
  const double x33 = -x[0] - x[3];
  const double y33 = -y[0] - y[3];
  return x[0] * y[0] + x[3] * y[3] + x33 * y33 + 2.0 * (x[1] * y[1] + x[2] * y[2] + x[4] * y[4]);
}

inline double norm2(const QTensor& x) { return contract(x, x); }

double max_abs(const QTensor& x);

// Unit vector. make() renormalizes inputs within 1e-6 of unit length and rejects the rest.
class Director {
 public:
  static Director make(const Vec3& v);
  const Vec3& vec() const { return n_; }
  double operator[](int i) const { return n_[i]; }

 private:
  explicit Director(const Vec3& v) : n_(v) {}
  Vec3 n_;
};

Vec3 renormalize(const Vec3& v);

enum class Root { Plus, Minus };

struct BulkParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double s = 0.0;
  bool coercive = false;

  // Root::Plus requires bs > 0 and 2cs^2 - bs > 0; Root::Minus is accepted and flagged non-coercive.
  static BulkParams make(double a, double b, double c, Root root = Root::Plus);
  double coercivity_constant() const;
};

std::pair<double, double> critical_s(double a, double b, double c);

QTensor uniaxial(double s, const Director& n);
QTensor uniaxial(double s, const Vec3& n);

double bulk_energy(const QTensor& Q, const BulkParams& p);
double bulk_energy(const QTensor& Q, double a, double b, double c);
QTensor bulk_gradient(const QTensor& Q, const BulkParams& p);
QTensor bulk_gradient(const QTensor& Q, double a, double b, double c);

QTensor bilinear_B(const Mat3& Q1, const Mat3& Q2);
QTensor bilinear_B(const QTensor& Q1, const QTensor& Q2);
QTensor trilinear_C(const QTensor& Q1, const QTensor& Q2, const QTensor& Q3);

QTensor linearized_H(const QTensor& Q, const BulkParams& p, const Vec3& n);
QTensor linearized_H(const QTensor& Q, const BulkParams& p, const Director& n);

constexpr double kTolKer = 1e-10;
QTensor inverse_H(const QTensor& Q, const BulkParams& p, const Vec3& n, double tol_ker = kTolKer);
QTensor inverse_H(const QTensor& Q, const BulkParams& p, const Director& n, double tol_ker = kTolKer);

QTensor project_in(const QTensor& Q, const Vec3& n);
QTensor project_out(const QTensor& Q, const Vec3& n);
QTensor project_in(const QTensor& Q, const Director& n);
QTensor project_out(const QTensor& Q, const Director& n);

QTensor s_coupling(const QTensor& Q, const QTensor& M, double xi);

// Q x - x Q for the antisymmetric x is symmetric; the commutator enters the co-rotational derivative.
QTensor commutator_sym(const QTensor& Q, const Mat3& W);

}  // namespace nematic

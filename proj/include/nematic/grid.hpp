#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "nematic/errors.hpp"
#include "nematic/linalg.hpp"
#include "nematic/qtensor.hpp"

namespace nematic {

// Periodic box. For dim == 2 the z extent is a single plane and nothing depends on z.
struct Grid {
  int dim = 2;
  std::array<int, 3> n{8, 8, 1};
  std::array<double, 3> len{1.0, 1.0, 1.0};

  static Grid make2d(int nx, int ny, double lx = 1.0, double ly = 1.0);
  static Grid make3d(int nx, int ny, int nz, double lx = 1.0, double ly = 1.0, double lz = 1.0);

  double h(int d) const { return len[d] / n[d]; }
  std::size_t size() const { return std::size_t(n[0]) * n[1] * n[2]; }
  double cell_volume() const;
  double volume() const { return cell_volume() * double(size()); }
  std::size_t index(int i, int j, int k = 0) const { return (std::size_t(i) * n[1] + j) * n[2] + k; }
  double coord(int d, int i) const { return i * h(d); }
  Vec3 position(std::size_t idx) const;

  bool operator==(const Grid& o) const { return dim == o.dim && n == o.n && len == o.len; }
};

template <class T>
struct Components;

template <>
struct Components<double> {
  static constexpr int count = 1;
  static double* ptr(double& x) { return &x; }
  static const double* ptr(const double& x) { return &x; }
};
template <>
struct Components<Vec3> {
  static constexpr int count = 3;
  static double* ptr(Vec3& x) { return x.c.data(); }
  static const double* ptr(const Vec3& x) { return x.c.data(); }
};
template <>
struct Components<QTensor> {
  static constexpr int count = 5;
  static double* ptr(QTensor& x) { return x.q.data(); }
  static const double* ptr(const QTensor& x) { return x.q.data(); }
};
template <>
struct Components<Mat3> {
  static constexpr int count = 9;
  static double* ptr(Mat3& x) { return x.a.data(); }
  static const double* ptr(const Mat3& x) { return x.a.data(); }
};

template <class T>
struct Field {
  Grid grid;
  std::vector<T> data;

  Field() = default;
  explicit Field(const Grid& g, const T& fill = T{}) : grid(g), data(g.size(), fill) {}

  std::size_t size() const { return data.size(); }
  T& operator[](std::size_t i) { return data[i]; }
  const T& operator[](std::size_t i) const { return data[i]; }

  std::vector<double> component(int c) const {
    std::vector<double> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = Components<T>::ptr(data[i])[c];
    return out;
  }
  void set_component(int c, const std::vector<double>& v) {
    for (std::size_t i = 0; i < data.size(); ++i) Components<T>::ptr(data[i])[c] = v[i];
  }
};

using ScalarField = Field<double>;
using VectorField = Field<Vec3>;
using QField = Field<QTensor>;
using TensorField = Field<Mat3>;
// Unit vectors; operators that need |n| = 1 check it.
using DirectorField = Field<Vec3>;

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InvalidInput(std::string(what) + ": grid mismatch");
}

// Pairwise summation of f(0..n-1) in a fixed order.
template <class F>
double pairwise_sum(std::size_t lo, std::size_t hi, const F& f) {
  if (hi - lo <= 16) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(lo, mid, f) + pairwise_sum(mid, hi, f);
}

// Midpoint quadrature of f over the grid.
template <class F>
double integrate(const Grid& g, const F& f) {
  return g.cell_volume() * pairwise_sum(0, g.size(), f);
}

template <class T>
bool all_finite(const Field<T>& f) {
  for (const auto& x : f.data) {
    const double* p = Components<T>::ptr(x);
    for (int c = 0; c < Components<T>::count; ++c)
      if (!std::isfinite(p[c])) return false;
  }
  return true;
}

// sqrt of integral of |f|^2.
double l2_norm(const QField& f);
double l2_norm(const VectorField& f);
double l2_norm(const ScalarField& f);
double l2_diff(const QField& a, const QField& b);

void require_unit(const DirectorField& n, double tol = 1e-6);

}  // namespace nematic

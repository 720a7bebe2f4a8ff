#include "nematic/grid.hpp"

#include <cmath>
#include <string>

namespace nematic {

namespace {

void check_extent(int n, double len) {
  if (n < 8 || n % 2 != 0) throw InvalidInput("grid extents must be even and at least 8 (got " + std::to_string(n) + ")");
  if (!(len > 0.0)) throw InvalidInput("grid box lengths must be positive");
}

}  // namespace

Grid Grid::make2d(int nx, int ny, double lx, double ly) {
  check_extent(nx, lx);
  check_extent(ny, ly);
  Grid g;
  g.dim = 2;
  g.n = {nx, ny, 1};
  g.len = {lx, ly, 1.0};
  return g;
}

Grid Grid::make3d(int nx, int ny, int nz, double lx, double ly, double lz) {
  check_extent(nx, lx);
  check_extent(ny, ly);
  check_extent(nz, lz);
  Grid g;
  g.dim = 3;
  g.n = {nx, ny, nz};
  g.len = {lx, ly, lz};
  return g;
}

double Grid::cell_volume() const {
  double v = h(0) * h(1);
  if (dim == 3) v *= h(2);
  return v;
}

Vec3 Grid::position(std::size_t idx) const {
  const int k = int(idx % n[2]);
  const std::size_t r = idx / n[2];
  const int j = int(r % n[1]);
  const int i = int(r / n[1]);
  return {{coord(0, i), coord(1, j), dim == 3 ? coord(2, k) : 0.0}};
}

double l2_norm(const QField& f) {
  return std::sqrt(integrate(f.grid, [&](std::size_t i) { return norm2(f[i]); }));
}

double l2_norm(const VectorField& f) {
  return std::sqrt(integrate(f.grid, [&](std::size_t i) { return dot(f[i], f[i]); }));
}

double l2_norm(const ScalarField& f) {
  return std::sqrt(integrate(f.grid, [&](std::size_t i) { return f[i] * f[i]; }));
}

double l2_diff(const QField& a, const QField& b) {
  require_same_grid(a.grid, b.grid, "l2_diff");
  return std::sqrt(integrate(a.grid, [&](std::size_t i) { return norm2(a[i] - b[i]); }));
}

void require_unit(const DirectorField& n, double tol) {
  for (const auto& v : n.data)
    if (!(std::fabs(norm(v) - 1.0) <= tol)) throw InvalidInput("director field is not unit length");
}

}  // namespace nematic

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nematic/coefficients.hpp"
#include "nematic/grid.hpp"

namespace nematic {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
Vec3 random_unit(Rng& rng);
Vec3 random_perp(Rng& rng, const Vec3& n);
QTensor random_qtensor(Rng& rng, double scale = 1.0);
// Random parameters satisfying every validation inequality.
MaterialParams random_params(Rng& rng);

DirectorField planar_director(const Grid& g, const std::function<double(const Vec3&)>& theta);
// theta0 = amp sin(2 pi x / Lx) cos(2 pi y / Ly), in the x-y plane.
DirectorField standard_director(const Grid& g, double amp = 0.5);

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double tol = 0.0;
};

std::vector<CheckResult> run_selftest(std::uint64_t seed, int draws);

}  // namespace nematic

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "nematic/grid.hpp"

namespace nematic {

enum class Scheme { Central2, Spectral };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;

// Periodic differentiation on a grid. Every first derivative is multiplication by i*kappa(k) in
// Fourier space: kappa = k for the spectral scheme (Nyquist set to 0) and sin(kh)/h for central2.
// Second derivatives are compositions of first derivatives.
class DiffOps {
 public:
  DiffOps(const Grid& g, Scheme s);
  ~DiffOps();
  DiffOps(const DiffOps&) = delete;
  DiffOps& operator=(const DiffOps&) = delete;

  const Grid& grid() const { return grid_; }
  Scheme scheme() const { return scheme_; }

  std::size_t spectral_size() const { return nspec_; }
  const std::vector<double>& kappa(int d) const { return kappa_[d]; }
  double kappa2(std::size_t m) const { return kappa2_[m]; }
  Vec3 kappa_vec(std::size_t m) const { return {{kappa_[0][m], kappa_[1][m], kappa_[2][m]}}; }
  bool dealias_keep(std::size_t m) const { return keep_[m] != 0; }

  void forward(const std::vector<double>& in, Spectrum& out) const;
  // Normalized inverse transform.
  void inverse(const Spectrum& in, std::vector<double>& out) const;

  std::vector<double> diff(const std::vector<double>& f, int d) const;
  std::vector<double> dealias(const std::vector<double>& f) const;

  template <class T>
  Field<T> derivative(const Field<T>& f, int d) const;
  template <class T>
  std::array<Field<T>, 3> gradient(const Field<T>& f) const;
  template <class T>
  Field<T> dealias(const Field<T>& f) const;

  // (div sigma)_i = sum_j d_j sigma_ij.
  VectorField divergence(const TensorField& sigma) const;
  ScalarField divergence(const VectorField& v) const;
  // grad(v)_ij = d_j v_i.
  TensorField velocity_gradient(const VectorField& v) const;

 private:
  std::vector<double> stencil_diff(const std::vector<double>& f, int d) const;

  Grid grid_;
  Scheme scheme_;
  std::size_t nspec_ = 0;
  std::array<std::vector<double>, 3> kappa_;
  std::vector<double> kappa2_;
  std::vector<char> keep_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

template <class T>
Field<T> DiffOps::derivative(const Field<T>& f, int d) const {
  require_same_grid(f.grid, grid_, "derivative");
  Field<T> out(grid_);
  for (int c = 0; c < Components<T>::count; ++c) out.set_component(c, diff(f.component(c), d));
  return out;
}

template <class T>
std::array<Field<T>, 3> DiffOps::gradient(const Field<T>& f) const {
  require_same_grid(f.grid, grid_, "gradient");
  std::array<Field<T>, 3> out{Field<T>(grid_), Field<T>(grid_), Field<T>(grid_)};
  if (scheme_ == Scheme::Central2) {
    for (int d = 0; d < grid_.dim; ++d) out[d] = derivative(f, d);
    return out;
  }
  Spectrum fh, gh(nspec_);
  std::vector<double> r;
  for (int c = 0; c < Components<T>::count; ++c) {
    forward(f.component(c), fh);
    for (int d = 0; d < grid_.dim; ++d) {
      const auto& kd = kappa_[d];
      for (std::size_t m = 0; m < nspec_; ++m) gh[m] = cplx(0.0, kd[m]) * fh[m];
      inverse(gh, r);
      out[d].set_component(c, r);
    }
  }
  return out;
}

template <class T>
Field<T> DiffOps::dealias(const Field<T>& f) const {
  Field<T> out(grid_);
  for (int c = 0; c < Components<T>::count; ++c) out.set_component(c, dealias(f.component(c)));
  return out;
}

}  // namespace nematic

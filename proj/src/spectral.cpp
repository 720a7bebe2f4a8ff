#include "nematic/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

namespace nematic {

namespace {

// The FFTW planner is not reentrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int signed_index(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::Spectral ? "spectral" : "central2"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "spectral") return Scheme::Spectral;
  if (s == "central2") return Scheme::Central2;
  throw InvalidInput("unknown derivative scheme '" + s + "' (expected central2 or spectral)");
}

DiffOps::DiffOps(const Grid& g, Scheme s) : grid_(g), scheme_(s) {
  const int rank = g.dim;
  const int last = g.n[rank - 1];
  std::array<int, 3> cn{g.n[0], g.n[1], g.n[2]};
  cn[rank - 1] = last / 2 + 1;
  nspec_ = std::size_t(cn[0]) * cn[1] * (rank == 3 ? cn[2] : 1);

  for (auto& k : kappa_) k.assign(nspec_, 0.0);
  kappa2_.assign(nspec_, 0.0);
  keep_.assign(nspec_, 1);

  const double two_pi = 2.0 * std::numbers::pi;
  std::size_t m = 0;
  const int c2 = rank == 3 ? cn[2] : 1;
  for (int i = 0; i < cn[0]; ++i)
    for (int j = 0; j < cn[1]; ++j)
      for (int k = 0; k < c2; ++k, ++m) {
        const std::array<int, 3> idx{i, j, k};
        double k2 = 0.0;
        for (int d = 0; d < rank; ++d) {
          const int nd = g.n[d];
          const int kint = d == rank - 1 ? idx[d] : signed_index(idx[d], nd);
          double kap = 0.0;
          if (2 * std::abs(kint) != nd) {
            const double kp = two_pi * kint / g.len[d];
            kap = s == Scheme::Spectral ? kp : std::sin(kp * g.h(d)) / g.h(d);
          }
          kappa_[d][m] = kap;
          k2 += kap * kap;
          if (3 * std::abs(kint) > nd) keep_[m] = 0;
        }
        kappa2_[m] = k2;
      }

  const std::size_t nreal = g.size();
  double* rbuf = fftw_alloc_real(nreal);
  fftw_complex* cbuf = fftw_alloc_complex(nspec_);
  const int dims[3] = {g.n[0], g.n[1], g.n[2]};
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_r2c(rank, dims, rbuf, cbuf, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_c2r(rank, dims, cbuf, rbuf, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_free(rbuf);
  fftw_free(cbuf);
  if (!plan_fwd_ || !plan_bwd_) throw Error("FFTW plan creation failed");
}

DiffOps::~DiffOps() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void DiffOps::forward(const std::vector<double>& in, Spectrum& out) const {
  out.resize(nspec_);
  std::vector<double> tmp(in);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), tmp.data(), reinterpret_cast<fftw_complex*>(out.data()));
}

void DiffOps::inverse(const Spectrum& in, std::vector<double>& out) const {
  Spectrum tmp(in);
  out.resize(grid_.size());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_), reinterpret_cast<fftw_complex*>(tmp.data()), out.data());
  const double scale = 1.0 / double(grid_.size());
  for (auto& x : out) x *= scale;
}

std::vector<double> DiffOps::stencil_diff(const std::vector<double>& f, int d) const {
  std::vector<double> out(f.size(), 0.0);
  if (d >= grid_.dim) return out;
  const int nx = grid_.n[0], ny = grid_.n[1], nz = grid_.n[2];
  const double inv2h = 0.5 / grid_.h(d);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        std::size_t ip, im;
        if (d == 0) {
          ip = grid_.index((i + 1) % nx, j, k);
          im = grid_.index((i + nx - 1) % nx, j, k);
        } else if (d == 1) {
          ip = grid_.index(i, (j + 1) % ny, k);
          im = grid_.index(i, (j + ny - 1) % ny, k);
        } else {
          ip = grid_.index(i, j, (k + 1) % nz);
          im = grid_.index(i, j, (k + nz - 1) % nz);
        }
        out[grid_.index(i, j, k)] = (f[ip] - f[im]) * inv2h;
      }
  return out;
}

std::vector<double> DiffOps::diff(const std::vector<double>& f, int d) const {
  if (d >= grid_.dim) return std::vector<double>(f.size(), 0.0);
  if (scheme_ == Scheme::Central2) return stencil_diff(f, d);
  Spectrum fh;
  forward(f, fh);
  const auto& kd = kappa_[d];
  for (std::size_t m = 0; m < nspec_; ++m) fh[m] *= cplx(0.0, kd[m]);
  std::vector<double> out;
  inverse(fh, out);
  return out;
}

std::vector<double> DiffOps::dealias(const std::vector<double>& f) const {
  Spectrum fh;
  forward(f, fh);
  for (std::size_t m = 0; m < nspec_; ++m)
    if (!keep_[m]) fh[m] = 0.0;
  std::vector<double> out;
  inverse(fh, out);
  return out;
}

VectorField DiffOps::divergence(const TensorField& sigma) const {
  require_same_grid(sigma.grid, grid_, "divergence");
  VectorField out(grid_);
  for (int i = 0; i < 3; ++i) {
    std::vector<double> acc(grid_.size(), 0.0);
    for (int j = 0; j < grid_.dim; ++j) {
      const auto dj = diff(sigma.component(3 * i + j), j);
      for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += dj[p];
    }
    out.set_component(i, acc);
  }
  return out;
}

ScalarField DiffOps::divergence(const VectorField& v) const {
  require_same_grid(v.grid, grid_, "divergence");
  ScalarField out(grid_);
  for (int j = 0; j < grid_.dim; ++j) {
    const auto dj = diff(v.component(j), j);
    for (std::size_t p = 0; p < dj.size(); ++p) out[p] += dj[p];
  }
  return out;
}

TensorField DiffOps::velocity_gradient(const VectorField& v) const {
  const auto g = gradient(v);
  TensorField out(grid_);
  for (std::size_t p = 0; p < grid_.size(); ++p)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[p](i, j) = g[j][p][i];
  return out;
}

}  // namespace nematic

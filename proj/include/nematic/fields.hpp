#pragma once

#include "nematic/coefficients.hpp"
#include "nematic/grid.hpp"
#include "nematic/spectral.hpp"

namespace nematic {

// Fourier symbol of the elastic operator applied to one mode q (5 complex components).
void elastic_symbol(const Vec3& kappa, double L1, double L23, const cplx* q, cplx* out);

QField elastic_operator(const QField& Q, double L1, double L2, double L3, const DiffOps& ops);

// sigma_ij = -(L1 Q_kl,j Qt_kl,i + L2 Q_km,m Qt_kj,i + L3 Q_kj,l Qt_kl,i)
TensorField distortion_stress(const QField& Q, const QField& Qt, double L1, double L2, double L3,
                              const DiffOps& ops);

struct LandauEnergy {
  double bulk = 0.0;
  double elastic = 0.0;
  double total = 0.0;
  double bulk_raw = 0.0;
};

// F_b at the uniaxial minimizer; subtracted so that the ground state carries zero bulk energy.
double bulk_shift(const MaterialParams& p);
double elastic_density(const std::array<QTensor, 3>& dQ, double L1, double L2, double L3);

LandauEnergy landau_energy(const QField& Q, const MaterialParams& p, const DiffOps& ops);

QField molecular_field(const QField& Q, const MaterialParams& p, const DiffOps& ops);

struct FrankConstants {
  double k1 = 1.0, k2 = 1.0, k3 = 1.0, k4 = 0.0;
  static FrankConstants from(const DerivedCoefficients& d) { return {d.k1, d.k2, d.k3, d.k4}; }
};

// G(k,j) = d_j n_k.
double frank_density(const Vec3& n, const Mat3& G, const FrankConstants& k);
// P(k,j) = dE/d(d_j n_k).
Mat3 frank_flux_point(const Vec3& n, const Mat3& G, const FrankConstants& k);

double frank_energy(const DirectorField& n, const FrankConstants& k, const DiffOps& ops);
TensorField frank_flux(const DirectorField& n, const FrankConstants& k, const DiffOps& ops);
VectorField frank_molecular_field(const DirectorField& n, const FrankConstants& k, const DiffOps& ops);

struct StrainVorticity {
  TensorField D;
  TensorField Omega;
};

StrainVorticity strain_vorticity(const VectorField& v, const DiffOps& ops);

}  // namespace nematic

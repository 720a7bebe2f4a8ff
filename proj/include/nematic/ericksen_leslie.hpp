#pragma once

#include <cstddef>
#include <vector>

#include "nematic/coefficients.hpp"
#include "nematic/fields.hpp"
#include "nematic/flow.hpp"

namespace nematic {

struct ELState {
  double t = 0.0;
  VectorField v;
  ScalarField p;
  DirectorField n;

  static ELState at_rest(const DirectorField& n) { return {0.0, VectorField(n.grid), ScalarField(n.grid), n}; }
};

struct ELStepConfig {
  double dt = 1e-4;
  Scheme scheme = Scheme::Central2;
  bool gradient_flow_only = false;
  double cfl_safety = 0.5;
  double drift_tol = 1e-3;
  bool dealias = true;
};

// N = n_t + v.grad n - Omega n.
VectorField corotational_rate(const ELState& st, const VectorField& n_t, const DiffOps& ops);

// n_t = (I - nn)(Omega n - v.grad n + (1/gamma1)(h - gamma2 D n)).
VectorField director_rhs(const ELState& st, const DerivedCoefficients& d, const DiffOps& ops);

TensorField leslie_stress(const ELState& st, const VectorField& N, const DerivedCoefficients& d, const DiffOps& ops);
TensorField ericksen_stress(const ELState& st, const DerivedCoefficients& d, const DiffOps& ops);

struct ELEnergy {
  double kinetic = 0.0;
  double frank = 0.0;
  double total = 0.0;
};

ELEnergy el_energy(const ELState& st, const DerivedCoefficients& d, const DiffOps& ops);

// Pointwise integrand beta1 (D:nn)^2 + beta2 |D|^2 + beta3 |Dn|^2 + |n x h|^2 / gamma1.
double dissipation_density(const Mat3& D, const Vec3& n, const Vec3& h, const DerivedCoefficients& d);
double el_dissipation(const ELState& st, const DerivedCoefficients& d, const DiffOps& ops);

class ELSolver {
 public:
  ELSolver(const Grid& g, const DerivedCoefficients& d, const ELStepConfig& cfg);

  void step(ELState& st);
  const DiffOps& ops() const { return ops_; }
  const ELStepConfig& config() const { return cfg_; }
  std::size_t steps_taken() const { return steps_; }
  double last_drift() const { return last_drift_; }

 private:
  DerivedCoefficients coeffs_;
  ELStepConfig cfg_;
  DiffOps ops_;
  std::size_t steps_ = 0;
  double last_drift_ = 0.0;
};

ELState el_step(const ELState& st, const ELStepConfig& cfg, const DerivedCoefficients& d);

struct EnergyLawRow {
  std::size_t step = 0;
  double t = 0.0;
  double kinetic = 0.0;
  double frank = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double mismatch = 0.0;
};

struct EnergyLawReport {
  std::vector<EnergyLawRow> rows;
  double max_mismatch = 0.0;
  double min_rhs = 0.0;
};

// lhs is the centred difference -(E(t+) - E(t-)) / (2 dt_log); rhs the dissipation integral at t.
// mismatch = |lhs - rhs| / max(|rhs|, tiny).
EnergyLawReport el_energy_law(const std::vector<ELState>& traj, const DerivedCoefficients& d, const DiffOps& ops,
                              std::size_t steps_per_log = 1);

}  // namespace nematic

#pragma once

#include <cstddef>
#include <memory>

#include "nematic/coefficients.hpp"
#include "nematic/fields.hpp"
#include "nematic/flow.hpp"

namespace nematic {

struct BEState {
  double t = 0.0;
  VectorField v;
  ScalarField p;
  QField Q;

  static BEState zeros(const Grid& g) { return {0.0, VectorField(g), ScalarField(g), QField(g)}; }
};

struct BEStepConfig {
  double dt = 1e-3;
  // Negative values select the default a + b s+ + 3 c s+^2.
  double sigma_split = -1.0;
  double lambda_bulk = -1.0;
  Scheme scheme = Scheme::Central2;
  bool gradient_flow_only = false;
  double cfl_safety = 0.5;
  bool dealias = true;
};

double default_lambda_bulk(const MaterialParams& p);

// sigma^s + sigma^a + sigma^d.
TensorField assemble_stresses(const BEState& st, const MaterialParams& p, const DiffOps& ops);

// (1/Gamma) H + S_Q(D) - v.grad Q - (Q Omega - Omega Q).
QField q_rhs(const BEState& st, const MaterialParams& p, const DiffOps& ops);

struct BEEnergy {
  double kinetic = 0.0;
  double bulk = 0.0;
  double elastic = 0.0;
  double total = 0.0;
};

BEEnergy be_energy(const BEState& st, const MaterialParams& p, const DiffOps& ops);

void check_be_cfl(const BEState& st, const BEStepConfig& cfg, const MaterialParams& p);

class BESolver {
 public:
  BESolver(const Grid& g, const MaterialParams& p, const BEStepConfig& cfg);

  void step(BEState& st);
  const DiffOps& ops() const { return ops_; }
  const BEStepConfig& config() const { return cfg_; }
  double sigma() const { return sigma_; }
  std::size_t steps_taken() const { return steps_; }

 private:
  void update_q(BEState& st, const QField& explicit_rhs) const;

  MaterialParams params_;
  BEStepConfig cfg_;
  DiffOps ops_;
  double sigma_ = 0.0;
  std::size_t steps_ = 0;
};

BEState be_step(const BEState& st, const BEStepConfig& cfg, const MaterialParams& p);

}  // namespace nematic

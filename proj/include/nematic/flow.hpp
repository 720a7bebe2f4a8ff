#pragma once

#include "nematic/grid.hpp"
#include "nematic/spectral.hpp"

namespace nematic {

// -1/2 (v.grad v + div(v (x) v)).
VectorField skew_advection(const VectorField& v, const DiffOps& ops);

// One projection step: v* = v + dt*force, (1 - dt*nu*Lap) v** = v*, v = P v**.
// The k = 0 velocity mode is left untouched; p receives the projection pressure.
void viscous_projection_update(VectorField& v, ScalarField& p, const VectorField& force, double nu, double dt,
                               const DiffOps& ops, bool dealias_force);

double kinetic_energy(const VectorField& v);
double divergence_norm(const VectorField& v, const DiffOps& ops);
double gradient_norm(const VectorField& v, const DiffOps& ops);
double max_speed(const VectorField& v);

}  // namespace nematic

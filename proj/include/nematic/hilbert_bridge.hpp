#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nematic/beris_edwards.hpp"
#include "nematic/ericksen_leslie.hpp"

namespace nematic {

QField q0_of_director(const DirectorField& n, double s);

struct ExpansionData {
  QField Q0;
  QField Q1_perp;
  QField H0;
  DirectorField n;
  VectorField v0;
  double max_in_component = 0.0;  // max |P_in(argument)| / max |argument|
};

constexpr double kTolConsistency = 1e-6;

// Q1_perp = inverse_H(-L(Q0) + H0) with H0 = -Gamma s (N n + n N) + Gamma S_Q0(D0).
ExpansionData leading_corrector(const DirectorField& n, const VectorField& v0, const MaterialParams& p,
                                const DerivedCoefficients& d, const VectorField& n_t, const DiffOps& ops,
                                double tol_consistency = kTolConsistency);

struct PreparedData {
  BEState be;
  ELState el;
  ExpansionData expansion;
};

PreparedData well_prepared_initial_data(const DirectorField& n0, const VectorField& v0, const MaterialParams& p,
                                        const DerivedCoefficients& d, double epsilon, const DiffOps& ops);

struct RemainderEnergy {
  double group0 = 0.0;  // |v|^2 + (1/eps) H^eps_n(Q):Q + |Q|^2
  double group1 = 0.0;  // eps^2 (|grad v|^2 + (1/eps) H^eps_n(grad Q):grad Q)
  double group2 = 0.0;  // eps^4 (|Lap v|^2 + (1/eps) H^eps_n(Lap Q):Lap Q)
  double total = 0.0;
  double singular_part = 0.0;  // smallest of the (1/eps) contributions over the three groups
  bool warning = false;        // a (1/eps) contribution came out negative
};

RemainderEnergy remainder_energy(const QField& QR, const VectorField& vR, const DirectorField& n,
                                 const MaterialParams& p, double epsilon, const DiffOps& ops);

enum class StudyMode { GradientFlow, Full };

std::string to_string(StudyMode m);
StudyMode study_mode_from_string(const std::string& s);

struct StudyConfig {
  std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
  double T = 1.0;
  StudyMode mode = StudyMode::GradientFlow;
  int samples = 10;
  // BE step: dt = dt_factor * Gamma * eps / lambda_bulk, rounded down to hit every sample time.
  double dt_factor = 0.1;
  // Stabilization of the BE bulk term; 0 keeps the slow dynamics free of a (1 + sigma dt/(Gamma eps)) lag.
  double sigma_split = 0.0;
  double el_dt = 1e-4;
  Scheme scheme = Scheme::Spectral;
  double cfl_safety = 0.5;
};

struct StudyRow {
  double epsilon = 0.0;
  double max_err = 0.0;
  double err_at_T = 0.0;
  double err_at_0 = 0.0;
  std::size_t be_steps = 0;
  double be_dt = 0.0;
  RemainderEnergy frak;
};

struct StudyResult {
  std::vector<StudyRow> rows;
  bool slope_available = false;
  double slope = 0.0;
  std::vector<double> sample_times;
};

// Least-squares slope of log y against log x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

StudyResult convergence_study(const DirectorField& n0, const VectorField& v0, const MaterialParams& p,
                              const StudyConfig& cfg);

}  // namespace nematic

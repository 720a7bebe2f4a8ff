#pragma once

#include <string>
#include <vector>

#include "nematic/qtensor.hpp"

namespace nematic {

struct MaterialParams {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double L1 = 1.0;
  double L2 = 0.0;
  double L3 = 0.0;
  double Gamma = 1.0;
  double xi = 1.0;
  double eta = 1.0;
  double epsilon = 0.1;

  // Throws ValidationError naming the first violated inequality.
  void validate() const;
  BulkParams bulk() const { return BulkParams::make(a, b, c, Root::Plus); }
};

struct DerivedCoefficients {
  double s = 0.0;
  double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0;
  double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0, alpha4 = 0.0, alpha5 = 0.0, alpha6 = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;
  double beta1 = 0.0, beta2 = 0.0, beta3 = 0.0;
  double L0 = 0.0;
  double c0 = 0.0;
};

DerivedCoefficients derive_coefficients(const MaterialParams& p);

struct IdentityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// |lhs - rhs| <= tol * (1 + max(|lhs|, |rhs|)).
bool rel_close(double lhs, double rhs, double tol = 1e-12);

// Every closed-form identity the derived record must satisfy, evaluated against p.
std::vector<IdentityCheck> identity_checks(const MaterialParams& p, const DerivedCoefficients& d,
                                           double tol = 1e-12);

struct DissipationReport {
  double beta2 = 0.0;
  double two_beta2_plus_beta3 = 0.0;
  double combo = 0.0;  // (3/2) beta2 + beta3 + beta1
  bool beta2_positive = false;
  bool two_beta2_plus_beta3_positive = false;
  bool combo_positive = false;
  bool all() const { return beta2_positive && two_beta2_plus_beta3_positive && combo_positive; }
};

DissipationReport check_dissipation(const DerivedCoefficients& d);

struct ParodiReport {
  double a2_plus_a3 = 0.0;
  double a6_minus_a5 = 0.0;
  double a3_minus_a2 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  // Relations with the signs exactly as printed: a2+a3 = a6-a5, gamma1 = a3-a2, gamma2 = a6-a5.
  bool printed_parodi = false;
  bool printed_gamma1 = false;
  bool printed_gamma2 = false;
  // The same relations with the sign flipped: a2+a3 = -(a6-a5), gamma1 = -(a3-a2), gamma2 = -(a6-a5).
  bool flipped_parodi = false;
  bool flipped_gamma1 = false;
  bool flipped_gamma2 = false;
};

ParodiReport parodi_report(const DerivedCoefficients& d, double tol = 1e-12);

}  // namespace nematic

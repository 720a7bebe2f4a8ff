#include "nematic/coefficients.hpp"

#include <cmath>

#include "nematic/errors.hpp"

namespace nematic {

namespace {

bool finite_all(const MaterialParams& p) {
  for (double x : {p.a, p.b, p.c, p.L1, p.L2, p.L3, p.Gamma, p.xi, p.eta, p.epsilon})
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

void MaterialParams::validate() const {
  if (!finite_all(*this)) throw ValidationError("material parameters must be finite");
  if (!(L1 > 0.0) || !(L1 + L2 + L3 > 0.0))
    throw ValidationError("L1 > 0 and L1+L2+L3 > 0 (elastic coercivity, ass:L) violated");
  if (!(c > 0.0)) throw ValidationError("c > 0 violated");
  if (!(a > 0.0)) throw ValidationError("a > 0 violated (bulk coercivity 2cs^2 - bs = 3a > 0)");
  if (!(b > 0.0)) throw ValidationError("b > 0 violated (bulk coercivity bs > 0)");
  if (!(Gamma > 0.0)) throw ValidationError("Gamma > 0 violated");
  if (!(eta > 0.0)) throw ValidationError("eta > 0 violated");
  if (!(epsilon > 0.0)) throw ValidationError("epsilon > 0 violated");
}

DerivedCoefficients derive_coefficients(const MaterialParams& p) {
  p.validate();
  const double s = critical_s(p.a, p.b, p.c).first;
  const double G = p.Gamma, xi = p.xi;
  DerivedCoefficients d;
  d.s = s;
  d.k1 = (2.0 * p.L1 + p.L2 + p.L3) * s * s;
  d.k2 = 2.0 * p.L1 * s * s;
  d.k3 = d.k1;
  d.k4 = p.L3 * s * s;
  d.gamma1 = 2.0 * G * s * s;
  d.gamma2 = -2.0 * G * xi * s * (s + 2.0) / 3.0;
  d.alpha1 = -2.0 * G * xi * xi * s * s * (3.0 - 2.0 * s) * (1.0 + 2.0 * s) / 3.0;
  const double rot = G * xi * s * (2.0 + s) / 3.0;
  d.alpha2 = G * s * s - rot;
  d.alpha3 = -G * s * s - rot;
  d.alpha4 = p.eta + 4.0 * G * xi * xi * (1.0 - s) * (1.0 - s) / 9.0;
  const double ext = G * xi * xi * s * (4.0 - s) / 3.0;
  d.alpha5 = ext - rot;
  d.alpha6 = ext + rot;
  const double g22 = d.gamma2 * d.gamma2 / d.gamma1;
  d.beta1 = d.alpha1 + g22;
  d.beta2 = d.alpha4;
  d.beta3 = d.alpha5 + d.alpha6 - g22;
  d.L0 = std::fmin(p.L1, p.L1 + p.L2 + p.L3);
  d.c0 = std::fmin(p.b * s, 2.0 * p.c * s * s - p.b * s);
  return d;
}

bool rel_close(double lhs, double rhs, double tol) {
  return std::fabs(lhs - rhs) <= tol * (1.0 + std::fmax(std::fabs(lhs), std::fabs(rhs)));
}

std::vector<IdentityCheck> identity_checks(const MaterialParams& p, const DerivedCoefficients& d, double tol) {
  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, double lhs, double rhs) {
    out.push_back({std::move(name), lhs, rhs, rel_close(lhs, rhs, tol)});
  };
  const double s = d.s;
  const double g22 = d.gamma2 * d.gamma2 / d.gamma1;
  add("2cs^2-bs-3a = 0", 2.0 * p.c * s * s - p.b * s, 3.0 * p.a);
  add("k1 = (2L1+L2+L3)s^2", d.k1, (2.0 * p.L1 + p.L2 + p.L3) * s * s);
  add("k3 = k1", d.k3, d.k1);
  add("k2 = 2L1 s^2", d.k2, 2.0 * p.L1 * s * s);
  add("k4 = L3 s^2", d.k4, p.L3 * s * s);
  add("γ1 = 2Γs^2", d.gamma1, 2.0 * p.Gamma * s * s);
  add("γ2 = -2Γξs(s+2)/3", d.gamma2, -2.0 * p.Gamma * p.xi * s * (s + 2.0) / 3.0);
  add("α2+α3 = γ2", d.alpha2 + d.alpha3, d.gamma2);
  add("α6-α5 = -γ2", d.alpha6 - d.alpha5, -d.gamma2);
  add("α3-α2 = -γ1", d.alpha3 - d.alpha2, -d.gamma1);
  add("β1 = α1+γ2²/γ1", d.beta1, d.alpha1 + g22);
  add("β2 = α4", d.beta2, d.alpha4);
  add("β3 = α5+α6-γ2²/γ1", d.beta3, d.alpha5 + d.alpha6 - g22);
  add("2α4+α5+α6-γ2²/γ1 = 2η", 2.0 * d.alpha4 + d.alpha5 + d.alpha6 - g22, 2.0 * p.eta);
  const double om = (1.0 - s) * (1.0 + 2.0 * s);
  add("(3/2)α4+α5+α6+α1 = (3/2)η+(2/3)Γξ²(1-s)²(1+2s)²", 1.5 * d.alpha4 + d.alpha5 + d.alpha6 + d.alpha1,
      1.5 * p.eta + (2.0 / 3.0) * p.Gamma * p.xi * p.xi * om * om);
  return out;
}

DissipationReport check_dissipation(const DerivedCoefficients& d) {
  DissipationReport r;
  r.beta2 = d.beta2;
  r.two_beta2_plus_beta3 = 2.0 * d.beta2 + d.beta3;
  r.combo = 1.5 * d.beta2 + d.beta3 + d.beta1;
  r.beta2_positive = r.beta2 > 0.0;
  r.two_beta2_plus_beta3_positive = r.two_beta2_plus_beta3 > 0.0;
  r.combo_positive = r.combo > 0.0;
  return r;
}

ParodiReport parodi_report(const DerivedCoefficients& d, double tol) {
  ParodiReport r;
  r.a2_plus_a3 = d.alpha2 + d.alpha3;
  r.a6_minus_a5 = d.alpha6 - d.alpha5;
  r.a3_minus_a2 = d.alpha3 - d.alpha2;
  r.gamma1 = d.gamma1;
  r.gamma2 = d.gamma2;
  r.printed_parodi = rel_close(r.a2_plus_a3, r.a6_minus_a5, tol);
  r.printed_gamma1 = rel_close(r.gamma1, r.a3_minus_a2, tol);
  r.printed_gamma2 = rel_close(r.gamma2, r.a6_minus_a5, tol);
  r.flipped_parodi = rel_close(r.a2_plus_a3, -r.a6_minus_a5, tol);
  r.flipped_gamma1 = rel_close(r.gamma1, -r.a3_minus_a2, tol);
  r.flipped_gamma2 = rel_close(r.gamma2, -r.a6_minus_a5, tol);
  return r;
}

}  // namespace nematic

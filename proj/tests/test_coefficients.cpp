#include <catch_amalgamated.hpp>

#include <cmath>

#include "nematic/errors.hpp"
#include "nematic/selfcheck.hpp"

using namespace nematic;
using Catch::Approx;

namespace {

MaterialParams unit_params() {
  MaterialParams p;
  p.a = p.b = p.c = 1.0;
  p.L1 = 1.0;
  p.L2 = p.L3 = 0.0;
  p.Gamma = p.xi = p.eta = 1.0;
  return p;
}

}  // namespace

TEST_CASE("derived coefficients for the unit parameter set") {
  const DerivedCoefficients d = derive_coefficients(unit_params());
  CHECK(d.s == 1.5);
  CHECK(d.k1 == Approx(4.5));
  CHECK(d.k2 == Approx(4.5));
  CHECK(d.k3 == Approx(4.5));
  CHECK(d.k4 == 0.0);
  CHECK(d.gamma1 == Approx(4.5));
  CHECK(d.gamma2 == Approx(-3.5));
  CHECK(d.alpha1 == Approx(0.0).margin(1e-15));
  CHECK(d.alpha2 == Approx(0.5));
  CHECK(d.alpha3 == Approx(-4.0));
  CHECK(d.alpha4 == Approx(1.0 + 1.0 / 9.0));
  CHECK(d.alpha5 == Approx(-0.5));
  CHECK(d.alpha6 == Approx(3.0));
  CHECK(d.beta1 == Approx(49.0 / 18.0));
  CHECK(d.beta2 == Approx(10.0 / 9.0));
  CHECK(d.beta3 == Approx(2.5 - 49.0 / 18.0));
  CHECK(d.L0 == 1.0);
  CHECK(d.c0 == Approx(1.5));
}

TEST_CASE("xi = 0 removes the flow-alignment terms") {
  MaterialParams p = unit_params();
  p.xi = 0.0;
  const DerivedCoefficients d = derive_coefficients(p);
  CHECK(d.gamma2 == 0.0);
  CHECK(d.alpha1 == 0.0);
  CHECK(d.alpha5 == 0.0);
  CHECK(d.alpha6 == 0.0);
  CHECK(d.alpha2 == Approx(p.Gamma * d.s * d.s));
  CHECK(d.alpha3 == Approx(-p.Gamma * d.s * d.s));
  CHECK(d.alpha4 == p.eta);

  const DissipationReport r = check_dissipation(d);
  CHECK(r.all());
  CHECK(r.beta2 == Approx(1.0));
  CHECK(r.two_beta2_plus_beta3 == Approx(2.0));
  CHECK(r.combo == Approx(1.5));
}

TEST_CASE("validation names the violated inequality") {
  MaterialParams p = unit_params();
  p.L1 = -1.0;
  try {
    p.validate();
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("L1 > 0") != std::string::npos);
  }
  p = unit_params();
  p.L2 = -3.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = unit_params();
  p.Gamma = 0.0;
  CHECK_THROWS_AS(derive_coefficients(p), ValidationError);
  p = unit_params();
  p.eta = -1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = unit_params();
  p.c = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("dissipation report on the unit set and on a tampered record") {
  const MaterialParams p = unit_params();
  const DerivedCoefficients d = derive_coefficients(p);
  const DissipationReport r = check_dissipation(d);
  CHECK(r.all());
  CHECK(r.combo == Approx(1.5 + 8.0 / 3.0));

  DerivedCoefficients bad = d;
  bad.beta2 = -1.0;
  CHECK_FALSE(check_dissipation(bad).beta2_positive);
  CHECK_FALSE(check_dissipation(bad).all());
}

TEST_CASE("Parodi-type relations are reported with their sign") {
  const ParodiReport r = parodi_report(derive_coefficients(unit_params()));
  CHECK(r.a2_plus_a3 == Approx(-3.5));
  CHECK(r.a6_minus_a5 == Approx(3.5));
  CHECK(r.a3_minus_a2 == Approx(-4.5));
  CHECK_FALSE(r.printed_parodi);
  CHECK_FALSE(r.printed_gamma1);
  CHECK_FALSE(r.printed_gamma2);
  CHECK(r.flipped_parodi);
  CHECK(r.flipped_gamma1);
  CHECK(r.flipped_gamma2);

  MaterialParams p = unit_params();
  p.xi = 0.0;
  const ParodiReport z = parodi_report(derive_coefficients(p));
  CHECK(z.a2_plus_a3 == 0.0);
  CHECK(z.a6_minus_a5 == 0.0);
  CHECK(z.printed_parodi);
  CHECK(z.flipped_parodi);

  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const DerivedCoefficients d = derive_coefficients(random_params(rng));
    CHECK(std::fabs(d.alpha2 + d.alpha3 - d.gamma2) <= 1e-12 * (1 + std::fabs(d.gamma2)));
  }
}

TEST_CASE("identities hold over random parameter draws") {
  Rng rng(43);
  for (int t = 0; t < 1000; ++t) {
    const MaterialParams p = random_params(rng);
    const DerivedCoefficients d = derive_coefficients(p);
    for (const auto& c : identity_checks(p, d)) {
      INFO(c.name << ": " << c.lhs << " vs " << c.rhs);
      CHECK(c.pass);
    }
    CHECK(d.s == critical_s(p.a, p.b, p.c).first);
    CHECK(check_dissipation(d).all());
    CHECK(d.alpha4 > 0.0);
    CHECK(std::fmin(d.k1, std::fmin(d.k2, d.k3)) > 0.0);
    CHECK(d.L0 > 0.0);
    CHECK(d.c0 > 0.0);
  }
}

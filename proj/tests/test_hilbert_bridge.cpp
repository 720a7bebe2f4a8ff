#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "nematic/hilbert_bridge.hpp"
#include "support/field_samples.hpp"

using namespace nematic;

TEST_CASE("leading-order tensor of a director field") {
  const Grid g = Grid::make2d(8, 8);
  const QField Q = q0_of_director(DirectorField(g, Vec3{{0.0, 0.0, 1.0}}), 1.5);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Mat3 m = Q[i].matrix();
    CHECK(m(0, 0) == Catch::Approx(-0.5));
    CHECK(m(1, 1) == Catch::Approx(-0.5));
    CHECK(m(2, 2) == Catch::Approx(1.0));
    CHECK(m(0, 1) == 0.0);
  }
  Rng rng(3);
  const DirectorField n = samples::random_director_field(g, rng, 1, 0.3);
  const QField Qn = q0_of_director(n, 0.7);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(norm(Qn[i].matrix() * n[i] - (2.0 * 0.7 / 3.0) * n[i]) < 1e-15);
}

TEST_CASE("first corrector") {
  const Grid g = Grid::make2d(32, 32);
  DiffOps ops(g, Scheme::Spectral);
  MaterialParams p;
  p.L1 = 0.05;
  p.L2 = 0.02;
  p.xi = 0.4;
  const DerivedCoefficients d = derive_coefficients(p);
  const BulkParams bp = p.bulk();

  SECTION("uniform director at rest") {
    const DirectorField n(g, Vec3{{0.0, 0.6, 0.8}});
    const ExpansionData e = leading_corrector(n, VectorField(g), p, d, VectorField(g), ops);
    CHECK(samples::max_abs_diff(e.Q1_perp, QField(g)) < 1e-14);
    CHECK(samples::max_abs_diff(e.H0, QField(g)) < 1e-14);
  }

  SECTION("planar field in gradient flow") {
    const DirectorField n = standard_director(g, 0.5);
    const ELState st = ELState::at_rest(n);
    const VectorField nt = director_rhs(st, d, ops);
    const ExpansionData e = leading_corrector(n, VectorField(g), p, d, nt, ops);
    CHECK(e.max_in_component <= 1e-8);
    const QField LQ0 = elastic_operator(e.Q0, p.L1, p.L2, p.L3, ops);
    double solve = 0.0, kernel = 0.0, h0 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const QTensor target = project_out(e.H0[i] - LQ0[i], n[i]);
      solve = std::fmax(solve, max_abs(linearized_H(e.Q1_perp[i], bp, n[i]) - target));
      kernel = std::fmax(kernel, max_abs(project_in(e.Q1_perp[i], n[i])));
      const QTensor ref = (-p.Gamma * d.s) * QTensor::from_matrix(outer(nt[i], n[i]) + outer(n[i], nt[i]));
      h0 = std::fmax(h0, max_abs(e.H0[i] - ref));
    }
    CHECK(solve < 1e-9);
    CHECK(kernel < 1e-12);
    CHECK(h0 < 1e-12);
  }

  SECTION("flowing random field") {
    Rng rng(5);
    ELState st = ELState::at_rest(samples::random_director_field(g, rng, 1, 0.1));
    st.v = samples::random_solenoidal(g, rng, 1, 0.05);
    const VectorField nt = director_rhs(st, d, ops);
    const ExpansionData e = leading_corrector(st.n, st.v, p, d, nt, ops);
    CHECK(e.max_in_component <= 1e-8);
  }

  SECTION("inconsistent time derivative") {
    const DirectorField n = standard_director(g, 0.5);
    CHECK_THROWS_AS(leading_corrector(n, VectorField(g), p, d, VectorField(g), ops), ConsistencyError);
  }
}

TEST_CASE("well-prepared initial data") {
  const Grid g = Grid::make2d(32, 32);
  DiffOps ops(g, Scheme::Spectral);
  MaterialParams p;
  p.L1 = 0.05;
  const DerivedCoefficients d = derive_coefficients(p);
  const DirectorField n = standard_director(g, 0.4);
  const double eps = 0.05;
  const PreparedData w = well_prepared_initial_data(n, VectorField(g), p, d, eps, ops);
  QField ref(g);
  for (std::size_t i = 0; i < g.size(); ++i) ref[i] = w.expansion.Q0[i] + eps * w.expansion.Q1_perp[i];
  CHECK(samples::max_abs_diff(w.be.Q, ref) == 0.0);
  CHECK(samples::max_abs_diff(w.el.n, n) == 0.0);
  CHECK(w.be.t == 0.0);
  CHECK(samples::max_abs_diff(w.be.v, VectorField(g)) == 0.0);
  CHECK(l2_diff(w.be.Q, w.expansion.Q0) > 0.0);
}

TEST_CASE("remainder energy") {
  const Grid g = Grid::make2d(16, 16);
  DiffOps ops(g, Scheme::Spectral);
  MaterialParams p;
  const double eps = 0.1;
  const DirectorField n(g, Vec3{{0.0, 0.0, 1.0}});
  const RemainderEnergy zero = remainder_energy(QField(g), VectorField(g), n, p, eps, ops);
  CHECK(zero.total == 0.0);
  CHECK_FALSE(zero.warning);

  Rng rng(7);
  const QTensor out = project_out(random_qtensor(rng), n[0]);
  const RemainderEnergy c = remainder_energy(QField(g, out), VectorField(g), n, p, eps, ops);
  const double ref = (contract(linearized_H(out, p.bulk(), n[0]), out) / eps + norm2(out)) * g.volume();
  CHECK(c.group0 == Catch::Approx(ref).epsilon(1e-12));
  CHECK(std::fabs(c.group1) < 1e-12);
  CHECK(std::fabs(c.group2) < 1e-12);
  CHECK(c.singular_part >= 0.0);
  CHECK_FALSE(c.warning);

  const QTensor in = project_in(random_qtensor(rng), n[0]);
  const RemainderEnergy k = remainder_energy(QField(g, in), VectorField(g), n, p, eps, ops);
  CHECK(k.group0 == Catch::Approx(norm2(in) * g.volume()).epsilon(1e-12));

  const VectorField v = samples::random_solenoidal(g, rng, 2, 0.3);
  const RemainderEnergy rv = remainder_energy(QField(g), v, n, p, eps, ops);
  CHECK(rv.group0 == Catch::Approx(integrate(g, [&](std::size_t i) { return dot(v[i], v[i]); })).epsilon(1e-12));
  CHECK(rv.group1 > 0.0);
  CHECK(rv.group2 > 0.0);
}

TEST_CASE("log-log slope fit") {
  const std::vector<double> x{0.2, 0.1, 0.05, 0.025};
  std::vector<double> y;
  for (double e : x) y.push_back(3.0 * std::pow(e, 1.5));
  CHECK(fitted_slope(x, y) == Catch::Approx(1.5).epsilon(1e-12));
  CHECK_THROWS_AS(fitted_slope({0.1}, {1.0}), InvalidInput);
  CHECK_THROWS_AS(fitted_slope({0.1, 0.2}, {1.0}), InvalidInput);

  CHECK(study_mode_from_string("full") == StudyMode::Full);
  CHECK(to_string(study_mode_from_string("gradient_flow")) == "gradient_flow");
  CHECK_THROWS_AS(study_mode_from_string("fast"), InvalidInput);
}

TEST_CASE("small epsilon study") {
  const Grid g = Grid::make2d(32, 32);
  MaterialParams p;
  p.L1 = 0.01;
  const DirectorField n = standard_director(g, 0.5);
  StudyConfig cfg;
  cfg.epsilons = {0.2, 0.1};
  cfg.T = 0.2;
  cfg.samples = 4;
  const StudyResult r = convergence_study(n, VectorField(g), p, cfg);
  REQUIRE(r.rows.size() == 2);
  REQUIRE(r.sample_times.size() == 5);
  CHECK(r.slope_available);
  CHECK(r.slope >= 0.8);
  CHECK(r.slope <= 1.2);
  for (const auto& row : r.rows) {
    CHECK(row.max_err >= row.err_at_T);
    CHECK(row.max_err >= row.err_at_0);
    CHECK(row.be_steps > 0);
    CHECK(row.be_dt * row.be_steps == Catch::Approx(cfg.T));
  }

  CHECK(r.rows[1].max_err < r.rows[0].max_err);
  DiffOps ops(g, Scheme::Spectral);
  const DerivedCoefficients d = derive_coefficients(p);
  for (const auto& row : r.rows) {
    const PreparedData w = well_prepared_initial_data(n, VectorField(g), p, d, row.epsilon, ops);
    CHECK(row.err_at_0 == Catch::Approx(row.epsilon * l2_norm(w.expansion.Q1_perp)).epsilon(1e-12));
  }

  const StudyResult flat = convergence_study(DirectorField(g, Vec3{{0.6, 0.0, 0.8}}), VectorField(g), p, cfg);
  for (const auto& row : flat.rows) CHECK(row.max_err < 1e-13);

  StudyConfig full = cfg;
  full.mode = StudyMode::Full;
  VectorField strong(g);
  for (std::size_t i = 0; i < g.size(); ++i) strong[i] = Vec3{{20.0 * std::sin(6.283185307179586 * g.position(i)[1]), 0.0, 0.0}};
  CHECK_THROWS_AS(convergence_study(n, strong, p, full), CflViolation);

  StudyConfig one = cfg;
  one.epsilons = {0.1};
  CHECK_FALSE(convergence_study(n, VectorField(g), p, one).slope_available);

  StudyConfig unsorted = cfg;
  unsorted.epsilons = {0.1, 0.2};
  CHECK_THROWS_AS(convergence_study(n, VectorField(g), p, unsorted), InvalidInput);

  StudyConfig fast = cfg;
  fast.dt_factor = 0.9;
  CHECK_THROWS_AS(convergence_study(n, VectorField(g), p, fast), CflViolation);
}

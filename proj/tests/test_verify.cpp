#include <doctest.h>

#include <cmath>
#include <random>

#include "asymtrunc/errors.hpp"
#include "asymtrunc/field.hpp"
#include "asymtrunc/verify/elliptic.hpp"
#include "asymtrunc/verify/exponents.hpp"
#include "asymtrunc/verify/functionals.hpp"
#include "asymtrunc/verify/generators.hpp"
#include "asymtrunc/verify/inequalities.hpp"
#include "oracles.hpp"

using namespace asymtrunc;

TEST_CASE("determinants") {
  CHECK(det2(2.0, 0.0, 0.0, 3.0) == 6.0);
  CHECK(det2(1.0, 0.0, 0.0, 1.0) == 1.0);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> ud(-9, 9);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> m(9);
    for (auto& x : m) x = ud(rng);
    CHECK(det3(m) == oracle::cofactor_det(m, 3));
    CHECK(QuasiconcaveFunctional::det3()(m, 3) == oracle::cofactor_det(m, 3));
  }
  const std::vector<double> v{1.0, -2.0, 0.5, 3.0};
  CHECK(QuasiconcaveFunctional::neg_ell1_power(2.0)(v, 2) == -42.25);
  CHECK(QuasiconcaveFunctional::from_name("neg-ell1", 3.0).kind == FunctionalKind::neg_ell1_power);
  CHECK_THROWS_AS(QuasiconcaveFunctional::from_name("trace"), ValidationError);

  const RadialMap id = gen_radial_map(1.0, 32);
  const ScalarField det = F_eval(QuasiconcaveFunctional::det2(), jacobian(id.u));
  for (std::size_t i = 0; i < det.size(); ++i) {
    if (id.annulus[i]) CHECK(det[i] == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto [fp, fm] = F_split(QuasiconcaveFunctional::neg_ell1_power(2.0), jacobian(id.u));
  for (double x : fp.values) CHECK(x == 0.0);
}

TEST_CASE("null Lagrangian check") {
  const std::vector<double> I{1.0, 0.0, 0.0, 1.0};
  const auto zero = null_lagrangian_check(QuasiconcaveFunctional::det2(), I, PeriodicField::zero(2), 32);
  CHECK(zero.lhs == zero.rhs);
  CHECK(zero.defect == 0.0);

  const PeriodicField psi = PeriodicField::random(2, 3, 2, 0.05, 1);
  const auto r = null_lagrangian_check(QuasiconcaveFunctional::det2(), I, psi, 128);
  CHECK(r.defect <= 0.05);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  for (int t = 0; t < 5; ++t) {
    std::vector<double> A(4);
    for (auto& x : A) x = ud(rng);
    const PeriodicField q = PeriodicField::random(2, 4, 3, 0.3, 10 + t);
    const auto c = null_lagrangian_check(QuasiconcaveFunctional::neg_ell1_power(1.5), A, q, 32);
    CHECK(c.lhs >= c.rhs);
  }

  PeriodicField bad = PeriodicField::zero(2);
  bad.components[0].push_back({{0.5, 1.0}, 1.0, 0.0});
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("elliptic operator") {
  const GridSpec g = GridSpec::cube(2, 4, 0.25);
  VectorField grad(g, 2);
  for (std::size_t i = 0; i < g.cell_count(); ++i) grad[0][i] = 2.0;

  EllipticOperatorSpec unit = EllipticOperatorSpec::isotropic(g, 3.0, A1Kind::unit);
  CHECK(elliptic_eval(unit, grad)[0].values == grad[0].values);

  EllipticOperatorSpec spec = EllipticOperatorSpec::isotropic(g, 3.0, A1Kind::power, 4.0);
  spec.a2[1] = ScalarField(g, 4.0);
  CHECK(spec.a1(2.0) == 2.0);
  const VectorField out = elliptic_eval(spec, grad);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    CHECK(out[0][i] == 2.0 * spec.a1(2.0));
    CHECK(out[1][i] == 0.0);
  }

  EllipticOperatorSpec two = EllipticOperatorSpec::isotropic(g, 2.0, A1Kind::power);
  CHECK(two.a1(3.0) == 1.0);
  CHECK(check_a1(two).bounded);
  CHECK(check_a1(spec).bounded);

  spec.a2[1] = ScalarField(g, 5.0);
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  CHECK_THROWS_AS(EllipticOperatorSpec::isotropic(g, 1.0, A1Kind::power), ValidationError);
}

TEST_CASE("weak form pairing") {
  const PHarmonic ph = gen_p_harmonic_radial(3.0, 2, 32);
  const EllipticOperatorSpec spec = EllipticOperatorSpec::isotropic(ph.u.grid, 3.0, A1Kind::unit);
  ScalarField test(ph.u.grid);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (auto& x : test.values) x = nd(rng);
  const VectorField f = elliptic_eval(spec, gradient(ph.u));
  CHECK(weak_form_pairing(spec, ph.u, test, f) == 0.0);
  CHECK(weak_form_pairing(spec, ph.u, ScalarField(ph.u.grid), VectorField(ph.u.grid, 2)) == 0.0);
}

TEST_CASE("good/bad split on the sawtooth against brute force") {
  const Sawtooth s = gen_sawtooth(9.0, 1.0, 0.1, 80);
  const ScalarField& u = s.u;
  const RadiusSet r = RadiusSet::full(u.grid);
  ScalarField pos(u.grid), neg(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = oracle::forward_difference(u, i, 0);
    pos[i] = std::max(d, 0.0);
    neg[i] = std::max(-d, 0.0);
  }
  const ScalarField np = oracle::box_max(pos, {r.axis(0)});
  const ScalarField nn = oracle::box_max(neg, {r.axis(0)});
  const double lam = 3.0, mu = 2.0;
  const auto [good, bad] = good_bad_split(u, lam, mu, r);
  CHECK(bad.count() > 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool want_good = np[i] * (1 + 1e-12) <= lam && nn[i] * (1 + 1e-12) <= mu;
    const bool want_bad = np[i] > lam * (1 + 1e-12) || nn[i] > mu * (1 + 1e-12);
    if (want_good) CHECK(good[i]);
    if (want_bad) CHECK(bad[i]);
    CHECK(good[i] != bad[i]);
  }
  const auto [all, none] = good_bad_split(u, 1e9, 1e9, r);
  CHECK(none.count() == 0);
  const auto [few, most] = good_bad_split(u, 1e-3, 1e-3, r);
  CHECK(most.count() > 0);
}

TEST_CASE("exponent arithmetic") {
  CHECK(exponent_alpha(1.5, 2.0) == doctest::Approx(2.5 / 3.0).epsilon(1e-15));
  CHECK(improvement_step(1.5, 2.0) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(exponent_alpha(1.999999, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(exponent_alpha(2.0, 2.0), ValidationError);
  CHECK_THROWS_AS(exponent_alpha(0.5, 2.0), ValidationError);

  const ExponentIteration it = exponent_iterate(1.5, 2.0, 0.05);
  CHECK(it.k_star == it.k_star_closed_form);
  for (std::size_t k = 1; k < it.s.size(); ++k) CHECK(it.s[k] > it.s[k - 1]);
  CHECK(exponent_iterate(1.96, 2.0, 0.05).k_star == 0);
  CHECK(closed_form_k_star(1.96, 2.0, 0.05) == 0);

  const ExponentIteration cli = exponent_iterate(2.1, 2.5, 0.05, 3.0);
  CHECK(cli.k_star == cli.k_star_closed_form);
  CHECK(cli.checks.size() == cli.k_star);
}

TEST_CASE("feasibility of the proof exponents") {
  const FeasibilityReport f = q3_feasibility(ExponentState::from_proof(3.0, 2.1, 2.5));
  CHECK(f.binding == 2);
  CHECK(std::fabs(f.slack[2]) <= 1e-14);
  CHECK(f.feasible);
  CHECK(f.weight_integral == doctest::Approx(1.0 / (3.0 - 2.5 * 3.1 / 3.5)).epsilon(1e-14));

  ExponentState eq;
  eq.p = 3.0;
  eq.r = 2.25;
  eq.q = 2.5;
  eq.s = 2.5;
  eq.alpha = 1.0;
  eq.eps = 0.5;
  const FeasibilityReport e = q3_feasibility(eq);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(e.lhs[i] == 2.5);
    CHECK(e.slack[i] == 0.0);
  }
  CHECK(e.feasible);

  eq.alpha = 1e-9;
  eq.s = 1e-9 * 2.5 * 2;
  CHECK_FALSE(q3_feasibility(eq).feasible);
  eq.alpha = 0.0;
  CHECK_THROWS_AS(q3_feasibility(eq), ValidationError);
}

TEST_CASE("generators") {
  const RadialMap rm = gen_radial_map(0.5, 64, 0.1);
  CHECK(rm.analytic.det_integral == doctest::Approx(M_PI * (1.0 - std::pow(0.1, 1.0))).epsilon(1e-12));
  CHECK(rm.analytic.det_at(0.25) == doctest::Approx(0.5 * std::pow(0.25, 2 * 0.5 - 2)).epsilon(1e-14));
  CHECK(rm.annulus.count() > 0);
  CHECK_THROWS_AS(gen_radial_map(0.0, 64), ValidationError);

  const Sawtooth tri = gen_sawtooth(2.0, 2.0, 0.5, 40);
  const VectorField d = gradient(tri.u);
  for (std::size_t i = 0; i + 1 < 40; ++i) CHECK(std::fabs(std::fabs(d[0][i]) - 2.0) <= 1e-12);
  CHECK(tri.analytic.positive_moment(2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(gen_sawtooth(9.0, 1.0, 0.1, 85), ValidationError);

  CHECK_THROWS_AS(gen_p_harmonic_radial(2.0, 2, 32), ValidationError);
  const PHarmonic ph = gen_p_harmonic_radial(3.0, 2, 32);
  CHECK(ph.analytic.gamma == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ph.analytic.lr_threshold == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("level-set verifiers") {
  const RadialMap rm = gen_radial_map(0.5, 64);
  const RadiusSet r = RadiusSet::dyadic(rm.u.grid);
  const auto F = QuasiconcaveFunctional::det2();

  const std::vector<double> huge{1e9};
  const SweepReport top = verify_consequently(rm.u, F, huge, r, &rm.annulus);
  CHECK(top.lhs[0] == 0.0);
  CHECK(top.rhs[0] == 0.0);
  CHECK(top.ratio[0] == 0.0);

  std::vector<double> lambdas;
  for (int j = 0; j < 20; ++j) lambdas.push_back(std::ldexp(1.0 / 64, j));
  const SweepReport cons = verify_consequently(rm.u, F, lambdas, r, &rm.annulus);
  CHECK(std::isfinite(cons.max_ratio()));
  // Without a region the zero extension supplies the negative part of det
  // that balances F_+; restricted to the annulus the right side vanishes once
  // lambda / 2 exceeds every gradient there.
  const SweepReport inter = verify_intermediary(rm.u, F, lambdas);
  CHECK(std::isfinite(inter.max_ratio()));
  const SweepReport inner = verify_intermediary(rm.u, F, lambdas, &rm.annulus);
  CHECK(inner.rhs.back() == 0.0);
  CHECK(std::isinf(inner.ratio.back()));

  // both sides are homogeneous of degree 2 in (u, lambda)
  VectorField twice = rm.u;
  for (auto& c : twice.components) c = scaled(c, 2.0);
  std::vector<double> doubled;
  for (double l : lambdas) doubled.push_back(2.0 * l);
  const SweepReport cons2 = verify_consequently(twice, F, doubled, r, &rm.annulus);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    CHECK(cons2.ratio[i] == doctest::Approx(cons.ratio[i]).epsilon(1e-12));
  }

  const SweepReport neg = verify_intermediary(rm.u, QuasiconcaveFunctional::neg_ell1_power(2.0), lambdas,
                                              &rm.annulus);
  for (double x : neg.lhs) CHECK(x == 0.0);

  const VectorField zero(rm.u.grid, 2);
  const SweepReport z = verify_intermediary(zero, F, lambdas);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    CHECK(z.lhs[i] == 0.0);
    CHECK(z.rhs[i] == 0.0);
  }
}

TEST_CASE("Orlicz conclusion") {
  const RadialMap id = gen_radial_map(1.0, 64);
  const OrliczConclusion c = orlicz_conclusion_check(id.u, QuasiconcaveFunctional::det2(), OrliczWeight(2.0, 1.0),
                                                     &id.annulus);
  CHECK(std::isfinite(c.conclusion));
  CHECK(std::isfinite(c.hypothesis_gradient));
  CHECK(c.converged);

  const OrliczConclusion n = orlicz_conclusion_check(id.u, QuasiconcaveFunctional::neg_ell1_power(2.0),
                                                     OrliczWeight(2.0, 0.0), &id.annulus);
  CHECK(n.conclusion == 0.0);

  const ScalarField u(GridSpec::cube(1, 6, 1.0), {0.0, 1.0, 2.0, 3.0, 4.0, 5.0});
  const ScalarField c2 = subsample(u);
  CHECK(c2.values == std::vector<double>{0.0, 2.0, 4.0});
  CHECK(c2.grid.spacings[0] == 2.0);
  CHECK(c2.grid.center(0, 1) == u.grid.center(0, 2));

  CHECK(power_weight(2.0, 2.0, 3.0) == 0.25);
  CHECK(log_weight(std::exp(1.0) - 1.0, 2.0) == doctest::Approx(1.0 / (std::exp(1.0))).epsilon(1e-15));
}

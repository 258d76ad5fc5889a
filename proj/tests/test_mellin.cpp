#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "extime/bernstein.hpp"
#include "extime/errors.hpp"
#include "extime/mellin.hpp"
#include "extime/special.hpp"

using namespace extime;

namespace {
void check_rel(double got, double want, double tol) {
  CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}
}  // namespace

TEST_CASE("Markov extinction-time transform") {
  auto bro = brownian_pair();
  MellinLaw mt = mellin_markov_T(bro, 1.0);
  check_rel(mt.moment(0.25), 1.720079974649039070752, 1e-12);
  check_rel(mt.transform(cplx(0.0)).real(), 1.0, 1e-12);
  CHECK(mt.strip_hi == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mt.strip_lo == -inf_v);
  auto stab = stable_example_pair(1.5, 0.4, 0.6);
  MellinLaw ms = mellin_markov_T(stab, 1.0);
  check_rel(ms.transform(cplx(0.0)).real(), 1.0, 1e-12);
  check_rel(ms.strip_hi, 1.0, 1e-12);
  CHECK_THROWS_AS((void)mt(cplx(0.7)), precondition_error);

  // Brownian closed form (x^2/2)^z Gamma(1/2 - z) / Gamma(1/2)
  for (double x : {1.0, 2.0})
    for (double z : {-0.5, 0.1, 0.4}) {
      CAPTURE(x);
      CAPTURE(z);
      MellinLaw law = mellin_markov_T(bro, x);
      double want = std::pow(x * x / 2.0, z) *
                    std::exp(log_gamma(0.5 - z) - log_gamma(0.5));
      check_rel(law(cplx(z)).real(), want, 1e-12);
    }
}

TEST_CASE("chi entry, inverse subordinator, Laplace transform") {
  auto id = BernsteinFunction::identity();
  auto st5 = BernsteinFunction::stable_subordinator(0.5);
  MellinLaw mc = mellin_chi_entry(id, 0.5);
  check_rel(mc.moment(0.3), 0.659753955386447129687, 1e-12);

  MellinLaw ml1 = mellin_lambda(st5, 0.5, 1.0);
  check_rel(ml1.moment(1.0), 1.128379167095512573896, 1e-12);
  check_rel(ml1.moment(1.3), 1.296178322688920577908, 1e-12);
  MellinLaw ml2 = mellin_lambda(st5, 0.5, 2.7);
  check_rel(ml2.moment(1.3) / ml1.moment(1.3), std::pow(2.7, 0.5 * 1.3),
            1e-12);
  check_rel(ml1.transform(cplx(0.0)).real(), 1.0, 1e-12);
  CHECK_THROWS_AS((void)ml1(cplx(-0.1)), precondition_error);

  check_rel(laplace_lambda(st5, 0.5, 1.0, cplx(-1.0)).real(),
            0.4275835761558070044108, 1e-12);
  check_rel(laplace_lambda(st5, 0.5, 1.0, cplx(-1.0)).real(),
            mittag_leffler(0.5, -1.0), 1e-12);
  check_rel(laplace_lambda(id, 1.0, 2.0, cplx(-0.7)).real(), std::exp(-1.4),
            1e-12);
  CHECK(laplace_lambda(st5, 0.5, 3.0, cplx(0.0)).real() == 1.0);
  auto bounded = BernsteinFunction::exp_jump(0.0, 1.0, 1.0);  // phi(inf) = 1
  CHECK_THROWS((void)laplace_lambda(bounded, 1.0, 1.0, cplx(2.0)));
}

TEST_CASE("extinction transform factorizes") {
  auto bro = brownian_pair();
  auto id = BernsteinFunction::identity();
  auto st5 = BernsteinFunction::stable_subordinator(0.5);
  MellinLaw ext = mellin_extinction(bro, st5, 0.5, 1.0);
  check_rel(ext.strip_hi, 0.25, 1e-15);
  check_rel(ext.moment(0.2), 5.203143781411599784303, 1e-11);
  check_rel(ext.transform(cplx(0.0)).real(), 1.0, 1e-12);

  MellinLaw mc = mellin_chi_entry(st5, 0.5);
  MellinLaw mt = mellin_markov_T(bro, 1.0);
  cplx z(0.1, 0.9);
  CHECK(std::abs(ext(z) - mc(z) * mt(z / 0.5)) <= 1e-12);

  MellinLaw extd = mellin_extinction(bro, id, 1.0, 1.0);
  check_rel(extd.moment(0.3), mt.moment(0.3), 1e-12);

  double m1 = ext.moment(0.05), m2 = ext.moment(0.10), m3 = ext.moment(0.15);
  CHECK(m2 * m2 <= m1 * m3 * (1 + 1e-12));
}

TEST_CASE("generalized Frechet transform and series density") {
  auto id = BernsteinFunction::identity();
  auto u1 = BernsteinFunction::affine(1.0, 1.0);
  MellinLaw f1 = mellin_gen_frechet(id, 1.0);
  check_rel(f1.moment(0.4), std::exp(log_gamma(cplx(0.6))).real(), 1e-12);
  MellinLaw fu1 = mellin_gen_frechet(u1, 1.0);
  check_rel(fu1.moment(0.5), 1.181635900603677351532, 1e-12);

  check_rel(density_series_gen_frechet(id, 1.0, 2.0),
            0.1516326649281583559009, 1e-12);
  check_rel(density_series_gen_frechet(id, 2.0, 1.0), 0.735758882342884643191,
            1e-12);
  check_rel(density_series_gen_frechet(u1, 1.0, 3.0),
            0.04462491923494766609919, 1e-12);
  auto bounded = BernsteinFunction::exp_jump(0.0, 1.0, 1.0);
  CHECK_THROWS((void)density_series_gen_frechet(bounded, 1.0, 0.5));
}

TEST_CASE("Mellin-Barnes inversion") {
  auto id = BernsteinFunction::identity();
  auto u1 = BernsteinFunction::affine(1.0, 1.0);
  auto st5 = BernsteinFunction::stable_subordinator(0.5);
  MellinLaw f1 = mellin_gen_frechet(id, 1.0);
  MbOptions opt;
  opt.line = 1.5;
  MbDiagnostics diag;
  check_rel(density_mellin_barnes(f1, 2.0, opt, &diag),
            0.1516326649281583559009, 1e-8);
  CHECK(diag.exponential_regime);
  check_rel(density_mellin_barnes(f1, 2.0), 0.1516326649281583559009, 1e-8);
  MellinLaw fu1 = mellin_gen_frechet(u1, 1.0);
  check_rel(density_mellin_barnes(fu1, 3.0), 0.04462491923494766609919, 1e-7);

  check_rel(survival(f1, 1.0), 0.6321205588285576784045, 1e-8);
  check_rel(survival(f1, 2.0), 0.3934693402873665763962, 1e-8);
  check_rel(survival(f1, 3.0), 0.2834686894262107495744, 1e-8);
  check_rel(survival(f1, 1e-3), 1.0, 1e-8);
  MbOptions bad;
  bad.line = 2.5;  // c - 1 beyond the pole at 1
  CHECK_THROWS((void)density_mellin_barnes(f1, 2.0, bad));

  MellinLaw ext = mellin_extinction(brownian_pair(), st5, 0.5, 1.0);
  double p100 = survival(ext, 100.0);
  double p1000 = survival(ext, 1000.0);
  CHECK(p100 > p1000);
  CHECK(p1000 > 0.0);
  CHECK(p100 < 1.0);
}

TEST_CASE("moment closure through the density") {
  auto id = BernsteinFunction::identity();
  auto u1 = BernsteinFunction::affine(1.0, 1.0);
  MellinLaw f1 = mellin_gen_frechet(id, 1.0);
  check_rel(moment_via_density(f1, 0.3), 1.298055332647557785681, 1e-6);
  MellinLaw fu1 = mellin_gen_frechet(u1, 1.0);
  check_rel(moment_via_density(fu1, -0.2), fu1.moment(-0.2), 1e-6);
}

TEST_CASE("sector angle of the symbol") {
  SectorAngle a = sector_angle(BernsteinFunction::identity());
  check_rel(a.angle, pi_v / 2, 0.05);
  SectorAngle b = sector_angle(BernsteinFunction::affine(3.0, 0.4));
  check_rel(b.angle, pi_v / 2, 0.05);
}

TEST_CASE("smoothness index") {
  auto st5 = BernsteinFunction::stable_subordinator(0.5);
  auto id = BernsteinFunction::identity();
  SmoothnessIndex s1 = smoothness_index(brownian_pair(), st5, 0.5);
  CHECK(std::isinf(s1.n));
  CHECK(s1.density_available);
  auto cp = compound_poisson_pair(0.5, 1.0, 1.0, 1.0);
  SmoothnessIndex s2 = smoothness_index(cp, id, 1.0);
  check_rel(s2.n_psi_alpha, 2.0 / 3.0, 1e-12);
  check_rel(s2.n, 2.0 / 3.0, 1e-12);
  CHECK_FALSE(s2.density_available);
  SmoothnessIndex s3 =
      smoothness_index(cp, BernsteinFunction::exp_jump(1.0, 3.0, 1.0), 1.0);
  check_rel(s3.n_phi_beta, 3.0, 1e-12);
  CHECK(s3.density_class == 2);
  SmoothnessIndex s4 = smoothness_index(stable_example_pair(1.5, 0.4, 0.6),
                                        st5, 0.5);
  CHECK(std::isinf(s4.n_psi_alpha));
}

TEST_CASE("persistence report") {
  auto st5 = BernsteinFunction::stable_subordinator(0.5);
  PersistenceReport rep = persistence_report(brownian_pair(), st5, 0.5, 1.0);
  check_rel(rep.c_alpha, 0.5, 1e-12);
  check_rel(rep.tail_exponent, 0.25, 1e-12);
  check_rel(rep.derivative, 2.0, 1e-9);
  check_rel(rep.limit_constant, 1.154067477232939377239, 1e-10);
  CHECK(rep.root_residual <= 1e-9);
  CHECK(std::isinf(rep.n_bar));
  check_rel(rep.derivative_constants[2], 1.5 * 2.5, 1e-12);
  CHECK(persistence_derivative_constant(0.5, 0, 0.0) == 1.0);
  CHECK(persistence_derivative_constant(0.5, 1, 0.0) == 0.0);
  CHECK_THROWS_AS(
      (void)persistence_report(stable_example_pair(1.5, 0.4, 0.6), st5, 0.5,
                               1.0),
      precondition_error);
}

TEST_CASE("theorem 3 identities") {
  auto stab = stable_example_pair(1.5, 0.4, 0.6);
  Theorem3Report r1 = verify_theorem3(stab, 1.0, 1.0, 20);
  CHECK(r1.max_rel_identity1 <= 1e-8);
  REQUIRE(r1.max_rel_identity2.has_value());
  CHECK(*r1.max_rel_identity2 <= 1e-8);
  CHECK_FALSE(r1.max_rel_identity3.has_value());
  CHECK(r1.w_identity_residual <= 1e-7);

  auto sp = stable_example_pair(1.5, 1.0 / 3.0, 0.54);  // linear minus factor
  Theorem3Report r2 = verify_theorem3(sp, 1.0, 1.0, 20);
  CHECK(r2.max_rel_identity1 <= 1e-8);
  REQUIRE(r2.max_rel_identity3.has_value());
  CHECK(*r2.max_rel_identity3 <= 1e-8);

  Theorem3Report r3 = verify_theorem3(sp, 0.5, 1.3, 20);
  CHECK(r3.max_rel_identity1 <= 1e-8);
  CHECK_FALSE(r3.max_rel_identity2.has_value());
  if (r3.max_rel_identity3) CHECK(*r3.max_rel_identity3 <= 1e-8);

  CHECK_THROWS_AS((void)verify_theorem3(brownian_pair(), 1.0, 1.0, 8),
                  precondition_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "extime/errors.hpp"
#include "extime/special.hpp"
#include "extime/wphi.hpp"

using namespace extime;

namespace {
void check_rel(double got, double want, double tol) {
  CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}
}  // namespace

TEST_CASE("Euler product against log Gamma for phi(u) = u") {
  auto id = BernsteinFunction::identity();
  double worst = 0.0;
  for (double re : {0.5, 1.0, 2.0, 3.0})
    for (double im : {0.0, 1.5, 5.0}) {
      cplx z(re, im);
      worst = std::max(worst, std::abs(log_w_phi_euler(id, z) - log_gamma(z)));
    }
  CHECK(worst <= 1e-8);
}

TEST_CASE("closed forms") {
  auto id = BernsteinFunction::identity();
  check_rel(w_phi(id, cplx(3.5)).real(), std::tgamma(3.5), 1e-13);
  auto a11 = BernsteinFunction::affine(1.0, 1.0);  // W(z) = Gamma(z + 1)
  check_rel(w_phi(a11, cplx(2.5)).real(), 3.3233509704478425512, 1e-13);
  auto s = s_transform(a11);
  check_rel(w_phi(s, cplx(2.5)).real() * 2.5, w_phi(a11, cplx(2.5)).real(),
            1e-13);
}

TEST_CASE("functional equation residuals") {
  auto st = BernsteinFunction::stable_subordinator(0.5);
  auto pair = stable_example_pair(1.5, 0.4, 0.6);
  auto ej = BernsteinFunction::exp_jump(1.0, 1.0, 2.0);
  double worst = 0.0;
  for (double u : {0.3, 1.1, 2.7})
    worst = std::max(worst, w_phi_residual(st, cplx(u)));
  CHECK(worst <= 1e-11);

  worst = 0.0;
  for (double u = 0.1; u <= 3.0; u += 0.29) {
    worst = std::max(worst, w_phi_residual(pair.minus, cplx(u)));
    worst = std::max(worst, w_phi_residual(pair.plus, cplx(u)));
  }
  CHECK(worst <= 1e-9);

  worst = 0.0;
  for (double u : {0.4, 1.3})
    worst = std::max(worst, w_phi_residual(ej, cplx(u, 0.6)));
  CHECK(worst <= 1e-8);
}

TEST_CASE("rescaled stable entry closed form") {
  auto comp = rescale(BernsteinFunction::stable_subordinator(0.5), 0.5);
  double worst = 0.0;
  for (double u : {0.2, 0.9, 1.7, 3.3})
    worst = std::max(worst, w_phi_residual(comp, cplx(u)));
  CHECK(worst <= 1e-12);
  check_rel(w_phi(comp, cplx(2.0)).real(), comp.eval(1.0), 1e-13);
}

TEST_CASE("S-transform dual route on a generic B1 member") {
  auto scol = s_transform(BernsteinFunction::affine(2.0, 1.0));
  CHECK(scol.kind() == PhiKind::affine);
  auto ejk = BernsteinFunction::exp_jump(1.0, 1.0, 2.0, 4.0);
  REQUIRE(ejk.in_b1().value);
  auto sek = s_transform(ejk);
  cplx lhs = std::exp(log_w_phi_euler(sek, cplx(1.7)));
  cplx rhs = std::exp(log_w_phi_euler(ejk, cplx(1.7))) / 1.7;
  CHECK(std::abs(lhs - rhs) <= 1e-8);
}

TEST_CASE("Gamma-over-W continuation through the origin") {
  auto comp = rescale(BernsteinFunction::stable_subordinator(0.5), 0.5);
  const double b = 0.5;
  auto r_exact = [b](cplx z) {
    return std::exp(log_gamma(cplx(1.0 + b)) + log_gamma(1.0 + z) -
                    log_gamma(1.0 + b * z));
  };
  for (double zr : {1.3, 0.6, 0.2, -0.25, -0.7}) {
    CAPTURE(zr);
    cplx got = std::exp(log_gamma_over_w(comp, cplx(zr)));
    CHECK(std::abs(got - r_exact(cplx(zr))) <= 1e-11);
  }
  check_rel(std::exp(log_gamma_over_w(comp, cplx(0.0))).real(),
            std::tgamma(1.5), 1e-12);
}

TEST_CASE("integer products") {
  auto id = BernsteinFunction::identity();
  auto st = BernsteinFunction::stable_subordinator(0.5);
  check_rel(w_phi_integer(id, 4), 24.0, 1e-14);
  check_rel(w_phi_integer_fn([](double u) { return u * u; }, 3), 36.0, 1e-14);
  check_rel(w_phi_integer(st, 6), w_phi(st, cplx(7.0)).real(), 1e-12);
  CHECK_THROWS_AS((void)w_phi_integer(id, 200), numeric_error);
  check_rel(log_w_phi_integer(id, 200), std::lgamma(201.0), 1e-14);
}

TEST_CASE("domain guard and meromorphic extension") {
  auto id = BernsteinFunction::identity();
  auto st = BernsteinFunction::stable_subordinator(0.5);
  auto pair = stable_example_pair(1.5, 0.4, 0.6);
  CHECK_THROWS_AS((void)w_phi(st, cplx(-0.1)), precondition_error);
  check_rel(std::exp(log_w_phi_extended(id, cplx(-0.5))).real(),
            std::tgamma(-0.5), 1e-13);
  cplx z(-1.2, 0.0);
  cplx lhs = std::exp(log_w_phi_extended(pair.plus, z));
  cplx rhs = std::exp(log_w_phi(pair.plus, z + 1.0)) / pair.plus.eval_raw(z);
  CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("positivity on the real axis") {
  auto st = BernsteinFunction::stable_subordinator(0.5);
  auto pair = stable_example_pair(1.5, 0.4, 0.6);
  for (double u = 0.25; u <= 10.0; u += 0.75) {
    CHECK(w_phi(st, cplx(u)).real() > 0.0);
    CHECK(w_phi(pair.plus, cplx(u)).real() > 0.0);
  }
}

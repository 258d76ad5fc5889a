#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "extime/special.hpp"

using namespace extime;

namespace {
void check_rel(cplx got, cplx want, double tol) {
  CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}
}  // namespace

TEST_CASE("log gamma against fixed references") {
  check_rel(log_gamma(cplx(3, 4)),
            cplx(-1.756626784603784110531, 4.742664438034657928195), 1e-14);
  check_rel(log_gamma(cplx(-2.5, 1.5)),
            cplx(-3.717513451191791846159, -7.713065525834192525969), 1e-14);
  check_rel(log_gamma(cplx(0.5, -30)),
            cplx(-46.20495127064222583516, -72.03731042880579321527), 1e-14);
  check_rel(log_gamma(cplx(120, 550)),
            cplx(-108.0566320730501027572, 3095.283501135435395021), 1e-14);
  CHECK(log_gamma(4.5) == doctest::Approx(std::lgamma(4.5)).epsilon(1e-15));
}

TEST_CASE("digamma and polygamma") {
  check_rel(digamma(cplx(3, 4)),
            cplx(1.550359817333410912699, 1.010502209186044452917), 1e-14);
  check_rel(digamma(cplx(0.2, 0)), cplx(-5.289039896592188295547, 0), 1e-14);
  check_rel(digamma(cplx(-1.5, 0.5)),
            cplx(0.7318926373545226860532, 2.640659519977514592659), 1e-14);
  check_rel(polygamma(2, cplx(2.5, 1)),
            cplx(-0.1219020226908281719121, 0.1508846814938316263069), 1e-13);
  check_rel(polygamma(4, cplx(45, -7)),
            cplx(-0.000001182041963888520881528, -8.509810823954266539966e-7),
            1e-13);
  check_rel(polygamma(6, cplx(33, 0.5)),
            cplx(-1.011588760416562268998e-7, 9.358424959689274528481e-9),
            1e-13);
}

TEST_CASE("reciprocal gamma is entire with zeros at nonpositive integers") {
  CHECK(reciprocal_gamma(cplx(0.0)) == cplx(0.0));
  CHECK(reciprocal_gamma(cplx(-3.0)) == cplx(0.0));
  check_rel(reciprocal_gamma(cplx(0.5)), cplx(1.0 / std::tgamma(0.5)), 1e-13);
  check_rel(reciprocal_gamma(cplx(-0.5)), cplx(1.0 / std::tgamma(-0.5)),
            1e-13);
}

TEST_CASE("factorial helpers") {
  CHECK(rising_factorial(1.5, 3) == doctest::Approx(1.5 * 2.5 * 3.5));
  CHECK(rising_factorial(2.0, 0) == 1.0);
  CHECK(falling_factorial(1.5, 3) == doctest::Approx(1.5 * 0.5 * (-0.5)));
}

TEST_CASE("Mittag-Leffler fixtures") {
  check_rel(mittag_leffler(0.5, -1.0), 0.4275835761558070044108, 1e-13);
  check_rel(mittag_leffler(0.7, -0.8), 0.4672711465284544388523, 1e-13);
  check_rel(mittag_leffler(0.5, 2.0), 108.9409043899779724124, 1e-13);
  CHECK(mittag_leffler(1.0, 1.0) == doctest::Approx(std::exp(1.0)));
  CHECK(mittag_leffler(0.5, 0.0) == 1.0);
}

#pragma once

#include <complex>

namespace extime {

using cplx = std::complex<double>;

// Continuous branch of log Gamma (principal on the positive real axis,
// analytic continuation elsewhere; on the negative real axis the limit
// from the upper half plane is returned).  Throws std::domain_error
// within 1e-12 of a nonpositive integer.
cplx log_gamma(cplx z);
double log_gamma(double x);  // requires x > 0

cplx gamma_fn(cplx z);
double gamma_fn(double x);

cplx digamma(cplx z);

// psi^(m), m in [0, 8].  Arguments near the pole lattice throw.
cplx polygamma(int m, cplx z);

cplx reciprocal_gamma(cplx z);  // entire, exact zeros at nonpositive integers

double rising_factorial(double a, int n);   // a (a+1) ... (a+n-1)
double falling_factorial(double a, int n);  // a (a-1) ... (a-n+1)

// sum_{n>=0} x^n / Gamma(1 + beta n); series evaluation, |x| moderate
double mittag_leffler(double beta, double x);

inline constexpr double pi_v = 3.14159265358979323846;
inline constexpr double ln_2pi = 1.8378770664093454836;

}  // namespace extime

#include "extime/special.hpp"

#include <cmath>
#include <stdexcept>

namespace extime {

namespace {

constexpr double kShiftRadius = 32.0;

// B_{2k} for k = 1..8
constexpr double kBern2k[8] = {
    1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0,
};

// B_{2k} / (2k (2k-1)), Stirling series coefficients
constexpr double kStirling[8] = {
    1.0 / 12.0,      -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,    -691.0 / 360360.0,
    1.0 / 156.0,     -3617.0 / 122400.0,
};

void check_pole(const cplx& z) {
  if (std::abs(z.imag()) < 1e-12) {
    double r = std::round(z.real());
    if (r <= 0.0 && std::abs(z.real() - r) < 1e-12)
      throw std::domain_error("gamma-type function at a nonpositive integer");
  }
}

// Stirling expansion, valid for |z| >= kShiftRadius, Re z > 0
cplx log_gamma_asym(cplx z) {
  cplx w = 1.0 / (z * z);
  cplx s = kStirling[7];
  for (int k = 6; k >= 0; --k) s = s * w + kStirling[k];
  return (z - 0.5) * std::log(z) - z + 0.5 * ln_2pi + s / z;
}

// log sin(pi z) continued from (0,1) into the closed upper half plane
cplx log_sin_pi_upper(cplx z) {
  cplx iz(-2.0 * pi_v * z.imag(), 2.0 * pi_v * z.real());
  cplx one_m = 1.0 - std::exp(iz);
  return cplx(-std::log(2.0), pi_v / 2.0) + cplx(0.0, -pi_v) * z +
         std::log(one_m);
}

// Re z >= 0.5 assumed
cplx log_gamma_right(cplx z) {
  cplx acc = 0.0;
  while (std::abs(z) < kShiftRadius) {
    acc -= std::log(z);
    z += 1.0;
  }
  return log_gamma_asym(z) + acc;
}

}  // namespace

cplx log_gamma(cplx z) {
  check_pole(z);
  if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
  if (z.real() >= 0.5) return log_gamma_right(z);
  // reflection; 1 - z has Re >= 0.5 and Im <= 0
  cplx lg_ref = std::conj(log_gamma_right(std::conj(1.0 - z)));
  return std::log(pi_v) - log_sin_pi_upper(z) - lg_ref;
}

double log_gamma(double x) {
  if (!(x > 0.0))
    throw std::domain_error("log_gamma(double): requires x > 0");
  return std::lgamma(x);
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

double gamma_fn(double x) {
  if (x <= 0.0) {
    double r = std::round(x);
    if (std::abs(x - r) < 1e-12)
      throw std::domain_error("gamma_fn: nonpositive integer");
  }
  return std::tgamma(x);
}

cplx digamma(cplx z) {
  check_pole(z);
  if (z.imag() < 0.0) return std::conj(digamma(std::conj(z)));
  cplx acc = 0.0;
  if (z.real() < 0.5) {
    // psi(z) = psi(1-z) - pi cot(pi z); cot continued like log_sin
    cplx u = std::exp(cplx(-2.0 * pi_v * z.imag(), 2.0 * pi_v * z.real()));
    cplx cot = cplx(0.0, 1.0) * (1.0 + u) / (u - 1.0);
    return std::conj(digamma(std::conj(1.0 - z))) - pi_v * cot;
  }
  while (std::abs(z) < kShiftRadius) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  cplx w = 1.0 / (z * z);
  cplx s = kBern2k[7] / 16.0;
  for (int k = 6; k >= 0; --k) s = s * w + kBern2k[k] / (2.0 * (k + 1));
  return acc + std::log(z) - 0.5 / z - s * w;
}

cplx polygamma(int m, cplx z) {
  if (m < 0 || m > 8) throw std::domain_error("polygamma: order out of range");
  if (m == 0) return digamma(z);
  check_pole(z);
  if (z.imag() < 0.0) return std::conj(polygamma(m, std::conj(z)));
  if (z.real() < 0.0)
    throw std::domain_error("polygamma: Re z < 0 unsupported for m >= 1");
  double mfact = 1.0;
  for (int j = 2; j <= m; ++j) mfact *= j;
  cplx acc = 0.0;
  while (std::abs(z) < kShiftRadius) {
    acc += mfact / std::pow(z, m + 1);
    z += 1.0;
  }
  // DLMF 5.15.9
  cplx zm = std::pow(z, m);
  cplx t = (mfact / m) / zm + mfact / (2.0 * zm * z);
  cplx z2 = z * z;
  cplx pw = zm * z2;
  for (int k = 1; k <= 8; ++k) {
    // (2k + m - 1)! / (2k)!
    double fr = 1.0;
    for (int j = 2 * k + 1; j <= 2 * k + m - 1; ++j) fr *= j;
    t += kBern2k[k - 1] * fr / pw;
    pw *= z2;
  }
  double sign = (m % 2 == 1) ? 1.0 : -1.0;
  return sign * t + ((m % 2 == 1) ? acc : -acc);
}

cplx reciprocal_gamma(cplx z) {
  if (std::abs(z.imag()) < 1e-12) {
    double r = std::round(z.real());
    if (r <= 0.0 && std::abs(z.real() - r) < 1e-12) return 0.0;
  }
  if (z.real() >= 0.5) return std::exp(-log_gamma(z));
  // sin(pi z) Gamma(1-z) / pi, safe near the poles
  return std::sin(pi_v * z) * std::exp(log_gamma(1.0 - z)) / pi_v;
}

double rising_factorial(double a, int n) {
  if (n < 0) throw std::domain_error("rising_factorial: n < 0");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

double falling_factorial(double a, int n) {
  if (n < 0) throw std::domain_error("falling_factorial: n < 0");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a - k;
  return p;
}

double mittag_leffler(double beta, double x) {
  if (!(beta > 0.0)) throw std::domain_error("mittag_leffler: beta <= 0");
  double sum = 0.0, term;
  for (int n = 0; n < 600; ++n) {
    term = (n == 0) ? 1.0 : std::exp(n * std::log(std::abs(x)) -
                                     std::lgamma(1.0 + beta * n));
    if (x < 0.0 && n % 2 == 1) term = -term;
    sum += term;
    if (n > 2 && std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) return sum;
  }
  throw std::runtime_error("mittag_leffler: series did not converge");
}

}  // namespace extime

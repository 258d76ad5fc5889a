#include "extime/barnes.hpp"

#include <cmath>
#include <stdexcept>

namespace extime {

namespace {

cplx log_gamma_guarded(cplx z) {
  if (std::abs(z.imag()) < 1e-9) {
    double r = std::round(z.real());
    if (r <= 0.0 && std::abs(z.real() - r) < 1e-9)
      throw std::domain_error("barnes: argument on the zero lattice");
  }
  return log_gamma(z);
}

// Antiderivative-type kernel in the Euler-Maclaurin expansion of the
// log Gamma ladder; valid for Re x >= 30 or so.
cplx barnes_lambda(cplx x) {
  cplx lx = std::log(x);
  cplx x2 = x * x;
  cplx s = (0.5 * x2 - 0.5 * x + 1.0 / 12.0) * lx - 0.75 * x2 + 0.5 * x +
           0.5 * ln_2pi * x;
  cplx w = 1.0 / x2;
  // - B_{2m} / (2m (2m-1) (2m-2) x^{2m-2}), m = 2..6
  s += w * (1.0 / 720.0 +
            w * (-1.0 / 5040.0 +
                 w * (1.0 / 10080.0 +
                      w * (-1.0 / 9504.0 + w * (691.0 / 3603600.0)))));
  return s;
}

cplx asym(cplx w, double tau) {
  cplx x = w / tau;
  cplx s = tau * barnes_lambda(x) - 0.5 * log_gamma(x);
  static constexpr double b2j[4] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                    -1.0 / 1209600.0};
  double tp = 1.0 / tau;
  for (int j = 1; j <= 4; ++j) {
    s += b2j[j - 1] * tp * polygamma(2 * j - 2, x);
    tp /= tau * tau;
  }
  return s;
}

}  // namespace

cplx log_barnes_g_ratio(cplx z, double a, double b, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("barnes: tau must be positive");
  double rise = 30.0 * std::max(1.0, tau);
  double lo = std::min(z.real() + a, z.real() + b);
  long n = lo >= rise ? 0 : static_cast<long>(std::ceil(rise - lo));
  cplx ladder = 0.0;
  for (long k = 0; k < n; ++k) {
    ladder += log_gamma_guarded((z + (a + k)) / tau) -
              log_gamma_guarded((z + (b + k)) / tau);
  }
  double nn = static_cast<double>(n);
  return asym(z + (a + nn), tau) - asym(z + (b + nn), tau) - ladder;
}

}  // namespace extime

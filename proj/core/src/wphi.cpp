#include "extime/wphi.hpp"

#include <cmath>

#include "extime/barnes.hpp"
#include "extime/errors.hpp"

namespace extime {

namespace {

constexpr std::size_t kEulerStart = 64;
constexpr std::size_t kEulerMax = std::size_t(1) << 20;

// log W via the Euler-type product
//   log W_n(z) = (z-1) log phi(n) + sum_{k=1}^{n-1} [log phi(k) - log phi(k+z-1)],
// whose error expands in integer powers of 1/n; one Richardson step on
// successive dyadic n removes the leading term.
cplx euler_log_w(const BernsteinFunction& phi, cplx z, WEvalInfo* info,
                 double tol) {
  cplx sum = 0.0;
  std::size_t done = 0;
  auto extend = [&](std::size_t upto) {
    for (std::size_t k = done + 1; k <= upto; ++k) {
      const double kd = static_cast<double>(k);
      sum += std::log(phi.eval_raw(kd)) -
             std::log(phi.eval_raw(cplx(kd - 1.0) + z));
    }
    done = upto;
  };
  auto level = [&](std::size_t n) {
    extend(n - 1);
    return (z - 1.0) * std::log(phi.eval_raw(static_cast<double>(n))) + sum;
  };

  cplx l_prev = level(kEulerStart);
  cplx l_cur = level(2 * kEulerStart);
  cplx r_prev = 2.0 * l_cur - l_prev;
  for (std::size_t n = 2 * kEulerStart; n <= kEulerMax / 2; n *= 2) {
    l_prev = l_cur;
    l_cur = level(2 * n);
    const cplx r = 2.0 * l_cur - l_prev;
    const double delta = std::abs(r - r_prev);
    if (delta <= tol) {
      if (info) {
        info->closed_form = false;
        info->euler_n = 2 * n;
        info->est_error = delta;
      }
      return r;
    }
    r_prev = r;
  }
  throw numeric_error(
      "w_phi: Euler product did not converge within n = 2^20");
}

bool has_closed_form(const BernsteinFunction& phi) {
  switch (phi.kind()) {
    case PhiKind::identity:
    case PhiKind::affine:
    case PhiKind::stable_sub:
    case PhiKind::stable_ladder_minus:
    case PhiKind::stable_ladder_plus:
      return true;
    case PhiKind::s_transform:
      return has_closed_form(phi.child());
    case PhiKind::rescale:
      return phi.child().kind() == PhiKind::stable_sub &&
             phi.child().param(0) == phi.param(0);
    default:
      return false;
  }
}

cplx closed_log_w(const BernsteinFunction& phi, cplx z) {
  switch (phi.kind()) {
    case PhiKind::identity:
      return log_gamma(z);
    case PhiKind::affine: {
      const double c = phi.param(0), b = phi.param(1);
      return (z - 1.0) * std::log(c) + log_gamma(z + b) -
             log_gamma(cplx(1.0 + b));
    }
    case PhiKind::stable_sub: {
      const double b = phi.param(0);
      return log_barnes_g_ratio(z, b, 0.0, 1.0) -
             log_barnes_g_ratio(cplx(1.0), b, 0.0, 1.0);
    }
    case PhiKind::stable_ladder_minus: {
      const double alpha = phi.param(0) * phi.param(2);
      const double arho_hat = phi.param(0) * (1.0 - phi.param(1));
      const double tau = 1.0 / alpha;
      const double hi = 1.0 / alpha, lo = (1.0 - arho_hat) / alpha;
      return log_barnes_g_ratio(z, hi, lo, tau) -
             log_barnes_g_ratio(cplx(1.0), hi, lo, tau);
    }
    case PhiKind::stable_ladder_plus: {
      const double alpha = phi.param(0) * phi.param(2);
      const double arho_hat = phi.param(0) * (1.0 - phi.param(1));
      const double tau = 1.0 / alpha;
      const double hi = phi.param(0) / alpha, lo = arho_hat / alpha;
      return log_barnes_g_ratio(z, hi, lo, tau) -
             log_barnes_g_ratio(cplx(1.0), hi, lo, tau);
    }
    case PhiKind::s_transform:
      // W_{S_phi}(z) = W_phi(z) / z
      return closed_log_w(phi.child(), z) - std::log(z);
    case PhiKind::rescale: {
      // phi(u) = psi(beta u) with psi the stable entry of the same index:
      // W(z) = Gamma(z) Gamma(1+beta z) / (Gamma(1+beta) Gamma(1+z)).
      const double b = phi.param(0);
      return log_gamma(z) + log_gamma(1.0 + b * z) -
             log_gamma(cplx(1.0 + b)) - log_gamma(1.0 + z);
    }
    default:
      throw std::logic_error("w_phi: no closed form");
  }
}

}  // namespace

cplx log_w_phi(const BernsteinFunction& phi, cplx z, WEvalInfo* info,
               double tol) {
  if (!(z.real() > -phi.abscissa_astar())) {
    throw precondition_error(
        "w_phi: argument left of -a*_phi (use the extended variant)");
  }
  if (has_closed_form(phi)) {
    if (info) {
      info->closed_form = true;
      info->euler_n = 0;
      info->est_error = 0.0;
    }
    return closed_log_w(phi, z);
  }
  return euler_log_w(phi, z, info, tol);
}

cplx w_phi(const BernsteinFunction& phi, cplx z, WEvalInfo* info, double tol) {
  return std::exp(log_w_phi(phi, z, info, tol));
}

cplx log_w_phi_euler(const BernsteinFunction& phi, cplx z, WEvalInfo* info,
                     double tol) {
  if (!(z.real() > -phi.abscissa_astar())) {
    throw precondition_error("w_phi: argument left of -a*_phi");
  }
  return euler_log_w(phi, z, info, tol);
}

cplx log_w_phi_extended(const BernsteinFunction& phi, cplx z, WEvalInfo* info,
                        double tol) {
  const double astar = phi.abscissa_astar();
  if (z.real() > -astar + 0.25) {
    if (z.real() > -astar) return log_w_phi(phi, z, info, tol);
  }
  const int m =
      static_cast<int>(std::ceil(-astar + 0.75 - z.real()));
  cplx acc = 0.0;
  for (int j = 0; j < m; ++j) {
    acc += std::log(phi.eval_raw(z + cplx(j)));
  }
  return log_w_phi(phi, z + cplx(m), info, tol) - acc;
}

cplx log_gamma_over_w(const BernsteinFunction& phi, cplx z, double tol) {
  cplx acc = 0.0;
  while (z.real() < 0.5) {
    cplx factor;
    if (std::abs(z) < 1e-9) {
      const double d = phi.prime_at_zero();
      if (!(d < inf_v)) {
        throw precondition_error(
            "gamma_over_w: phi'(0+) infinite, ratio undefined at 0");
      }
      if (phi.at_zero() != 0.0) {
        throw precondition_error(
            "gamma_over_w: phi(0) > 0 makes z = 0 a genuine pole");
      }
      factor = d;
    } else {
      factor = phi.eval_raw(z) / z;
    }
    acc += std::log(factor);
    z += 1.0;
  }
  return acc + log_gamma(z) - log_w_phi(phi, z, nullptr, tol);
}

double log_w_phi_integer(const BernsteinFunction& phi, long n) {
  if (n < 0) throw precondition_error("w_phi_integer: n must be >= 0");
  double acc = 0.0;
  for (long k = 1; k <= n; ++k) {
    acc += std::log(phi.eval_raw(static_cast<double>(k)));
  }
  return acc;
}

double w_phi_integer(const BernsteinFunction& phi, long n) {
  const double lg = log_w_phi_integer(phi, n);
  if (lg > 700.0) {
    throw numeric_error(
        "w_phi_integer: overflow, use the log-value variant");
  }
  return std::exp(lg);
}

double w_phi_integer_fn(const std::function<double(double)>& phi, long n) {
  if (n < 0) throw precondition_error("w_phi_integer: n must be >= 0");
  double acc = 0.0;
  for (long k = 1; k <= n; ++k) {
    acc += std::log(phi(static_cast<double>(k)));
  }
  if (acc > 700.0) {
    throw numeric_error(
        "w_phi_integer: overflow, use the log-value variant");
  }
  return std::exp(acc);
}

double w_phi_residual(const BernsteinFunction& phi, cplx z, double tol) {
  const cplx lw = log_w_phi_extended(phi, z, nullptr, tol);
  const cplx lw1 = log_w_phi_extended(phi, z + 1.0, nullptr, tol);
  const cplx lphi = std::log(phi.eval_raw(z));
  return std::abs(1.0 - std::exp(lw + lphi - lw1));
}

}  // namespace extime

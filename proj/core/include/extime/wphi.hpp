#pragma once

#include <functional>

#include "extime/bernstein.hpp"

namespace extime {

struct WEvalInfo {
  bool closed_form = false;
  std::size_t euler_n = 0;   // final product cutoff (0 when closed form)
  double est_error = 0.0;    // last Richardson increment on log W
};

// log W_phi(z) with W(z+1) = phi(z) W(z), W(1) = 1.
// Domain: Re z > -a*_phi; outside this the call throws.
cplx log_w_phi(const BernsteinFunction& phi, cplx z, WEvalInfo* info = nullptr,
               double tol = 1e-8);
cplx w_phi(const BernsteinFunction& phi, cplx z, WEvalInfo* info = nullptr,
           double tol = 1e-8);

// Force the Euler-product route even when a closed form is registered;
// used to confront the generic engine with analytic references.
cplx log_w_phi_euler(const BernsteinFunction& phi, cplx z,
                     WEvalInfo* info = nullptr, double tol = 1e-8);

// Meromorphic extension left of -a*: W(z) = W(z+m) / prod_j phi(z+j).
cplx log_w_phi_extended(const BernsteinFunction& phi, cplx z,
                        WEvalInfo* info = nullptr, double tol = 1e-8);

// log of R(z) = Gamma(z)/W_phi(z), continued through z = 0 via
// R(z) = (phi(z)/z) R(z+1); at a simple zero of phi the limit uses
// phi'(0+).  Needs phi(0) = 0 for the continuation through the origin.
cplx log_gamma_over_w(const BernsteinFunction& phi, cplx z,
                      double tol = 1e-8);

// W at integer arguments: returns W(n+1) = phi(1) ... phi(n).
double w_phi_integer(const BernsteinFunction& phi, long n);
double log_w_phi_integer(const BernsteinFunction& phi, long n);
double w_phi_integer_fn(const std::function<double(double)>& phi, long n);

// |1 - phi(z) W(z) / W(z+1)|: functional-equation residual.
double w_phi_residual(const BernsteinFunction& phi, cplx z,
                      double tol = 1e-8);

}  // namespace extime

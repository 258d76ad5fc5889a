#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "extime/bernstein.hpp"
#include "extime/special.hpp"

namespace extime {

struct SimConfig {
  std::uint64_t seed = 1;
  long long n_paths = 100000;
  double dt = 0.01;        // Euler step for Gaussian path segments
  double horizon = 0.0;    // <= 0: heuristic 50 / |phi^+(0) alpha|
  double jump_cutoff = 1e-4;  // small-jump truncation, drift-compensated
  bool gauss_compensation = false;  // small-jump variance as Gaussian noise
  int workers = 0;  // <= 0: EXTIME_WORKERS env, else hardware count
};

// Sorted sample set plus horizon-policy diagnostics.  Contents are a pure
// function of (seed, n_paths, dt, horizon, jump_cutoff, gauss_compensation);
// the worker count only changes wall time.
struct EmpiricalLaw {
  std::vector<double> samples;  // ascending, finite, >= 0
  long long n = 0;
  long long extended_paths = 0;  // horizon doubled once
  long long flagged_paths = 0;   // remainder still > 1e-3 of the integral
};

// Standard positive beta-stable variable, E[e^{-q S}] = e^{-q^beta},
// via Kanter's representation.  This is chi_1 for the stable time change.
EmpiricalLaw sample_positive_stable(double beta, const SimConfig& cfg);

// T = x^alpha int_0^infty e^{alpha Y_t} dt where Y is the Levy process with
// E[e^{z Y_1}] = exp(psi(z / alpha)), psi(z) = -phi^-(z) phi^+(-z).  Requires
// phi^+(0) > 0.  Supported pair shapes: affine/affine (Brownian with drift),
// stable ladder pairs (Lamperti jump process), affine/exp_jump (drift plus
// compound Poisson, simulated without discretization error).
EmpiricalLaw sample_exponential_functional(const WienerHopfPair& pair,
                                           double x, const SimConfig& cfg);

// Extinction time as the product chi_1 x T^{1/beta} with independent factors.
// chi_1 routes: deterministic (affine time change with no kill), stable entry
// with matching index, or - for the S-transform time change at beta = 1 -
// the reduced pair (phi^-, 1+u) exponential functional which carries the law
// of the whole product.  The reduced route is exact only for affine phi^-
// (the functional is then Brownian); a ladder phi^- is refused because the
// reduced exponent is not a stable example and has no registered sampler.
EmpiricalLaw sample_extinction(const WienerHopfPair& pair,
                               const BernsteinFunction& time_change,
                               double beta, double x, const SimConfig& cfg);
EmpiricalLaw sample_extinction(const ModelSpec& model, const SimConfig& cfg);

// Inverse of the self-similar process attached to the stable entry:
// lambda_t = t^beta chi_1^{-beta} exactly, or by first passage of a
// simulated subordinator path when path_route is set.
EmpiricalLaw sample_inverse_subordinator(const BernsteinFunction& phi,
                                         double beta, double t,
                                         const SimConfig& cfg,
                                         bool path_route = false);

// -------- estimators --------

struct MellinEstimate {
  cplx value;
  double se = 0.0;  // delta-method standard error of |value|
};

// mean of samples^z with standard error; needs n >= 100
MellinEstimate empirical_mellin(const EmpiricalLaw& emp, cplx z);

double ecdf(const EmpiricalLaw& emp, double t);

// sup_t |F_n(t) - F(t)| for a continuous reference cdf
double ks_distance(const EmpiricalLaw& emp,
                   const std::function<double(double)>& cdf);
// two-sample variant
double ks_distance(const EmpiricalLaw& a, const EmpiricalLaw& b);

struct TailFit {
  double slope = 0.0;    // log-log least squares over the top decile
  double plateau = 0.0;  // mean of t^exponent * (1 - F_n(t)) over the window
  double t_lo = 0.0;
  double t_hi = 0.0;
  int points = 0;
};

TailFit tail_exponent_fit(const EmpiricalLaw& emp, double exponent);

// -------- provenance --------

std::string config_echo(const SimConfig& cfg);
std::uint64_t config_hash(const SimConfig& cfg);  // FNV-1a over the echo
void dump_samples_csv(const EmpiricalLaw& emp, const SimConfig& cfg,
                      std::ostream& os);

}  // namespace extime

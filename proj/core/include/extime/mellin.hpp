#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "extime/bernstein.hpp"

namespace extime {

// Mellin transform M(z) = E[V^z] of a positive variable, analytic on the
// open strip strip_lo < Re z < strip_hi (bounds may be infinite).
struct MellinLaw {
  enum class Kind { markov_T, lambda_t, chi_entry, extinction, gen_frechet };

  Kind kind = Kind::gen_frechet;
  std::string name;
  double strip_lo = -inf_v;
  double strip_hi = inf_v;
  double x = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  // Rightmost singularity; equals strip_hi for the tail laws.
  std::optional<double> dominant_pole;
  // |M(c+ib)| <~ e^{-rate |b|} when an analytic decay rate is known.
  std::optional<double> exp_decay_rate;
  std::function<cplx(cplx)> transform;  // unguarded evaluator

  cplx operator()(cplx z) const;  // strip-guarded; endpoints open (1e-8 slack)
  double moment(double s) const;  // real guarded evaluation
};

// E_x[T^z] of the exponential functional behind the self-similar Markov
// extinction time: x^{alpha z} phi+(0) Gamma(z+1) W_{phi+}(-z) / W_{phi-}(z+1).
MellinLaw mellin_markov_T(const WienerHopfPair& pair, double x);

// E[chi_1^z] of the subordinator entry driving the time change.
MellinLaw mellin_chi_entry(const BernsteinFunction& phi, double beta);

// E[lambda_t^z] of the inverse subordinator at time t, Re z > 0.
MellinLaw mellin_lambda(const BernsteinFunction& phi, double beta, double t);

// E_x[T_ext^z]: factorizes as M_chi(z) * M_T(z / beta).
MellinLaw mellin_extinction(const WienerHopfPair& pair,
                            const BernsteinFunction& phi, double beta,
                            double x);
MellinLaw mellin_extinction(const ModelSpec& model);

// E[F_beta(phi)^z] = Gamma(1 - z/beta) Gamma(z/beta + 1) / W_phi(z/beta + 1).
MellinLaw mellin_gen_frechet(const BernsteinFunction& phi, double beta);

// E[e^{q lambda_t}]; entire in q when phi(inf) = inf, otherwise requires
// |q| t^beta < phi(inf).
cplx laplace_lambda(const BernsteinFunction& phi, double beta, double t,
                    cplx q);

// Density of F_beta(phi) by the alternating series; needs t^{-beta} < phi(inf).
double density_series_gen_frechet(const BernsteinFunction& phi, double beta,
                                  double t);

struct MbOptions {
  double tol = 1e-8;
  // Density: integration line c with c-1 on the strip.  Survival: c in
  // (0, strip_hi), or c in (strip_lo, 0) for the residue-shifted branch.
  std::optional<double> line;
  double b_cap = 262144.0;  // truncation search cap
};

struct MbDiagnostics {
  double line = 0.0;
  double B = 0.0;  // truncation point
  std::size_t evals = 0;
  int halvings = 0;
  bool exponential_regime = false;
  double remainder_bound = 0.0;
  double step_delta = 0.0;  // last step-halving increment
};

// f(t) = (1/2 pi) int t^{-(c+ib)} M(c-1+ib) db by trapezoid step-halving.
double density_mellin_barnes(const MellinLaw& law, double t, MbOptions opt = {},
                             MbDiagnostics* diag = nullptr);

// P(V > t) from M(z)/z along a vertical line; clipped to [0, 1].
double survival(const MellinLaw& law, double t, MbOptions opt = {},
                MbDiagnostics* diag = nullptr);

// int_0^inf t^s f(t) dt with f from Mellin-Barnes inversion; closes the
// loop against law.moment(s).
double moment_via_density(const MellinLaw& law, double s, double tol = 1e-7);

struct SectorAngle {
  double angle = 0.0;  // running average of arg phi(1+iu) at b_max
  double error = 0.0;  // last-decade oscillation of the running average
};
SectorAngle sector_angle(const BernsteinFunction& phi, double b_max = 1000.0);

struct SmoothnessIndex {
  // Each entry lies in [0, inf]; NaN marks an indeterminate characteristic.
  double n_phi_beta = 0.0;
  double n_psi_alpha = 0.0;
  double n = 0.0;
  int density_class = 0;  // ceil(N) - 2; INT_MAX when N = inf
  bool density_available = false;  // N > 1
  bool indeterminate = false;
};
SmoothnessIndex smoothness_index(const WienerHopfPair& pair,
                                 const BernsteinFunction& phi, double beta);
SmoothnessIndex smoothness_index(const ModelSpec& model);

// C_c(n) with budget n_bar = ceil(N_Psi) - 2; reciprocal-gamma convention
// 1/Gamma(nonpositive integer) = 0; n_bar = inf gives (1+c)_n.
double persistence_derivative_constant(double c, int n, double n_bar);

struct PersistenceReport {
  double c_alpha = 0.0;
  double tail_exponent = 0.0;  // beta * c_alpha
  double limit_constant = 0.0;  // lim t^{beta c_alpha} P_x(T_ext > t)
  double root_residual = 0.0;   // |phi+(-c_alpha)|
  double derivative = 0.0;      // phi+'(-c_alpha+), one-sided
  double n_bar = 0.0;           // derivative-constant budget actually used
  std::vector<double> derivative_constants;
  // Remark-level hypotheses; asserted by the caller, never verified here.
  bool assume_unique_zero = true;
  bool assume_finite_slope = true;
};
PersistenceReport persistence_report(const WienerHopfPair& pair,
                                     const BernsteinFunction& phi, double beta,
                                     double x);
PersistenceReport persistence_report(const ModelSpec& model);

struct Theorem3Report {
  int grid_points = 0;
  double max_rel_identity1 = 0.0;  // M_ext vs x^{alpha z/beta} M_F(phi-)
  std::optional<double> max_rel_identity2;  // beta=1 reduced-pair route
  std::optional<double> max_rel_identity3;  // linear phi-: Frechet reduction
  double w_identity_residual = 0.0;  // W_{S_phi}(u) u vs W_phi(u), dual route
};
Theorem3Report verify_theorem3(const WienerHopfPair& pair, double beta,
                               double x, int grid_points = 20);

}  // namespace extime

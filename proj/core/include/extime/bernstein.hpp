#pragma once

#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "extime/special.hpp"

namespace extime {

inline constexpr double inf_v = std::numeric_limits<double>::infinity();

// Characteristics of the subordinator behind a Bernstein function:
// phi(u) = kill + drift*u + int (1 - e^{-uy}) theta(dy).
// Scalar fields may be +inf; density/tail callables may be absent.
struct LevyTripleInfo {
  double drift = 0.0;
  double kill = 0.0;
  double mass_01 = 0.0;        // theta(0,1)
  double mass_total = 0.0;     // theta(0,inf)
  double density_at_zero = 0.0;
  std::function<double(double)> density;  // v(y), y > 0
  std::function<double(double)> tail;     // theta(x, inf)
  bool density_nonincreasing = false;
};

enum class PhiKind {
  identity,
  affine,
  power,
  stable_sub,
  exp_jump,
  stable_ladder_minus,
  stable_ladder_plus,
  s_transform,
  rescale,
};

class BernsteinFunction {
 public:
  static BernsteinFunction identity();
  static BernsteinFunction affine(double scale, double shift);
  static BernsteinFunction power(double gamma);  // u^gamma, 0 < gamma < 1
  static BernsteinFunction stable_subordinator(double beta);
  static BernsteinFunction exp_jump(double drift, double m, double theta,
                                    double kill = 0.0);
  static BernsteinFunction stable_ladder_minus(double a, double rho, double b);
  static BernsteinFunction stable_ladder_plus(double a, double rho, double b);

  PhiKind kind() const { return kind_; }
  double param(int i) const { return p_[i]; }
  const BernsteinFunction& child() const;

  // Contract-checked evaluation: real u must satisfy u > -a_phi,
  // complex u must satisfy Re u >= 0.
  double eval(double u) const;
  cplx eval(cplx u) const;

  // Meromorphic/real-extended evaluation without the domain guard;
  // used by continuation formulas.  May still throw at genuine poles.
  double eval_raw(double u) const;
  cplx eval_raw(cplx u) const;

  double at_zero() const { return phi0_; }
  double prime_at_zero() const { return prime0_; }  // may be +inf
  double value_at_infinity() const { return phi_inf_; }
  double abscissa_a() const { return a_; }
  double abscissa_astar() const { return astar_; }

  const std::optional<LevyTripleInfo>& triple() const { return triple_; }

  struct Membership {
    bool value;
    std::string reason;
  };
  Membership in_b_rho() const;
  Membership in_b1() const;
  Membership in_b_minus() const;  // may throw if indeterminate

  // Stable content-based identity; used by closed-form registries.
  bool same_as(const BernsteinFunction& o) const;

  friend BernsteinFunction rescale(const BernsteinFunction& phi, double beta);
  friend BernsteinFunction s_transform(const BernsteinFunction& phi,
                                       bool enforce_b1);

 private:
  BernsteinFunction() = default;

  PhiKind kind_ = PhiKind::identity;
  double p_[4] = {0, 0, 0, 0};
  std::shared_ptr<const BernsteinFunction> child_;
  double a_ = 0, astar_ = 0, phi0_ = 0, prime0_ = 0, phi_inf_ = 0;
  std::optional<LevyTripleInfo> triple_;
  std::optional<bool> b_minus_assert_;
};

// phi_beta(u) = phi(beta u); affine family is canonicalized.
BernsteinFunction rescale(const BernsteinFunction& phi, double beta);

// S_phi(u) = u phi(u) / (u + 1); requires phi in B_1 unless enforce_b1
// is cleared (formula-level use in tests).
BernsteinFunction s_transform(const BernsteinFunction& phi,
                              bool enforce_b1 = true);

// Numeric fallbacks for library metadata (bisection / extrapolated
// finite differences); exact metadata is preferred.
std::pair<double, double> abscissas_numeric(const BernsteinFunction& phi,
                                            double hi_cap = 1e6);
double phi_prime_at_zero_numeric(const BernsteinFunction& phi);

struct WienerHopfPair {
  BernsteinFunction minus;
  BernsteinFunction plus;
  double alpha = 1.0;
  cplx psi(cplx z) const;  // -phi^-(z) phi^+(-z)
};

WienerHopfPair brownian_pair();  // phi^-(u)=u, phi^+(u)=1+2u, alpha=2
WienerHopfPair stable_example_pair(double a, double rho, double b);
WienerHopfPair compound_poisson_pair(double q, double m, double theta,
                                     double alpha);

// -------- model specification --------

struct ModelSpec {
  std::optional<WienerHopfPair> pair;
  std::optional<BernsteinFunction> phi;  // standalone phi or time change
  double alpha = 1.0;
  double beta = 1.0;
  double x = 1.0;
  std::string kind;
  std::string time_change;  // empty = identity/deterministic

  const BernsteinFunction& time_change_phi() const;
};

// key=value lines, '#' comments; unknown keys rejected.
ModelSpec parse_model_spec(std::istream& in,
                           const std::map<std::string, std::string>& overrides =
                               {});
ModelSpec parse_model_spec_file(const std::string& path,
                                const std::map<std::string, std::string>&
                                    overrides = {});

}  // namespace extime

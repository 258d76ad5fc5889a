#include "extime/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "extime/errors.hpp"

namespace extime {

namespace {

// Gamma(a)/Gamma(b) evaluated meromorphically.  The two arguments are
// always within a few units of each other, so one regime fits both.
cplx gamma_ratio(cplx a, cplx b) {
  const double re = 0.5 * (a.real() + b.real());
  if (re > 25.0 || std::abs(a.imag()) > 150.0) {
    return std::exp(log_gamma(a) - log_gamma(b));
  }
  return gamma_fn(a) * reciprocal_gamma(b);
}

double gamma_ratio_real(double a, double b) {
  if (a > 0.0 && b > 0.0) {
    return std::exp(std::lgamma(a) - std::lgamma(b));
  }
  return gamma_ratio(cplx(a, 0.0), cplx(b, 0.0)).real();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw precondition_error(what);
}

}  // namespace

const BernsteinFunction& BernsteinFunction::child() const {
  if (!child_) throw std::logic_error("bernstein: no child node");
  return *child_;
}

// -------- factories --------

BernsteinFunction BernsteinFunction::identity() {
  BernsteinFunction f;
  f.kind_ = PhiKind::identity;
  f.a_ = inf_v;
  f.astar_ = 0.0;
  f.phi0_ = 0.0;
  f.prime0_ = 1.0;
  f.phi_inf_ = inf_v;
  LevyTripleInfo t;
  t.drift = 1.0;
  t.density_nonincreasing = true;
  f.triple_ = std::move(t);
  return f;
}

BernsteinFunction BernsteinFunction::affine(double scale, double shift) {
  require(scale > 0.0, "affine: scale must be positive");
  require(shift >= 0.0, "affine: shift must be nonnegative");
  if (scale == 1.0 && shift == 0.0) return identity();
  BernsteinFunction f;
  f.kind_ = PhiKind::affine;
  f.p_[0] = scale;
  f.p_[1] = shift;
  f.a_ = inf_v;
  f.astar_ = shift;
  f.phi0_ = scale * shift;
  f.prime0_ = scale;
  f.phi_inf_ = inf_v;
  LevyTripleInfo t;
  t.drift = scale;
  t.kill = scale * shift;
  t.density_nonincreasing = true;
  f.triple_ = std::move(t);
  return f;
}

BernsteinFunction BernsteinFunction::power(double gamma) {
  require(gamma > 0.0 && gamma < 1.0, "power: exponent must lie in (0,1)");
  BernsteinFunction f;
  f.kind_ = PhiKind::power;
  f.p_[0] = gamma;
  f.a_ = 0.0;
  f.astar_ = 0.0;
  f.phi0_ = 0.0;
  f.prime0_ = inf_v;
  f.phi_inf_ = inf_v;
  LevyTripleInfo t;
  t.mass_01 = inf_v;
  t.mass_total = inf_v;
  t.density_at_zero = inf_v;
  const double c = gamma / std::tgamma(1.0 - gamma);
  t.density = [c, gamma](double y) { return c * std::pow(y, -1.0 - gamma); };
  t.tail = [gamma](double y) {
    return std::pow(y, -gamma) / std::tgamma(1.0 - gamma);
  };
  t.density_nonincreasing = true;
  f.triple_ = std::move(t);
  return f;
}

BernsteinFunction BernsteinFunction::stable_subordinator(double beta) {
  require(beta > 0.0 && beta < 1.0,
          "stable_subordinator: index must lie in (0,1)");
  BernsteinFunction f;
  f.kind_ = PhiKind::stable_sub;
  f.p_[0] = beta;
  f.a_ = beta;
  f.astar_ = 0.0;
  f.phi0_ = 0.0;
  f.prime0_ = std::tgamma(beta);
  f.phi_inf_ = inf_v;
  LevyTripleInfo t;
  t.mass_01 = inf_v;
  t.mass_total = inf_v;
  t.density_at_zero = inf_v;
  const double c = beta / std::tgamma(1.0 - beta);
  t.density = [c, beta](double y) {
    return c * std::exp(y) * std::pow(std::expm1(y), -1.0 - beta);
  };
  t.tail = [beta](double y) {
    return std::pow(std::expm1(y), -beta) / std::tgamma(1.0 - beta);
  };
  t.density_nonincreasing = true;
  f.triple_ = std::move(t);
  return f;
}

BernsteinFunction BernsteinFunction::exp_jump(double drift, double m,
                                              double theta, double kill) {
  require(theta > 0.0, "exp_jump: theta must be positive");
  require(drift >= 0.0 && m >= 0.0 && kill >= 0.0,
          "exp_jump: coefficients must be nonnegative");
  require(drift > 0.0 || m > 0.0,
          "exp_jump: degenerate (constant) function rejected");
  BernsteinFunction f;
  f.kind_ = PhiKind::exp_jump;
  f.p_[0] = drift;
  f.p_[1] = m;
  f.p_[2] = theta;
  f.p_[3] = kill;
  f.a_ = theta;
  if (kill == 0.0) {
    f.astar_ = 0.0;
  } else if (drift == 0.0) {
    f.astar_ = kill * theta / (m + kill);
  } else {
    // smaller root of drift*u^2 - (drift*theta + m + kill)*u + kill*theta
    const double s = drift * theta + m + kill;
    f.astar_ = (s - std::sqrt(s * s - 4.0 * drift * kill * theta)) /
               (2.0 * drift);
  }
  f.phi0_ = kill;
  f.prime0_ = drift + m / theta;
  f.phi_inf_ = drift > 0.0 ? inf_v : kill + m;
  LevyTripleInfo t;
  t.drift = drift;
  t.kill = kill;
  t.mass_01 = m * (1.0 - std::exp(-theta));
  t.mass_total = m;
  t.density_at_zero = m * theta;
  t.density = [m, theta](double y) { return m * theta * std::exp(-theta * y); };
  t.tail = [m, theta](double y) { return m * std::exp(-theta * y); };
  t.density_nonincreasing = true;
  f.triple_ = std::move(t);
  return f;
}

namespace {
void check_stable_params(double a, double rho, double b) {
  require(a > 0.0 && a <= 2.0, "stable: a must lie in (0,2]");
  require(rho > 0.0 && rho < 1.0, "stable: rho must lie in (0,1)");
  require(a * rho <= 1.0 + 1e-12 && a * (1.0 - rho) <= 1.0 + 1e-12,
          "stable: positivity parameter out of admissible range");
  require(b > 0.0 && b <= 1.0 - rho + 1e-12,
          "stable: b must lie in (0, 1-rho]");
}
}  // namespace

BernsteinFunction BernsteinFunction::stable_ladder_minus(double a, double rho,
                                                         double b) {
  check_stable_params(a, rho, b);
  const double alpha = a * b;
  const double arho_hat = a * (1.0 - rho);
  if (std::abs(arho_hat - 1.0) <= 1e-9) {
    // spectrally positive boundary: Gamma(1+alpha u)/Gamma(alpha u) is the
    // pure drift alpha*u, and the generic formulas below sit on Gamma poles
    return affine(alpha, 0.0);
  }
  BernsteinFunction f;
  f.kind_ = PhiKind::stable_ladder_minus;
  f.p_[0] = a;
  f.p_[1] = rho;
  f.p_[2] = b;
  f.a_ = 1.0 / alpha;
  f.astar_ = (1.0 - arho_hat) / alpha;
  f.phi0_ = 1.0 / std::tgamma(1.0 - arho_hat);
  f.prime0_ = alpha * (digamma(cplx(1.0)).real() -
                       digamma(cplx(1.0 - arho_hat)).real()) *
              f.phi0_;
  f.phi_inf_ = inf_v;
  LevyTripleInfo t;
  t.drift = 0.0;
  t.kill = f.phi0_;
  t.mass_01 = inf_v;
  t.mass_total = inf_v;
  t.density_at_zero = inf_v;
  f.triple_ = std::move(t);
  f.triple_->density = nullptr;
  f.triple_->tail = nullptr;
  f.b_minus_assert_ = true;  // asserted for the stable family
  return f;
}

BernsteinFunction BernsteinFunction::stable_ladder_plus(double a, double rho,
                                                        double b) {
  check_stable_params(a, rho, b);
  const double alpha = a * b;
  const double arho_hat = a * (1.0 - rho);
  if (std::abs(a * rho - 1.0) <= 1e-9) {
    // spectrally negative boundary: the ascending factor collapses to
    // (a-1) + alpha*u
    return affine(alpha, (a - 1.0) / alpha);
  }
  BernsteinFunction f;
  f.kind_ = PhiKind::stable_ladder_plus;
  f.p_[0] = a;
  f.p_[1] = rho;
  f.p_[2] = b;
  f.a_ = a / alpha;
  f.astar_ = arho_hat / alpha;
  f.phi0_ = std::tgamma(a) / std::tgamma(arho_hat);
  f.prime0_ = alpha * (digamma(cplx(a)).real() -
                       digamma(cplx(arho_hat)).real()) *
              f.phi0_;
  f.phi_inf_ = inf_v;
  LevyTripleInfo t;
  t.drift = 0.0;
  t.kill = f.phi0_;
  t.mass_01 = inf_v;
  t.mass_total = inf_v;
  t.density_at_zero = inf_v;
  f.triple_ = std::move(t);
  return f;
}

// -------- evaluation --------

cplx BernsteinFunction::eval_raw(cplx u) const {
  switch (kind_) {
    case PhiKind::identity:
      return u;
    case PhiKind::affine:
      return p_[0] * (u + p_[1]);
    case PhiKind::power:
      if (u.real() < 0.0 && std::abs(u.imag()) < 1e-300) {
        throw precondition_error("power: not extendable to the negative axis");
      }
      return std::pow(u, p_[0]);
    case PhiKind::stable_sub:
      return gamma_ratio(u + p_[0], u);
    case PhiKind::exp_jump: {
      const cplx den = u + p_[2];
      if (std::abs(den) < 1e-300) {
        throw precondition_error("exp_jump: pole at u = -theta");
      }
      return p_[3] + p_[0] * u + p_[1] * u / den;
    }
    case PhiKind::stable_ladder_minus: {
      const double alpha = p_[0] * p_[2];
      const double arho_hat = p_[0] * (1.0 - p_[1]);
      return gamma_ratio(1.0 + alpha * u, 1.0 - arho_hat + alpha * u);
    }
    case PhiKind::stable_ladder_plus: {
      const double alpha = p_[0] * p_[2];
      const double arho_hat = p_[0] * (1.0 - p_[1]);
      return gamma_ratio(p_[0] + alpha * u, arho_hat + alpha * u);
    }
    case PhiKind::s_transform: {
      const cplx den = u + 1.0;
      if (std::abs(den) < 1e-300) {
        throw precondition_error("s_transform: pole at u = -1");
      }
      return u * child_->eval_raw(u) / den;
    }
    case PhiKind::rescale:
      return child_->eval_raw(p_[0] * u);
  }
  throw std::logic_error("bernstein: unreachable");
}

double BernsteinFunction::eval_raw(double u) const {
  switch (kind_) {
    case PhiKind::identity:
      return u;
    case PhiKind::affine:
      return p_[0] * (u + p_[1]);
    case PhiKind::power:
      if (u < 0.0) {
        throw precondition_error("power: not extendable to the negative axis");
      }
      return std::pow(u, p_[0]);
    case PhiKind::stable_sub:
      return gamma_ratio_real(u + p_[0], u);
    case PhiKind::exp_jump:
      if (std::abs(u + p_[2]) < 1e-300) {
        throw precondition_error("exp_jump: pole at u = -theta");
      }
      return p_[3] + p_[0] * u + p_[1] * u / (u + p_[2]);
    case PhiKind::stable_ladder_minus: {
      const double alpha = p_[0] * p_[2];
      const double arho_hat = p_[0] * (1.0 - p_[1]);
      return gamma_ratio_real(1.0 + alpha * u, 1.0 - arho_hat + alpha * u);
    }
    case PhiKind::stable_ladder_plus: {
      const double alpha = p_[0] * p_[2];
      const double arho_hat = p_[0] * (1.0 - p_[1]);
      return gamma_ratio_real(p_[0] + alpha * u, arho_hat + alpha * u);
    }
    case PhiKind::s_transform:
      if (std::abs(u + 1.0) < 1e-300) {
        throw precondition_error("s_transform: pole at u = -1");
      }
      return u * child_->eval_raw(u) / (u + 1.0);
    case PhiKind::rescale:
      return child_->eval_raw(p_[0] * u);
  }
  throw std::logic_error("bernstein: unreachable");
}

double BernsteinFunction::eval(double u) const {
  if (!(u > -a_)) {
    throw precondition_error("phi: argument outside domain (u <= -a_phi)");
  }
  return eval_raw(u);
}

cplx BernsteinFunction::eval(cplx u) const {
  if (!(u.real() >= 0.0)) {
    throw precondition_error("phi: complex argument requires Re u >= 0");
  }
  return eval_raw(u);
}

// -------- memberships --------

BernsteinFunction::Membership BernsteinFunction::in_b_rho() const {
  std::ostringstream why;
  if (phi0_ != 0.0) {
    why << "phi(0) = " << phi0_ << " nonzero";
    return {false, why.str()};
  }
  if (!(prime0_ < inf_v)) {
    return {false, "phi'(0+) infinite"};
  }
  if (!triple_) {
    throw precondition_error(
        "b_rho membership: Levy triple unavailable, condition undecidable");
  }
  if (triple_->drift > 0.0) {
    return {true, "positive drift"};
  }
  if (triple_->mass_01 == inf_v) {
    return {true, "infinite jump activity near zero"};
  }
  why << "no drift and theta(0,1) = " << triple_->mass_01 << " finite";
  return {false, why.str()};
}

BernsteinFunction::Membership BernsteinFunction::in_b1() const {
  std::ostringstream why;
  if (a_ < 1.0) {
    why << "phi(-u) leaves the finite range at u = " << a_ << " < 1";
    return {false, why.str()};
  }
  if (astar_ > 1.0 || (astar_ == 1.0 && a_ > 1.0)) {
    return {true, "0 <= phi(-u) < infinity on [0,1]"};
  }
  if (astar_ < 1.0) {
    // report a witness; prefer the endpoint u = 1 when it is in range
    const double u = a_ > 1.0 ? 1.0
                              : astar_ + 0.25 * (std::min(a_, 1.0) - astar_) +
                                    1e-9;
    double val = std::nan("");
    try {
      val = eval_raw(-u);
    } catch (const std::exception&) {
    }
    why << "phi(-" << u << ") = " << val << " < 0";
    return {false, why.str()};
  }
  // astar_ == 1 == a_: boundary value must stay finite and nonnegative
  try {
    const double v = eval_raw(-1.0);
    if (v >= 0.0) return {true, "phi(-1) finite and nonnegative"};
    why << "phi(-1) = " << v << " < 0";
  } catch (const std::exception&) {
    why << "phi(-1) not finite";
  }
  return {false, why.str()};
}

BernsteinFunction::Membership BernsteinFunction::in_b_minus() const {
  if (triple_ && triple_->density_nonincreasing) {
    return {true, "nonincreasing Levy density"};
  }
  if (b_minus_assert_) {
    return {*b_minus_assert_, "asserted by configuration"};
  }
  if (kind_ == PhiKind::rescale) {
    auto inner = child_->in_b_minus();
    inner.reason += " (rescaling preserves monotonicity)";
    return inner;
  }
  throw precondition_error(
      "b_minus membership: no density available, condition undecidable");
}

bool BernsteinFunction::same_as(const BernsteinFunction& o) const {
  if (kind_ != o.kind_) return false;
  for (int i = 0; i < 4; ++i) {
    if (p_[i] != o.p_[i]) return false;
  }
  if (static_cast<bool>(child_) != static_cast<bool>(o.child_)) return false;
  if (child_ && !child_->same_as(*o.child_)) return false;
  return true;
}

// -------- combinators --------

BernsteinFunction rescale(const BernsteinFunction& phi, double beta) {
  require(beta > 0.0, "rescale: factor must be positive");
  if (beta == 1.0) return phi;
  switch (phi.kind_) {
    case PhiKind::identity:
      return BernsteinFunction::affine(beta, 0.0);
    case PhiKind::affine:
      return BernsteinFunction::affine(phi.p_[0] * beta, phi.p_[1] / beta);
    case PhiKind::rescale:
      return rescale(*phi.child_, phi.p_[0] * beta);
    default:
      break;
  }
  BernsteinFunction f;
  f.kind_ = PhiKind::rescale;
  f.p_[0] = beta;
  f.child_ = std::make_shared<BernsteinFunction>(phi);
  f.a_ = phi.a_ / beta;
  f.astar_ = phi.astar_ / beta;
  f.phi0_ = phi.phi0_;
  f.prime0_ = beta * phi.prime0_;
  f.phi_inf_ = phi.phi_inf_;
  if (phi.triple_) {
    LevyTripleInfo t;
    const LevyTripleInfo& s = *phi.triple_;
    t.drift = beta * s.drift;
    t.kill = s.kill;
    t.mass_01 = s.mass_01;  // finiteness class is scale invariant
    t.mass_total = s.mass_total;
    t.density_at_zero = s.density_at_zero == inf_v ? inf_v
                                                   : s.density_at_zero / beta;
    if (s.density) {
      auto d = s.density;
      t.density = [d, beta](double y) { return d(y / beta) / beta; };
    }
    if (s.tail) {
      auto tl = s.tail;
      t.tail = [tl, beta](double y) { return tl(y / beta); };
    }
    t.density_nonincreasing = s.density_nonincreasing;
    f.triple_ = std::move(t);
  }
  f.b_minus_assert_ = phi.b_minus_assert_;
  return f;
}

BernsteinFunction s_transform(const BernsteinFunction& phi, bool enforce_b1) {
  if (enforce_b1) {
    auto m = phi.in_b1();
    if (!m.value) {
      throw precondition_error("s_transform: phi not in B_1 (" + m.reason +
                               ")");
    }
  }
  // S maps c(u+1) to c*u exactly.
  if (phi.kind_ == PhiKind::affine && phi.p_[1] == 1.0) {
    return BernsteinFunction::affine(phi.p_[0], 0.0);
  }
  BernsteinFunction f;
  f.kind_ = PhiKind::s_transform;
  f.child_ = std::make_shared<BernsteinFunction>(phi);
  f.a_ = std::min(1.0, phi.a_);
  f.astar_ = 0.0;
  f.phi0_ = 0.0;
  f.prime0_ = phi.phi0_;
  f.phi_inf_ = phi.phi_inf_;
  if (phi.triple_) {
    const LevyTripleInfo& s = *phi.triple_;
    LevyTripleInfo t;
    t.drift = s.drift;
    t.kill = 0.0;
    t.mass_total = (s.mass_total == inf_v)
                       ? inf_v
                       : std::max(0.0, s.kill + s.mass_total - s.drift);
    t.mass_01 = s.mass_01;  // small-jump divergence is inherited
    t.density_at_zero = std::nan("");
    f.triple_ = std::move(t);
  }
  return f;
}

// -------- numeric fallbacks --------

std::pair<double, double> abscissas_numeric(const BernsteinFunction& phi,
                                            double hi_cap) {
  auto value = [&phi](double u) -> double {
    try {
      const double v = phi.eval_raw(-u);
      return std::isfinite(v) ? v : std::nan("");
    } catch (const std::exception&) {
      return std::nan("");
    }
  };
  // On [0, a) the map u -> phi(-u) is finite, nonincreasing and concave;
  // a meromorphic extension past a breaks one of these on a fine chain.
  auto valid = [&value](double u) {
    const int n = 40;
    double prev = value(0.0);
    double prev2 = std::nan("");
    if (std::isnan(prev)) return false;
    for (int k = 1; k <= n; ++k) {
      const double v = value(u * k / n);
      if (std::isnan(v)) return false;
      const double slack = 1e-9 * (1.0 + std::abs(prev) + std::abs(v));
      if (v > prev + slack) return false;
      if (!std::isnan(prev2) && (v - prev) > (prev - prev2) + slack) {
        return false;
      }
      prev2 = prev;
      prev = v;
    }
    return true;
  };
  double a;
  {
    double lo = 0.0, hi = 1e-3;
    while (hi < hi_cap && valid(hi)) {
      lo = hi;
      hi *= 2.0;
    }
    if (hi >= hi_cap) {
      a = inf_v;
    } else {
      while (hi - lo > 1e-9 * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        (valid(mid) ? lo : hi) = mid;
      }
      a = 0.5 * (lo + hi);
    }
  }
  // a*: boundary of nonnegativity inside the finite range
  double astar;
  {
    auto ok = [&value](double u) {
      const double v = value(u);
      return !std::isnan(v) && v >= 0.0;
    };
    const double cap = std::min(a, hi_cap);
    double lo = 0.0, hi = std::min(1e-3, 0.5 * cap);
    while (hi < cap && ok(hi)) {
      lo = hi;
      hi *= 2.0;
    }
    if (hi >= cap) {
      astar = a;  // nonnegative on the whole finite range
    } else {
      while (hi - lo > 1e-9 * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
      }
      astar = 0.5 * (lo + hi);
    }
  }
  return {a, astar};
}

double phi_prime_at_zero_numeric(const BernsteinFunction& phi) {
  const double f0 = phi.eval_raw(0.0);
  auto d = [&](double h) {
    return (-3.0 * f0 + 4.0 * phi.eval_raw(h) - phi.eval_raw(2.0 * h)) /
           (2.0 * h);
  };
  double prev = d(1e-3);
  double prev_diff = inf_v;
  for (double h = 5e-4; h > 1e-8; h *= 0.5) {
    const double cur = d(h);
    const double diff = std::abs(cur - prev);
    if (diff <= 1e-8 * std::max(1.0, std::abs(cur))) {
      return (4.0 * cur - prev) / 3.0;
    }
    if (diff >= prev_diff) {
      return inf_v;  // quotients not contracting: derivative blows up
    }
    prev = cur;
    prev_diff = diff;
  }
  return prev;
}

// -------- pairs --------

cplx WienerHopfPair::psi(cplx z) const {
  return -minus.eval_raw(z) * plus.eval_raw(-z);
}

WienerHopfPair brownian_pair() {
  WienerHopfPair p{BernsteinFunction::identity(),
                   BernsteinFunction::affine(2.0, 0.5), 2.0};
  return p;
}

WienerHopfPair stable_example_pair(double a, double rho, double b) {
  WienerHopfPair p{BernsteinFunction::stable_ladder_minus(a, rho, b),
                   BernsteinFunction::stable_ladder_plus(a, rho, b), a * b};
  return p;
}

WienerHopfPair compound_poisson_pair(double q, double m, double theta,
                                     double alpha) {
  require(q > 0.0, "compound_poisson_pair: kill rate q must be positive");
  require(alpha > 0.0, "compound_poisson_pair: alpha must be positive");
  WienerHopfPair p{BernsteinFunction::identity(),
                   BernsteinFunction::exp_jump(0.0, m, theta, q), alpha};
  return p;
}

// -------- model specification --------

const BernsteinFunction& ModelSpec::time_change_phi() const {
  static const BernsteinFunction id = BernsteinFunction::identity();
  return phi ? *phi : id;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_num(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw precondition_error("model spec: bad numeric value for '" + key +
                             "': " + v);
  }
  if (pos != v.size()) {
    throw precondition_error("model spec: trailing junk in value for '" + key +
                             "': " + v);
  }
  return out;
}

struct KeyBag {
  std::map<std::string, std::string> kv;
  std::set<std::string> used;

  bool has(const std::string& k) const { return kv.count(k) != 0; }
  double num(const std::string& k, double dflt) {
    used.insert(k);
    auto it = kv.find(k);
    return it == kv.end() ? dflt : parse_num(k, it->second);
  }
  std::string str(const std::string& k, const std::string& dflt) {
    used.insert(k);
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }
  void finish() const {
    for (const auto& [k, v] : kv) {
      if (!used.count(k)) {
        throw precondition_error("model spec: key '" + k +
                                 "' not valid for this kind");
      }
    }
  }
};

BernsteinFunction build_phi(const std::string& name, KeyBag& bag,
                            const std::string& prefix, double beta) {
  auto key = [&prefix](const char* k) { return prefix + k; };
  if (name == "identity") {
    return BernsteinFunction::identity();
  }
  if (name == "affine") {
    return BernsteinFunction::affine(bag.num(key("scale"), 1.0),
                                     bag.num(key("shift"), 0.0));
  }
  if (name == "power") {
    return BernsteinFunction::power(bag.num(key("gamma"), 0.5));
  }
  if (name == "stable_subordinator") {
    return BernsteinFunction::stable_subordinator(beta);
  }
  if (name == "exp_jump") {
    return BernsteinFunction::exp_jump(
        bag.num(key("drift"), 1.0), bag.num(key("m"), 1.0),
        bag.num(key("theta"), 1.0), bag.num(key("kill"), 0.0));
  }
  throw precondition_error("model spec: unknown function '" + name + "'");
}

}  // namespace

ModelSpec parse_model_spec(std::istream& in,
                           const std::map<std::string, std::string>& overrides) {
  KeyBag bag;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw precondition_error("model spec: line " + std::to_string(lineno) +
                               " is not key=value");
    }
    const std::string k = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (k.empty() || v.empty()) {
      throw precondition_error("model spec: empty key or value on line " +
                               std::to_string(lineno));
    }
    if (!bag.kv.emplace(k, v).second) {
      throw precondition_error("model spec: duplicate key '" + k + "'");
    }
  }
  for (const auto& [k, v] : overrides) {
    bag.kv[k] = v;
  }

  ModelSpec spec;
  spec.kind = bag.str("kind", "");
  if (spec.kind.empty()) {
    throw precondition_error("model spec: missing 'kind'");
  }
  const bool pair_kind = spec.kind == "brownian" ||
                         spec.kind == "stable_example" ||
                         spec.kind == "compound_poisson_pair";
  spec.beta = bag.num("beta", spec.kind == "stable_subordinator" ? 0.5 : 1.0);
  require(spec.beta > 0.0, "model spec: beta must be positive");
  spec.x = bag.num("x", 1.0);
  require(spec.x > 0.0, "model spec: x must be positive");

  if (pair_kind) {
    if (spec.kind == "brownian") {
      spec.pair = brownian_pair();
    } else if (spec.kind == "stable_example") {
      spec.pair = stable_example_pair(bag.num("a", 1.5), bag.num("rho", 0.4),
                                      bag.num("b", 0.6));
    } else {
      spec.pair = compound_poisson_pair(bag.num("q", 0.5), bag.num("m", 1.0),
                                        bag.num("theta", 1.0),
                                        bag.num("alpha", 1.0));
    }
    spec.alpha = spec.pair->alpha;
    if (bag.has("alpha") && spec.kind != "compound_poisson_pair") {
      const double want = bag.num("alpha", spec.alpha);
      require(std::abs(want - spec.alpha) <= 1e-12 * std::max(1.0, spec.alpha),
              "model spec: alpha is fixed by this kind (" +
                  std::to_string(spec.alpha) + ")");
    }
    spec.time_change = bag.str("time_change", "");
    if (spec.time_change == "s_transform") {
      // the construction fixes the rescaled exponent directly,
      // phi_beta = S_{phi+}; hand over S((.)/beta) so that rescaling by
      // beta recovers S itself
      spec.phi = s_transform(spec.pair->plus);
      if (spec.beta != 1.0) spec.phi = rescale(*spec.phi, 1.0 / spec.beta);
    } else if (!spec.time_change.empty() && spec.time_change != "identity") {
      spec.phi = build_phi(spec.time_change, bag, "tc_", spec.beta);
    } else if (spec.time_change == "identity") {
      spec.phi = BernsteinFunction::identity();
    }
  } else {
    spec.alpha = 1.0;
    if (bag.has("alpha")) {
      throw precondition_error(
          "model spec: alpha only applies to process-pair kinds");
    }
    spec.phi = build_phi(spec.kind, bag, "", spec.beta);
  }
  bag.finish();
  return spec;
}

ModelSpec parse_model_spec_file(
    const std::string& path,
    const std::map<std::string, std::string>& overrides) {
  std::ifstream in(path);
  if (!in) {
    throw precondition_error("model spec: cannot open " + path);
  }
  return parse_model_spec(in, overrides);
}

}  // namespace extime

#include "extime/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "extime/errors.hpp"
#include "extime/quadrature.hpp"
#include "extime/rng.hpp"

namespace extime {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;

// stream namespaces; path index lives in the low bits
constexpr std::uint64_t kStreamT = 0ULL << 56;
constexpr std::uint64_t kStreamChi = 1ULL << 56;
constexpr std::uint64_t kStreamSub = 2ULL << 56;

void validate(const SimConfig& cfg) {
  if (cfg.n_paths < 1) throw precondition_error("SimConfig: n_paths >= 1");
  if (!(cfg.dt > 0.0)) throw precondition_error("SimConfig: dt > 0");
  if (!(cfg.jump_cutoff > 0.0))
    throw precondition_error("SimConfig: jump_cutoff > 0");
}

int resolve_workers(const SimConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  if (const char* env = std::getenv("EXTIME_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? (int)hw : 1;
}

// Runs block_fn over [0, n) split into contiguous ranges.  Output written
// by path index, so the split never shows up in the result.
void parallel_paths(long long n, int workers,
                    const std::function<void(long long, long long)>& block_fn) {
  if (workers <= 1 || n < 2) {
    block_fn(0, n);
    return;
  }
  const long long chunk = (n + workers - 1) / workers;
  std::vector<std::thread> threads;
  std::mutex err_mu;
  std::exception_ptr err;
  for (int w = 0; w < workers; ++w) {
    const long long lo = (long long)w * chunk;
    const long long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi] {
      try {
        block_fn(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (err) std::rethrow_exception(err);
}

EmpiricalLaw finish(std::vector<double>&& samples, long long extended,
                    long long flagged) {
  for (double s : samples)
    if (!std::isfinite(s) || s < 0.0)
      throw numeric_error("sampler produced a non-finite or negative value");
  std::sort(samples.begin(), samples.end());
  EmpiricalLaw law;
  law.n = (long long)samples.size();
  law.samples = std::move(samples);
  law.extended_paths = extended;
  law.flagged_paths = flagged;
  return law;
}

// ---- Kanter's representation of the positive stable law ----

double kanter_stable(double beta, PathRng& rng) {
  const double u = rng.uniform_open();
  const double e = rng.exponential();
  const double lognum = beta * std::log(std::sin(beta * kPi * u)) +
                        (1.0 - beta) * std::log(std::sin((1.0 - beta) * kPi * u)) -
                        std::log(std::sin(kPi * u));
  return std::exp((lognum - (1.0 - beta) * std::log(e)) / beta);
}

// ---- path engine for T = x^alpha int e^{alpha xi_t} dt ----

struct JumpLaw {
  int kind = 0;  // 0 none, 1 two Pareto arms in w = +-(e^{+-y}-1), 2 Exp scale
  double p_plus = 0.0;
  double wmin = 0.0;
  double vmin_pow = 0.0;  // v_min^{-a}
  double inv_a = 0.0;
  double scale = 0.0;
};

struct Engine {
  double alpha = 1.0;
  double xpref = 1.0;  // x^alpha
  double drift = 0.0;  // compensated drift of xi
  double sigma = 0.0;  // Gaussian coefficient
  double kappa = 0.0;  // kill rate
  double lam = 0.0;    // total jump intensity
  double mean_slope = 0.0;  // Psi'(0), horizon remainder scale
  JumpLaw jump;
};

double draw_jump(const JumpLaw& j, PathRng& rng) {
  if (j.kind == 2) return rng.exponential() * j.scale;
  const double branch = rng.uniform();
  const double u = rng.uniform_open();
  if (branch < j.p_plus) {
    const double w = j.wmin * std::pow(u, -j.inv_a);
    return std::log1p(w);
  }
  const double v = std::pow(j.vmin_pow - u * (j.vmin_pow - 1.0), -j.inv_a);
  return std::log1p(-v);
}

struct PathOut {
  double value = 0.0;
  bool extended = false;
  bool flagged = false;
};

PathOut run_path(const Engine& e, const SimConfig& cfg, double horizon0,
                 PathRng& rng) {
  const double inf = std::numeric_limits<double>::infinity();
  const double t_kill = e.kappa > 0.0 ? rng.exponential() / e.kappa : inf;
  double horizon = horizon0;
  double t = 0.0, xi = 0.0, integral = 0.0, f = 1.0;
  double t_jump = e.lam > 0.0 ? rng.exponential() / e.lam : inf;
  PathOut out;
  for (;;) {
    const double t_end = std::min(t_kill, horizon);
    while (t < t_end) {
      double t_next = t_end;
      bool is_jump = false;
      if (t_jump <= t_next) {
        t_next = t_jump;
        is_jump = true;
      }
      if (e.sigma > 0.0 && t + cfg.dt < t_next) {
        t_next = t + cfg.dt;
        is_jump = false;
      }
      const double step = t_next - t;
      if (step > 0.0) {
        if (e.sigma > 0.0) {
          xi += e.drift * step + e.sigma * std::sqrt(step) * rng.normal();
          const double fn = std::exp(e.alpha * xi);
          integral += 0.5 * step * (f + fn);
          f = fn;
        } else {
          // piecewise-linear segment, integral in closed form
          const double g = e.alpha * e.drift * step;
          integral += std::abs(g) < 1e-12
                          ? f * step
                          : f * std::expm1(g) / (e.alpha * e.drift);
          xi += e.drift * step;
          f *= std::exp(g);
        }
        t = t_next;
      }
      if (is_jump) {
        xi += draw_jump(e.jump, rng);
        f = std::exp(e.alpha * xi);
        t_jump = t + rng.exponential() / e.lam;
      }
    }
    if (t_kill <= horizon) break;  // killed: the integral is complete
    const double slope = std::max(std::abs(e.alpha * e.mean_slope) + e.kappa,
                                  1e-2);
    if (f / slope <= 1e-3 * integral) break;
    if (!out.extended) {
      out.extended = true;
      horizon *= 2.0;
      continue;
    }
    out.flagged = true;
    break;
  }
  out.value = e.xpref * integral;
  return out;
}

// ---- pair analysis ----

struct AffineView {
  double scale = 0.0;
  double shift = 0.0;
  bool ok = false;
};

AffineView as_affine(const BernsteinFunction& f) {
  if (f.kind() == PhiKind::identity) return {1.0, 0.0, true};
  if (f.kind() == PhiKind::affine) return {f.param(0), f.param(1), true};
  return {};
}

double pair_mean_slope(const WienerHopfPair& pair) {
  double mp = pair.minus.prime_at_zero();
  double pp = pair.plus.prime_at_zero();
  if (!(mp < inf_v)) mp = phi_prime_at_zero_numeric(pair.minus);
  if (!(pp < inf_v)) pp = phi_prime_at_zero_numeric(pair.plus);
  return (-mp * pair.plus.at_zero() + pair.minus.at_zero() * pp) / pair.alpha;
}

double quad(const std::function<double(double)>& f, double a, double b) {
  return integrate_line(f, a, b, 1e-9).value;
}

// Lamperti jump density of the stable example: pi(y) = c+ e^y (e^y-1)^{-1-a}
// for y > 0 and c- e^y (1-e^y)^{-1-a} for y < 0, with the constants fixed by
// the poles of psi at v = a and v = -1.
Engine make_stable_engine(const WienerHopfPair& pair, double x,
                          const SimConfig& cfg) {
  const BernsteinFunction& ladder =
      pair.plus.kind() == PhiKind::stable_ladder_plus ? pair.plus : pair.minus;
  const double a = ladder.param(0);
  const double rho = ladder.param(1);
  const double rhohat = 1.0 - rho;
  const double alpha = pair.alpha;
  const double eps = cfg.jump_cutoff;
  if (!(eps < 0.5))
    throw precondition_error("stable path sampler: jump_cutoff must be < 0.5");

  Engine e;
  e.alpha = alpha;
  e.xpref = std::pow(x, alpha);
  e.kappa = pair.minus.at_zero() * pair.plus.at_zero();
  e.mean_slope = pair_mean_slope(pair);

  const double g1a = std::tgamma(1.0 + a);
  const double cplus =
      std::abs(a * rho - 1.0) <= 1e-9 ? 0.0 : g1a * std::sin(kPi * a * rho) / kPi;
  const double cminus = std::abs(a * rhohat - 1.0) <= 1e-9
                            ? 0.0
                            : g1a * std::sin(kPi * a * rhohat) / kPi;

  const auto pi_plus = [a](double y) {
    if (y < 30.0) return std::exp(y) * std::pow(std::expm1(y), -1.0 - a);
    return std::exp(-a * y - (1.0 + a) * std::log1p(-std::exp(-y)));
  };
  const auto pi_minus = [a](double s) {
    return std::exp(-s) * std::pow(-std::expm1(-s), -1.0 - a);
  };

  // truncated arms: exact Pareto in w = e^y - 1 resp. v = 1 - e^y
  const double wmin = std::expm1(eps);
  const double vmin = -std::expm1(-eps);
  const double lam_plus = cplus > 0.0 ? cplus * std::pow(wmin, -a) / a : 0.0;
  const double lam_minus =
      cminus > 0.0 ? cminus * (std::pow(vmin, -a) - 1.0) / a : 0.0;
  e.lam = lam_plus + lam_minus;
  e.jump.kind = 1;
  e.jump.p_plus = e.lam > 0.0 ? lam_plus / e.lam : 1.0;
  e.jump.wmin = wmin;
  e.jump.vmin_pow = std::pow(vmin, -a);
  e.jump.inv_a = 1.0 / a;

  // compensation moved into the drift; optional Gaussian for the discarded
  // small-jump variance
  double mu_eps = 0.0;
  if (eps < 1.0) {
    if (cplus > 0.0)
      mu_eps += cplus * quad([&](double y) { return y * pi_plus(y); }, eps, 1.0);
    if (cminus > 0.0)
      mu_eps -=
          cminus * quad([&](double s) { return s * pi_minus(s); }, eps, 1.0);
  }
  if (cfg.gauss_compensation) {
    double s2 = 0.0;
    if (cplus > 0.0)
      s2 += cplus * quad([&](double y) { return y * y * pi_plus(y); }, 0.0, eps);
    if (cminus > 0.0)
      s2 += cminus *
            quad([&](double s) { return s * s * pi_minus(s); }, 0.0, eps);
    e.sigma = std::sqrt(s2);
  }

  // pin the base drift by matching the exponent Psi(v) = psi(v/alpha) at one
  // interior point; the jump integral is evaluated by quadrature
  const auto jump_integral = [&](double v) {
    double total = 0.0;
    if (cplus > 0.0) {
      total += cplus * quad(
                           [&](double y) {
                             return (std::expm1(v * y) - v * y) * pi_plus(y);
                           },
                           0.0, 1.0);
      const double ymax =
          std::min(1.0 + 45.0 / (a - v), 650.0 / std::max(v, 0.1));
      total += cplus *
               quad([&](double y) { return std::expm1(v * y) * pi_plus(y); },
                    1.0, ymax);
    }
    if (cminus > 0.0) {
      total += cminus * quad(
                            [&](double s) {
                              return (std::expm1(-v * s) + v * s) * pi_minus(s);
                            },
                            0.0, 1.0);
      total += cminus *
               quad([&](double s) { return std::expm1(-v * s) * pi_minus(s); },
                    1.0, 46.0);
    }
    return total;
  };

  const double v_base = std::min(1.0, 0.6 * a);
  int pinned = 0;
  double base0 = 0.0;
  for (double frac : {1.0, 0.85, 0.7, 0.55, 0.4}) {
    const double v0 = v_base * frac;
    if (!(v0 < a - 0.15)) continue;
    double psi0;
    try {
      psi0 = pair.psi(cplx(v0 / alpha, 0.0)).real();
    } catch (const std::exception&) {
      continue;  // candidate sits on a gamma pole/zero
    }
    if (!std::isfinite(psi0) || std::abs(psi0) > 1e8) continue;
    const double base = (psi0 + e.kappa - jump_integral(v0)) / v0;
    if (pinned == 0) {
      base0 = base;
    } else {
      // For a genuine stable pair the recovered base drift is probe
      // independent (up to quadrature error). Anything else that reached
      // this engine through the kind dispatch has a different exponent and
      // must be refused, not approximated.
      const double scale = std::max({1.0, std::abs(base0), std::abs(base)});
      if (std::abs(base - base0) > 1e-5 * scale)
        throw precondition_error(
            "stable path sampler: pair exponent does not match the stable "
            "jump structure");
    }
    if (++pinned == 2) break;
  }
  if (pinned == 0)
    throw numeric_error("stable path sampler: drift calibration failed");
  e.drift = base0 - mu_eps;
  return e;
}

Engine make_engine(const WienerHopfPair& pair, double x,
                   const SimConfig& cfg) {
  if (!(pair.plus.at_zero() > 0.0))
    throw precondition_error(
        "exponential functional needs phi^+(0) > 0 (class N)");
  const AffineView m = as_affine(pair.minus);
  const AffineView p = as_affine(pair.plus);
  if (m.ok && p.ok) {
    // psi(z) = c (z + s_m)(z - s_p): Brownian motion with drift and kill
    Engine e;
    e.alpha = pair.alpha;
    e.xpref = std::pow(x, pair.alpha);
    const double c = m.scale * p.scale;
    e.sigma = std::sqrt(2.0 * c) / pair.alpha;
    e.drift = c * (m.shift - p.shift) / pair.alpha;
    e.kappa = c * m.shift * p.shift;
    e.mean_slope = e.drift;
    return e;
  }
  if (pair.plus.kind() == PhiKind::stable_ladder_plus ||
      pair.minus.kind() == PhiKind::stable_ladder_minus)
    return make_stable_engine(pair, x, cfg);
  if (m.ok && m.shift == 0.0 && pair.plus.kind() == PhiKind::exp_jump) {
    // drift + compound Poisson with Exp jumps; no discretization error
    const double d = pair.plus.param(0);
    const double mj = pair.plus.param(1);
    const double th = pair.plus.param(2);
    const double q = pair.plus.param(3);
    Engine e;
    e.alpha = pair.alpha;
    e.xpref = std::pow(x, pair.alpha);
    e.drift = -m.scale * (q + mj) / pair.alpha;
    e.sigma = d > 0.0 ? std::sqrt(2.0 * m.scale * d) / pair.alpha : 0.0;
    e.lam = m.scale * mj * th;
    e.jump.kind = 2;
    e.jump.scale = 1.0 / (pair.alpha * th);
    e.mean_slope = pair_mean_slope(pair);
    return e;
  }
  throw precondition_error("no path sampler for this Wiener-Hopf pair shape");
}

double resolve_horizon(const WienerHopfPair& pair, const SimConfig& cfg) {
  if (cfg.horizon > 0.0) return cfg.horizon;
  return 50.0 / std::max(std::abs(pair.plus.at_zero() * pair.alpha), 1e-6);
}

void run_T_paths(const WienerHopfPair& pair, double x, const SimConfig& cfg,
                 std::vector<double>& out, long long& extended,
                 long long& flagged) {
  validate(cfg);
  const Engine engine = make_engine(pair, x, cfg);
  const double horizon0 = resolve_horizon(pair, cfg);
  out.assign((std::size_t)cfg.n_paths, 0.0);
  std::atomic<long long> n_ext{0}, n_flag{0};
  parallel_paths(cfg.n_paths, resolve_workers(cfg),
                 [&](long long lo, long long hi) {
                   long long ext = 0, flag = 0;
                   for (long long i = lo; i < hi; ++i) {
                     PathRng rng(cfg.seed, kStreamT | (std::uint64_t)i);
                     const PathOut po = run_path(engine, cfg, horizon0, rng);
                     out[(std::size_t)i] = po.value;
                     ext += po.extended;
                     flag += po.flagged;
                   }
                   n_ext += ext;
                   n_flag += flag;
                 });
  extended = n_ext;
  flagged = n_flag;
}

}  // namespace

EmpiricalLaw sample_positive_stable(double beta, const SimConfig& cfg) {
  if (!(beta > 0.0 && beta < 1.0))
    throw precondition_error("sample_positive_stable: beta in (0,1)");
  validate(cfg);
  std::vector<double> out((std::size_t)cfg.n_paths, 0.0);
  parallel_paths(cfg.n_paths, resolve_workers(cfg),
                 [&](long long lo, long long hi) {
                   for (long long i = lo; i < hi; ++i) {
                     PathRng rng(cfg.seed, kStreamChi | (std::uint64_t)i);
                     out[(std::size_t)i] = kanter_stable(beta, rng);
                   }
                 });
  return finish(std::move(out), 0, 0);
}

EmpiricalLaw sample_exponential_functional(const WienerHopfPair& pair,
                                           double x, const SimConfig& cfg) {
  std::vector<double> out;
  long long extended = 0, flagged = 0;
  run_T_paths(pair, x, cfg, out, extended, flagged);
  return finish(std::move(out), extended, flagged);
}

EmpiricalLaw sample_extinction(const WienerHopfPair& pair,
                               const BernsteinFunction& time_change,
                               double beta, double x, const SimConfig& cfg) {
  if (!(beta > 0.0)) throw precondition_error("sample_extinction: beta > 0");
  validate(cfg);

  if (time_change.kind() == PhiKind::s_transform) {
    // the product law collapses onto the exponential functional of the
    // reduced pair (phi^-, 1+u); needs beta = 1 and phi^- in B_-
    if (std::abs(beta - 1.0) > 1e-12)
      throw precondition_error(
          "sample_extinction: S-transform route needs beta = 1");
    if (!time_change.child().same_as(pair.plus))
      throw precondition_error(
          "sample_extinction: time change is not built from phi^+");
    const auto membership = pair.minus.in_b_minus();
    if (!membership.value)
      throw precondition_error("sample_extinction: phi^- not in B_-: " +
                               membership.reason);
    // The reduced exponent -phi^-(-u)(1+u) is a registered path process
    // only when phi^- is affine (Brownian functional). A ladder phi^- would
    // fall into the stable-example engine, whose jump structure belongs to
    // the full pair, not to the reduced one: wrong law, off by percents.
    if (!as_affine(pair.minus).ok)
      throw precondition_error(
          "sample_extinction: S-transform route is exact only for affine "
          "phi^- (reduced functional is Brownian); use the analytic "
          "transform/density for this model");
    WienerHopfPair reduced{pair.minus, BernsteinFunction::affine(1.0, 1.0),
                           pair.alpha};
    return sample_exponential_functional(reduced, x, cfg);
  }

  const AffineView aff = as_affine(time_change);
  double chi_const = 0.0;
  bool stable_entry = false;
  if (aff.ok && aff.shift == 0.0) {
    chi_const = std::pow(aff.scale * beta, 1.0 / beta);
  } else if (time_change.kind() == PhiKind::stable_sub &&
             std::abs(time_change.param(0) - beta) <= 1e-9) {
    stable_entry = true;
  } else {
    throw precondition_error(
        "sample_extinction: no chi_1 sampler for this time change");
  }

  std::vector<double> tvals;
  long long extended = 0, flagged = 0;
  run_T_paths(pair, x, cfg, tvals, extended, flagged);
  const double inv_beta = 1.0 / beta;
  std::vector<double> out((std::size_t)cfg.n_paths, 0.0);
  parallel_paths(cfg.n_paths, resolve_workers(cfg),
                 [&](long long lo, long long hi) {
                   for (long long i = lo; i < hi; ++i) {
                     double chi = chi_const;
                     if (stable_entry) {
                       PathRng rng(cfg.seed, kStreamChi | (std::uint64_t)i);
                       chi = kanter_stable(beta, rng);
                     }
                     out[(std::size_t)i] =
                         chi * std::pow(tvals[(std::size_t)i], inv_beta);
                   }
                 });
  return finish(std::move(out), extended, flagged);
}

EmpiricalLaw sample_extinction(const ModelSpec& model, const SimConfig& cfg) {
  if (!model.pair)
    throw precondition_error(
        "sample_extinction: model has no Wiener-Hopf pair");
  return sample_extinction(*model.pair, model.time_change_phi(), model.beta,
                           model.x, cfg);
}

EmpiricalLaw sample_inverse_subordinator(const BernsteinFunction& phi,
                                         double beta, double t,
                                         const SimConfig& cfg,
                                         bool path_route) {
  if (!(beta > 0.0 && beta < 1.0))
    throw precondition_error("sample_inverse_subordinator: beta in (0,1)");
  if (!(t > 0.0)) throw precondition_error("sample_inverse_subordinator: t > 0");
  if (phi.kind() != PhiKind::stable_sub ||
      std::abs(phi.param(0) - beta) > 1e-9)
    throw precondition_error(
        "sample_inverse_subordinator: needs the stable entry with index beta");
  validate(cfg);
  std::vector<double> out((std::size_t)cfg.n_paths, 0.0);
  if (!path_route) {
    const double tb = std::pow(t, beta);
    parallel_paths(cfg.n_paths, resolve_workers(cfg),
                   [&](long long lo, long long hi) {
                     for (long long i = lo; i < hi; ++i) {
                       PathRng rng(cfg.seed, kStreamChi | (std::uint64_t)i);
                       out[(std::size_t)i] =
                           tb * std::pow(kanter_stable(beta, rng), -beta);
                     }
                   });
    return finish(std::move(out), 0, 0);
  }
  // first passage of a truncated-jump stable subordinator over the level t;
  // drift crossings are interpolated, jump crossings land exactly
  const double eps = cfg.jump_cutoff;
  const double g1mb = std::tgamma(1.0 - beta);
  const double rate = std::pow(eps, -beta) / g1mb;
  const double mu_eps =
      beta * std::pow(eps, 1.0 - beta) / ((1.0 - beta) * g1mb);
  const double s_cap = 1e5;
  std::atomic<long long> n_flag{0};
  parallel_paths(cfg.n_paths, resolve_workers(cfg),
                 [&](long long lo, long long hi) {
                   long long flag = 0;
                   for (long long i = lo; i < hi; ++i) {
                     PathRng rng(cfg.seed, kStreamSub | (std::uint64_t)i);
                     double s = 0.0, pos = 0.0, lambda = -1.0;
                     while (s < s_cap) {
                       const double dj = rng.exponential() / rate;
                       if (pos + mu_eps * dj >= t) {
                         lambda = s + (t - pos) / mu_eps;
                         break;
                       }
                       s += dj;
                       pos += mu_eps * dj;
                       pos += eps * std::pow(rng.uniform_open(), -1.0 / beta);
                       if (pos >= t) {
                         lambda = s;
                         break;
                       }
                     }
                     if (lambda < 0.0) {
                       lambda = s_cap;
                       ++flag;
                     }
                     out[(std::size_t)i] = lambda;
                   }
                   n_flag += flag;
                 });
  return finish(std::move(out), 0, n_flag);
}

}  // namespace extime

#include "extime/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "extime/errors.hpp"
#include "extime/quadrature.hpp"
#include "extime/special.hpp"
#include "extime/wphi.hpp"

namespace extime {

namespace {

constexpr double kStripSlack = 1e-8;

double nan_v() { return std::numeric_limits<double>::quiet_NaN(); }

[[noreturn]] void strip_violation(const MellinLaw& law, cplx z) {
  std::ostringstream os;
  os << law.name << ": Re z = " << z.real() << " outside the open strip ("
     << law.strip_lo << ", " << law.strip_hi << ")";
  throw precondition_error(os.str());
}

void require_b_rho(const BernsteinFunction& phi, const char* who) {
  auto m = phi.in_b_rho();
  if (!m.value)
    throw precondition_error(std::string(who) + ": time change not in B_rho: " +
                             m.reason);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0))
    throw precondition_error(std::string(what) + " must be positive");
}

}  // namespace

cplx MellinLaw::operator()(cplx z) const {
  double re = z.real();
  if (!(re > strip_lo + kStripSlack && re < strip_hi - kStripSlack))
    strip_violation(*this, z);
  return transform(z);
}

double MellinLaw::moment(double s) const { return (*this)(cplx(s, 0.0)).real(); }

SectorAngle sector_angle(const BernsteinFunction& phi, double b_max) {
  const int n = 4096;
  const double h = b_max / n;
  double acc = 0.0;
  double prev = std::arg(phi.eval(cplx(1.0, 0.0)));
  double angle = 0.0, lo = inf_v, hi = -inf_v;
  for (int k = 1; k <= n; ++k) {
    double u = k * h;
    double cur = std::arg(phi.eval(cplx(1.0, u)));
    acc += 0.5 * (prev + cur) * h;
    prev = cur;
    double avg = acc / u;
    if (u >= b_max / 10.0) {
      lo = std::min(lo, avg);
      hi = std::max(hi, avg);
    }
    angle = avg;
  }
  return {angle, std::max(hi - angle, angle - lo) + 1e-3};
}

MellinLaw mellin_markov_T(const WienerHopfPair& pair, double x) {
  require_positive(x, "mellin_markov_T: x");
  if (!(pair.plus.at_zero() > 0.0))
    throw precondition_error(
        "mellin_markov_T: phi+ must be killed (phi+(0) > 0)");
  MellinLaw law;
  law.kind = MellinLaw::Kind::markov_T;
  law.name = "markov_T";
  law.x = x;
  law.alpha = pair.alpha;
  const BernsteinFunction minus = pair.minus;
  const BernsteinFunction plus = pair.plus;
  law.strip_lo =
      minus.at_zero() == 0.0 ? -(minus.abscissa_a() + 1.0) : -1.0;
  law.strip_hi = plus.abscissa_astar();
  law.dominant_pole = law.strip_hi;
  const double lx = std::log(x);
  const double lp0 = std::log(plus.at_zero());
  const double alpha = pair.alpha;
  law.transform = [=](cplx z) {
    return std::exp(alpha * z * lx + lp0 + log_gamma(z + 1.0) +
                    log_w_phi(plus, -z) - log_w_phi_extended(minus, z + 1.0));
  };
  return law;
}

MellinLaw mellin_chi_entry(const BernsteinFunction& phi, double beta) {
  require_positive(beta, "mellin_chi_entry: beta");
  require_b_rho(phi, "mellin_chi_entry");
  const BernsteinFunction phib = rescale(phi, beta);
  MellinLaw law;
  law.kind = MellinLaw::Kind::chi_entry;
  law.name = "chi_entry";
  law.beta = beta;
  law.strip_lo = -inf_v;
  law.strip_hi = beta * phib.abscissa_a();
  const double denom = beta * phi.prime_at_zero();
  law.transform = [=](cplx z) {
    return std::exp(log_gamma_over_w(phib, -z / beta)) / denom;
  };
  return law;
}

MellinLaw mellin_lambda(const BernsteinFunction& phi, double beta, double t) {
  require_positive(beta, "mellin_lambda: beta");
  require_positive(t, "mellin_lambda: t");
  require_b_rho(phi, "mellin_lambda");
  const BernsteinFunction phib = rescale(phi, beta);
  MellinLaw law;
  law.kind = MellinLaw::Kind::lambda_t;
  law.name = "lambda_t";
  law.beta = beta;
  law.strip_lo = 0.0;
  law.strip_hi = inf_v;
  const double denom = beta * phi.prime_at_zero();
  const double ltb = beta * std::log(t);
  law.transform = [=](cplx z) {
    return std::exp(z * ltb + log_gamma_over_w(phib, z)) / denom;
  };
  return law;
}

MellinLaw mellin_extinction(const WienerHopfPair& pair,
                            const BernsteinFunction& phi, double beta,
                            double x) {
  MellinLaw mt = mellin_markov_T(pair, x);
  MellinLaw mc = mellin_chi_entry(phi, beta);
  MellinLaw law;
  law.kind = MellinLaw::Kind::extinction;
  law.name = "extinction";
  law.x = x;
  law.alpha = pair.alpha;
  law.beta = beta;
  law.strip_lo = beta * mt.strip_lo;
  law.strip_hi = std::min(beta * mt.strip_hi, mc.strip_hi);
  law.dominant_pole = beta * mt.strip_hi;
  law.transform = [mtf = mt.transform, mcf = mc.transform, beta](cplx z) {
    return mcf(z) * mtf(z / beta);
  };
  return law;
}

MellinLaw mellin_extinction(const ModelSpec& model) {
  if (!model.pair)
    throw precondition_error(
        "extinction law needs a Wiener-Hopf pair model, not a bare phi");
  return mellin_extinction(*model.pair, model.time_change_phi(), model.beta,
                           model.x);
}

MellinLaw mellin_gen_frechet(const BernsteinFunction& phi, double beta) {
  require_positive(beta, "mellin_gen_frechet: beta");
  MellinLaw law;
  law.kind = MellinLaw::Kind::gen_frechet;
  law.name = "gen_frechet";
  law.beta = beta;
  const double a = phi.abscissa_a();
  law.strip_lo = phi.at_zero() == 0.0 ? -beta * (a + 1.0) : -beta;
  law.strip_hi = beta;
  law.dominant_pole = beta;
  SectorAngle ang = sector_angle(phi);
  double occupied = std::min(ang.angle + ang.error + 0.02, 0.55 * pi_v);
  law.exp_decay_rate = (pi_v - occupied) / beta;
  law.transform = [phi, beta](cplx z) {
    cplx w = z / beta + 1.0;
    return std::exp(log_gamma(1.0 - z / beta) + log_gamma(w) -
                    log_w_phi_extended(phi, w));
  };
  return law;
}

cplx laplace_lambda(const BernsteinFunction& phi, double beta, double t,
                    cplx q) {
  require_positive(beta, "laplace_lambda: beta");
  require_positive(t, "laplace_lambda: t");
  require_b_rho(phi, "laplace_lambda");
  if (q == cplx(0.0)) return 1.0;
  const double tb = std::pow(t, beta);
  const double pinf = phi.value_at_infinity();
  if (!(std::abs(q) * tb < pinf)) {
    std::ostringstream os;
    os << "laplace_lambda: series radius violated: |q| t^beta = "
       << std::abs(q) * tb << " >= phi(inf) = " << pinf;
    throw numeric_error(os.str());
  }
  const BernsteinFunction phib = rescale(phi, beta);
  const cplx xq = q * tb;
  cplx term = xq;  // n = 1: x / (1 * W(1))
  cplx sum = term;
  for (long n = 2; n <= 2000000; ++n) {
    term *= xq * (double(n - 1) / double(n)) / phib.eval(double(n - 1));
    sum += term;
    if (n > 4 && std::abs(term) <= 1e-12 * (1.0 + std::abs(sum)))
      return 1.0 + sum / (beta * phi.prime_at_zero());
  }
  throw numeric_error("laplace_lambda: series did not converge");
}

double density_series_gen_frechet(const BernsteinFunction& phi, double beta,
                                  double t) {
  require_positive(beta, "density_series_gen_frechet: beta");
  require_positive(t, "density_series_gen_frechet: t");
  const double r = std::pow(t, -beta);
  const double pinf = phi.value_at_infinity();
  if (!(r < pinf)) {
    std::ostringstream os;
    os << "density series radius: t^{-beta} = " << r
       << " >= phi(inf) = " << pinf;
    throw numeric_error(os.str());
  }
  if (r > 35.0)
    throw numeric_error(
        "density series: t^{-beta} too large for the alternating sum; "
        "use the Mellin-Barnes route");
  const double z = -r;
  double sum = 0.0, zpow = 1.0, w = 1.0;  // z^n and W(n+1), starting at n = 0
  for (long n = 0; n <= 100000; ++n) {
    const double pn1 = phi.eval(double(n + 1));
    const double term = (double(n + 1) / pn1) * zpow / w;
    sum += term;
    if (n > 3 && std::abs(term) <= 1e-14 * std::max(1e-300, std::abs(sum))) {
      double f = beta * std::pow(t, -beta - 1.0) * sum;
      if (f < 0.0) {
        if (f >= -1e-12) return 0.0;
        std::ostringstream os;
        os << "density series went negative beyond rounding slack: " << f;
        throw numeric_error(os.str());
      }
      return f;
    }
    zpow *= z;
    w *= pn1;
  }
  throw numeric_error("density series: no convergence within 1e5 terms");
}

// -------- Mellin-Barnes inversion --------

namespace {

// Integration line for the density kernel: minimize t^{-(1+s)} |M(s)| over
// real strip points (a saddle pick keeps the integrand amplitude near the
// scale of the result).
double pick_density_sigma(const MellinLaw& law, double t) {
  const double hi = law.strip_hi;
  const double lo = std::max(law.strip_lo, hi - 24.0);
  const double width = hi - lo;
  const double lt = std::log(t);
  double best = hi - 0.45 * std::min(width, 1.0);
  double best_j = inf_v;
  const int m = 33;
  for (int i = 0; i < m; ++i) {
    double s = lo + width * (i + 0.5) / m;
    if (s <= law.strip_lo + 1e-6 || s >= hi - 1e-6) continue;
    double j;
    try {
      j = -(1.0 + s) * lt + std::log(std::abs(law.transform(cplx(s, 0.0))));
    } catch (const std::exception&) {
      continue;  // pole lattice point; never a useful line anyway
    }
    if (std::isfinite(j) && j < best_j) {
      best_j = j;
      best = s;
    }
  }
  return best;
}

struct LineKernel {
  const MellinLaw& law;
  double lt;    // log t
  double c;     // line abscissa (density kernel uses M(c-1+ib))
  bool density;
  mutable std::size_t evals = 0;

  double operator()(double b) const {
    ++evals;
    cplx z(c, b);
    cplx m = density ? law.transform(cplx(c - 1.0, b))
                     : law.transform(z) / z;
    return (std::exp(-z * lt) * m).real();
  }
  double magnitude(double b) const {
    ++evals;
    cplx z(c, b);
    cplx m = density ? law.transform(cplx(c - 1.0, b))
                     : law.transform(z) / z;
    return std::abs(std::exp(-z * lt) * m);
  }
};

double mb_line(const MellinLaw& law, double t, double c, bool density,
               const MbOptions& opt, MbDiagnostics* diag) {
  const double tol = opt.tol;
  LineKernel g{law, std::log(t), c, density};

  // truncation point
  double B = 0.0, rem = 0.0;
  bool expreg = law.exp_decay_rate.has_value();
  if (expreg) {
    const double rate = *law.exp_decay_rate;
    double amp = 1e-30;
    for (double b0 : {0.0, 1.0, 3.0}) amp = std::max(amp, g.magnitude(b0));
    B = std::max(12.0, (std::log(amp / tol) + 4.0) / rate);
    for (int grow = 0; grow < 64; ++grow) {
      rem = g.magnitude(B) / rate;
      if (rem <= tol / 3.0 || B >= opt.b_cap) break;
      B *= 1.4;
    }
    if (rem > tol / 3.0) {
      std::ostringstream os;
      os << "mellin-barnes truncation failed (exponential regime): remainder "
         << rem << " at B = " << B;
      throw numeric_error(os.str());
    }
  } else {
    B = 16.0;
    for (;;) {
      double mags[4], lbs[4];
      const double fr[4] = {0.55, 0.70, 0.85, 1.0};
      for (int i = 0; i < 4; ++i) {
        mags[i] = g.magnitude(fr[i] * B);
        lbs[i] = std::log(fr[i] * B);
      }
      if (mags[3] == 0.0) {  // decayed below denormals
        rem = 0.0;
        break;
      }
      // least-squares slope of log|integrand| against log b
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (int i = 0; i < 4; ++i) {
        double y = std::log(mags[i]);
        sx += lbs[i];
        sy += y;
        sxx += lbs[i] * lbs[i];
        sxy += lbs[i] * y;
      }
      double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
      double p = -slope;
      if (p > 1.05) {
        rem = mags[3] * B / (p - 1.0);
        if (rem <= tol / 3.0) break;
      }
      if (B >= opt.b_cap) {
        std::ostringstream os;
        os << "mellin-barnes truncation failed: fitted tail power " << p
           << ", remainder bound " << rem << " at B = " << B;
        throw numeric_error(os.str());
      }
      B = std::min(B * 1.8, opt.b_cap);
    }
  }

  // composite trapezoid on [0, B] with step halving
  double h = std::min(0.35 / (1.0 + std::abs(g.lt)), B / 64.0);
  long n = std::max<long>(64, std::lround(std::ceil(B / h)));
  h = B / double(n);
  double s = 0.5 * (g(0.0) + g(B));
  for (long k = 1; k < n; ++k) s += g(k * h);
  double T = s * h;
  double value = T, delta = inf_v;
  int halvings = 0;
  for (halvings = 1; halvings <= 16; ++halvings) {
    double sm = 0.0;
    for (long k = 0; k < n; ++k) sm += g((k + 0.5) * h);
    double Tnew = 0.5 * T + 0.5 * h * sm;
    n *= 2;
    h *= 0.5;
    value = (4.0 * Tnew - T) / 3.0;
    delta = std::abs(Tnew - T);
    T = Tnew;
    if (halvings >= 2 && delta <= tol * std::max(1.0, std::abs(Tnew))) break;
    if (g.evals > 4000000)
      throw numeric_error(
          "mellin-barnes quadrature exceeded its evaluation budget");
  }
  if (delta > tol * std::max(1.0, std::abs(T)))
    throw numeric_error(
        "mellin-barnes quadrature did not reach step-halving agreement");
  if (diag) {
    diag->line = c;
    diag->B = B;
    diag->evals = g.evals;
    diag->halvings = halvings;
    diag->exponential_regime = expreg;
    diag->remainder_bound = rem;
    diag->step_delta = delta;
  }
  return value / pi_v;
}

}  // namespace

double density_mellin_barnes(const MellinLaw& law, double t, MbOptions opt,
                             MbDiagnostics* diag) {
  require_positive(t, "density_mellin_barnes: t");
  double c;
  if (opt.line) {
    c = *opt.line;
    if (!(c - 1.0 > law.strip_lo + kStripSlack &&
          c - 1.0 < law.strip_hi - kStripSlack))
      throw precondition_error(
          "density_mellin_barnes: line c-1 outside the strip");
  } else {
    c = 1.0 + pick_density_sigma(law, t);
  }
  return mb_line(law, t, c, true, opt, diag);
}

double survival(const MellinLaw& law, double t, MbOptions opt,
                MbDiagnostics* diag) {
  require_positive(t, "survival: t");
  const double hi = law.strip_hi;
  if (!(hi > kStripSlack))
    throw precondition_error("survival: strip upper end must be positive");
  double c;
  bool shifted = false;  // residue-shifted line left of the origin
  if (opt.line) {
    c = *opt.line;
    shifted = c < 0.0;
    bool ok = shifted ? (c > law.strip_lo + kStripSlack && c < -kStripSlack)
                      : (c > kStripSlack && c < hi - kStripSlack);
    if (!ok) throw precondition_error("survival: invalid line abscissa");
  } else if (t >= 1.0 || !(law.strip_lo < -1e-6)) {
    c = 0.6 * std::min(hi, 4.0);
  } else {
    shifted = true;
    c = std::max(0.5 * law.strip_lo, -0.75);
  }
  double v = mb_line(law, t, c, false, opt, diag);
  double p = shifted ? 1.0 + v : v;
  return std::clamp(p, 0.0, 1.0);
}

double moment_via_density(const MellinLaw& law, double s, double tol) {
  MbOptions o;
  o.tol = std::min(1e-8, tol * 1e-2);
  // Laws with a finite rightmost pole gamma have f(t) ~ c t^{-gamma-1}, so
  // t^s f(t) decays only like t^{s-gamma-1}. Truncate the body integral at
  // T and complete it with the dominant power drawn from f(T) itself:
  // int_T^inf t^s f dt ~= T^{s+1} f(T) / (gamma - s), relative error
  // O(T^{-gap to the next pole}).
  double cap = 60.0;
  double tail = 0.0;
  const double gamma =
      law.dominant_pole ? *law.dominant_pole : law.strip_hi;
  if (std::isfinite(gamma)) {
    cap = 40.0;
    const double T = std::exp(cap);
    tail = std::pow(T, s + 1.0) * density_mellin_barnes(law, T, o) /
           (gamma - s);
  }
  auto g = [&](double u) -> double {
    double t = std::exp(u);
    return std::exp((s + 1.0) * u) * density_mellin_barnes(law, t, o);
  };
  return integrate_line(g, -60.0, cap, tol).value + tail;
}

// -------- smoothness --------

namespace {

// [0,inf]/[0,inf] with 0/0 and inf/inf indeterminate (NaN).
double char_ratio(double num, double den) {
  if (std::isnan(num) || std::isnan(den)) return nan_v();
  if (std::isinf(num) && std::isinf(den)) return nan_v();
  if (den == 0.0) return num == 0.0 ? nan_v() : inf_v;
  if (std::isinf(num)) return inf_v;
  return num / den;
}

double char_add(double a, double b) {  // inf absorbs indeterminate
  if (std::isinf(a) || std::isinf(b)) return inf_v;
  if (std::isnan(a) || std::isnan(b)) return nan_v();
  return a + b;
}

}  // namespace

SmoothnessIndex smoothness_index(const WienerHopfPair& pair,
                                 const BernsteinFunction& phi, double beta) {
  require_positive(beta, "smoothness_index: beta");
  SmoothnessIndex out;
  const BernsteinFunction phib = rescale(phi, beta);
  const auto& tb = phib.triple();
  out.n_phi_beta = tb ? char_ratio(tb->mass_total, tb->drift) : nan_v();
  const auto& tm = pair.minus.triple();
  const auto& tp = pair.plus.triple();
  double term1 = tm ? char_ratio(pair.minus.at_zero() + tm->mass_total,
                                 tm->drift)
                    : nan_v();
  double term2 = tp ? char_ratio(tp->density_at_zero,
                                 pair.plus.at_zero() + tp->mass_total)
                    : nan_v();
  double term3 = tp ? (tp->drift > 0.0 ? inf_v : 0.0) : nan_v();
  out.n_psi_alpha = char_add(char_add(term1, term2), term3);
  out.n = char_add(out.n_phi_beta, out.n_psi_alpha);
  if (std::isnan(out.n)) {
    out.indeterminate = true;
  } else if (std::isinf(out.n)) {
    out.density_class = std::numeric_limits<int>::max();
    out.density_available = true;
  } else {
    out.density_class = int(std::ceil(out.n)) - 2;
    out.density_available = out.n > 1.0;
  }
  return out;
}

SmoothnessIndex smoothness_index(const ModelSpec& model) {
  if (!model.pair)
    throw precondition_error("smoothness index needs a Wiener-Hopf pair model");
  return smoothness_index(*model.pair, model.time_change_phi(), model.beta);
}

// -------- persistence --------

namespace {

double poch_int(double a, long m) {
  double p = 1.0;
  if (m >= 0)
    for (long j = 0; j < m; ++j) p *= a + double(j);
  else
    for (long j = 1; j <= -m; ++j) p /= a - double(j);
  return p;
}

double binom_int(long n, long k) {
  double p = 1.0;
  for (long j = 1; j <= k; ++j) p *= double(n - k + j) / double(j);
  return p;
}

}  // namespace

double persistence_derivative_constant(double c, int n, double n_bar) {
  if (n < 0)
    throw precondition_error("persistence_derivative_constant: n must be >= 0");
  if (std::isinf(n_bar)) return rising_factorial(1.0 + c, n);
  const long N = std::lround(n_bar);
  if (N < 0)
    throw precondition_error(
        "persistence_derivative_constant: negative budget");
  double sum = 0.0;
  for (long k = 0; k <= N; ++k) {
    const long d = k - n + 1;
    if (d <= 0) continue;  // 1/Gamma(nonpositive integer) = 0
    double ratio = 1.0;    // Gamma(N-n+1)/Gamma(d) = d (d+1) ... (N-n)
    for (long j = d; j <= N - n; ++j) ratio *= double(j);
    sum += binom_int(N, k) * ratio * ((k % 2) ? -1.0 : 1.0) *
           rising_factorial(1.0 + c, int(k));
  }
  return poch_int(1.0 + c, n - N) * sum;
}

PersistenceReport persistence_report(const WienerHopfPair& pair,
                                     const BernsteinFunction& phi, double beta,
                                     double x) {
  require_positive(beta, "persistence_report: beta");
  require_positive(x, "persistence_report: x");
  require_b_rho(phi, "persistence_report");
  PersistenceReport rep;
  const BernsteinFunction& plus = pair.plus;
  rep.c_alpha = plus.abscissa_astar();
  if (!(rep.c_alpha > 0.0))
    throw precondition_error("persistence: a*_{phi+} must be positive");
  rep.root_residual = std::abs(plus.eval_raw(-rep.c_alpha));
  if (!(rep.root_residual <= 1e-9)) {
    std::ostringstream os;
    os << "persistence: phi+(-c_alpha) != 0 (residual " << rep.root_residual
       << ")";
    throw precondition_error(os.str());
  }
  const BernsteinFunction phib = rescale(phi, beta);
  if (!(rep.c_alpha < phib.abscissa_a())) {
    std::ostringstream os;
    os << "persistence: c_alpha = " << rep.c_alpha
       << " >= a_{phi_beta} = " << phib.abscissa_a()
       << "; boundary moment diverges";
    throw precondition_error(os.str());
  }
  rep.tail_exponent = beta * rep.c_alpha;

  const double c = rep.c_alpha;
  const double h = 1e-5 * std::max(1.0, c);
  rep.derivative =
      (4.0 * plus.eval_raw(-c + 0.5 * h) - plus.eval_raw(-c + h)) / h;
  if (!(rep.derivative > 0.0))
    throw numeric_error("persistence: nonpositive slope of phi+ at -c_alpha");

  // Boundary moment E_x[T_ext^{beta c}]: the W_{phi+}(-c) factor carries the
  // simple zero of phi+; regularized by one recurrence step, W(-c) ->
  // W(1-c)/phi+'(-c+), which is where the derivative below enters.
  double t_reg =
      std::pow(x, pair.alpha * c) * plus.at_zero() *
      std::exp(log_gamma(cplx(c + 1.0)) + log_w_phi(plus, cplx(1.0 - c)) -
               log_w_phi_extended(pair.minus, cplx(c + 1.0)))
          .real();
  double mchi = std::exp(log_gamma_over_w(phib, cplx(-c))).real() /
                (beta * phi.prime_at_zero());
  rep.limit_constant = mchi * t_reg / (c * rep.derivative);

  SmoothnessIndex sm = smoothness_index(pair, phi, beta);
  if (std::isnan(sm.n_psi_alpha)) {
    rep.n_bar = nan_v();
  } else if (std::isinf(sm.n_psi_alpha)) {
    rep.n_bar = inf_v;
    for (int n = 0; n <= 8; ++n)
      rep.derivative_constants.push_back(rising_factorial(1.0 + c, n));
  } else {
    long nb = long(std::ceil(sm.n_psi_alpha)) - 2;
    rep.n_bar = double(nb);
    if (nb >= 0) {
      long top = std::min<long>(nb + 1, 8);
      for (long n = 0; n <= top; ++n)
        rep.derivative_constants.push_back(
            persistence_derivative_constant(c, int(n), double(nb)));
    }
  }
  return rep;
}

PersistenceReport persistence_report(const ModelSpec& model) {
  if (!model.pair)
    throw precondition_error("persistence needs a Wiener-Hopf pair model");
  return persistence_report(*model.pair, model.time_change_phi(), model.beta,
                            model.x);
}

// -------- Theorem 3 --------

Theorem3Report verify_theorem3(const WienerHopfPair& pair, double beta,
                               double x, int grid_points) {
  require_positive(beta, "verify_theorem3: beta");
  require_positive(x, "verify_theorem3: x");
  if (grid_points < 4) grid_points = 4;
  auto m1 = pair.plus.in_b1();
  if (!m1.value)
    throw precondition_error("theorem 3 needs phi+ in B_1: " + m1.reason);
  BernsteinFunction tc = s_transform(pair.plus, true);
  // the theorem pins the rescaled exponent itself: phi_beta = S_{phi+};
  // the time change handed to the factorization is therefore S((.)/beta)
  if (beta != 1.0) tc = rescale(tc, 1.0 / beta);
  auto mr = tc.in_b_rho();
  if (!mr.value)
    throw precondition_error("theorem 3: S_{phi+} not in B_rho: " + mr.reason);

  MellinLaw lhs = mellin_extinction(pair, tc, beta, x);
  MellinLaw rhsF = mellin_gen_frechet(pair.minus, beta);
  const cplx lsc1 = pair.alpha * std::log(x) / beta;

  Theorem3Report rep;
  rep.grid_points = grid_points;

  auto grid_max_rel = [&](double lo, double hi, auto&& left, auto&& right) {
    double worst = 0.0;
    for (int j = 0; j < grid_points; ++j) {
      double s = lo + (hi - lo) * (j + 1.0) / (grid_points + 1.0);
      double im = (j % 3 == 1) ? 0.8 : (j % 3 == 2 ? -1.7 : 0.0);
      cplx z(s, im);
      cplx a = left(z), b = right(z);
      worst = std::max(worst,
                       std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    return worst;
  };

  {
    double lo = std::max(lhs.strip_lo, rhsF.strip_lo);
    double hi = std::min(lhs.strip_hi, rhsF.strip_hi);
    lo = std::max(lo, hi - 8.0);
    double in = 0.05 * (hi - lo);
    rep.max_rel_identity1 = grid_max_rel(
        lo + in, hi - in, [&](cplx z) { return lhs(z); },
        [&](cplx z) { return std::exp(lsc1 * z) * rhsF(z); });
  }

  if (std::abs(beta - 1.0) < 1e-12) {
    bool bminus = false;
    try {
      bminus = pair.minus.in_b_minus().value;
    } catch (const std::exception&) {
      bminus = false;
    }
    if (bminus) {
      // psi_alpha(z) = (z-1) phi_alpha^-(z): the reduced pair takes the
      // existing descending factor and the ascending factor u+1.
      WienerHopfPair red{pair.minus, BernsteinFunction::affine(1.0, 1.0),
                         pair.alpha};
      MellinLaw mred = mellin_markov_T(red, x);
      double lo = std::max(lhs.strip_lo, mred.strip_lo);
      double hi = std::min(lhs.strip_hi, mred.strip_hi);
      lo = std::max(lo, hi - 8.0);
      double in = 0.05 * (hi - lo);
      rep.max_rel_identity2 = grid_max_rel(
          lo + in, hi - in, [&](cplx z) { return lhs(z); },
          [&](cplx z) { return mred(z); });
    }
  }

  {
    const double c1 = pair.minus.eval(1.0);
    bool linear = c1 > 0.0;
    for (double u : {0.37, 1.9, 3.1})
      if (std::abs(pair.minus.eval(u) - c1 * u) > 1e-11 * (1.0 + c1 * u))
        linear = false;
    if (linear) {
      // phi^-(u) = c1 u: F_beta(phi^-) reduces to a scaled Frechet and the
      // extinction law is (x^alpha / c1)^{1/beta}-scaled Frechet(beta).
      const cplx lsc3 = (pair.alpha * std::log(x) - std::log(c1)) / beta;
      double lo = std::max(lhs.strip_lo, -6.0 * beta);
      double hi = std::min(lhs.strip_hi, beta);  // Gamma(1-z/beta) pole
      double in = 0.05 * (hi - lo);
      rep.max_rel_identity3 = grid_max_rel(
          lo + in, hi - in, [&](cplx z) { return lhs(z); },
          [&](cplx z) {
            return std::exp(lsc3 * z + log_gamma(1.0 - z / beta));
          });
    }
  }

  {
    // W_{S_phi}(u) u = W_phi(u), Euler route against the closed route, both
    // on the pinned affine case and on this pair's ascending factor.
    BernsteinFunction a11 = BernsteinFunction::affine(1.0, 1.0);
    BernsteinFunction sa = s_transform(a11, true);
    double l1 = std::exp(log_w_phi_euler(sa, cplx(2.5)).real()) * 2.5;
    double r1v = std::exp(log_w_phi(a11, cplx(2.5)).real());
    double res = std::abs(l1 - r1v) / r1v;
    double l2 = std::exp(log_w_phi_euler(tc, cplx(2.5)).real()) * 2.5;
    double r2v = std::exp(log_w_phi(pair.plus, cplx(2.5)).real());
    res = std::max(res, std::abs(l2 - r2v) / r2v);
    rep.w_identity_residual = res;
  }
  return rep;
}

}  // namespace extime

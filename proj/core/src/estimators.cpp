#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "extime/errors.hpp"
#include "extime/monte_carlo.hpp"

namespace extime {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MellinEstimate empirical_mellin(const EmpiricalLaw& emp, cplx z) {
  if (emp.n < 100)
    throw precondition_error("empirical_mellin: need at least 100 samples");
  if (z == cplx(0.0, 0.0)) return {cplx(1.0, 0.0), 0.0};
  cplx sum = 0.0;
  double sum_re2 = 0.0, sum_im2 = 0.0;
  for (double s : emp.samples) {
    cplx v;
    if (s > 0.0) {
      v = std::exp(z * std::log(s));
    } else if (z.real() > 0.0) {
      v = 0.0;
    } else {
      throw precondition_error("empirical_mellin: zero sample with Re z <= 0");
    }
    sum += v;
    sum_re2 += v.real() * v.real();
    sum_im2 += v.imag() * v.imag();
  }
  const double n = (double)emp.n;
  const cplx mean = sum / n;
  const double var_re = std::max(sum_re2 / n - mean.real() * mean.real(), 0.0);
  const double var_im = std::max(sum_im2 / n - mean.imag() * mean.imag(), 0.0);
  return {mean, std::sqrt((var_re + var_im) / n)};
}

double ecdf(const EmpiricalLaw& emp, double t) {
  if (emp.n < 1) throw precondition_error("ecdf: empty sample set");
  const auto it =
      std::upper_bound(emp.samples.begin(), emp.samples.end(), t);
  return (double)(it - emp.samples.begin()) / (double)emp.n;
}

double ks_distance(const EmpiricalLaw& emp,
                   const std::function<double(double)>& cdf) {
  if (emp.n < 1) throw precondition_error("ks_distance: empty sample set");
  const double n = (double)emp.n;
  double d = 0.0;
  for (long long i = 0; i < emp.n; ++i) {
    const double f = cdf(emp.samples[(std::size_t)i]);
    d = std::max(d, std::max(f - (double)i / n, (double)(i + 1) / n - f));
  }
  return d;
}

double ks_distance(const EmpiricalLaw& a, const EmpiricalLaw& b) {
  if (a.n < 1 || b.n < 1)
    throw precondition_error("ks_distance: empty sample set");
  double d = 0.0;
  std::size_t i = 0, j = 0;
  const std::size_t na = a.samples.size(), nb = b.samples.size();
  while (i < na && j < nb) {
    const double v = std::min(a.samples[i], b.samples[j]);
    while (i < na && a.samples[i] <= v) ++i;
    while (j < nb && b.samples[j] <= v) ++j;
    d = std::max(d, std::abs((double)i / (double)na - (double)j / (double)nb));
  }
  return d;
}

TailFit tail_exponent_fit(const EmpiricalLaw& emp, double exponent) {
  if (emp.n < 1000)
    throw precondition_error("tail_exponent_fit: need at least 1000 samples");
  const long long n = emp.n;
  const long long i0 = (long long)(0.9 * (double)n);
  const long long i1 = (long long)(0.999 * (double)n);  // keep survival >= 1e-3
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, plateau = 0.0;
  int m = 0;
  for (long long i = i0; i < i1; ++i) {
    const double x = emp.samples[(std::size_t)i];
    const double surv = 1.0 - (double)(i + 1) / (double)n;
    if (!(x > 0.0) || !(surv > 0.0)) continue;
    const double lx = std::log(x), ly = std::log(surv);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    plateau += std::pow(x, exponent) * surv;
    ++m;
  }
  if (m < 10) throw numeric_error("tail_exponent_fit: degenerate tail window");
  const double denom = (double)m * sxx - sx * sx;
  if (std::abs(denom) < 1e-12 * std::abs(sxx) * (double)m)
    throw numeric_error("tail_exponent_fit: tail window has no spread");
  TailFit fit;
  fit.slope = ((double)m * sxy - sx * sy) / denom;
  fit.plateau = plateau / (double)m;
  fit.t_lo = emp.samples[(std::size_t)i0];
  fit.t_hi = emp.samples[(std::size_t)(i1 - 1)];
  fit.points = m;
  return fit;
}

std::string config_echo(const SimConfig& cfg) {
  std::string s;
  s += "seed=" + std::to_string(cfg.seed) + "\n";
  s += "n_paths=" + std::to_string(cfg.n_paths) + "\n";
  s += "dt=" + fmt(cfg.dt) + "\n";
  s += "horizon=" + fmt(cfg.horizon) + "\n";
  s += "jump_cutoff=" + fmt(cfg.jump_cutoff) + "\n";
  s += "gauss_compensation=" + std::string(cfg.gauss_compensation ? "1" : "0") +
       "\n";
  s += "workers=" + std::to_string(cfg.workers) + "\n";
  return s;
}

std::uint64_t config_hash(const SimConfig& cfg) {
  // FNV-1a over the result-determining fields (workers excluded)
  std::string canon = config_echo(cfg);
  const auto cut = canon.rfind("workers=");
  if (cut != std::string::npos) canon.resize(cut);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void dump_samples_csv(const EmpiricalLaw& emp, const SimConfig& cfg,
                      std::ostream& os) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%016llx",
                (unsigned long long)config_hash(cfg));
  os << "# config_hash=0x" << buf << "\n";
  std::string echo = config_echo(cfg);
  std::size_t pos = 0;
  while (pos < echo.size()) {
    const std::size_t nl = echo.find('\n', pos);
    os << "# " << echo.substr(pos, nl - pos) << "\n";
    pos = nl + 1;
  }
  os << "# extended_paths=" << emp.extended_paths
     << " flagged_paths=" << emp.flagged_paths << "\n";
  os << "sample\n";
  for (double s : emp.samples) os << fmt(s) << "\n";
}

}  // namespace extime

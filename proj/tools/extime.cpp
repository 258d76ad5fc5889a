// extime: model evaluation, density/tail tables, simulation, verification.
//
// Exit codes: 0 success, 1 numeric failure, 2 precondition/membership failure.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "extime/bernstein.hpp"
#include "extime/errors.hpp"
#include "extime/mellin.hpp"
#include "extime/monte_carlo.hpp"
#include "extime/special.hpp"
#include "extime/wphi.hpp"
#include "json.hpp"

namespace {

using namespace extime;
using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- tables

struct Cell {
  bool is_num = true;
  double num = 0.0;
  std::string str;

  Cell(double v) : num(v) {}
  Cell(const std::string& s) : is_num(false), str(s) {}
  Cell(const char* s) : is_num(false), str(s) {}
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void emit_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << csv_quote(t.columns[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "");
      if (row[i].is_num)
        os << fmt17(row[i].num);
      else
        os << csv_quote(row[i].str);
    }
    os << "\n";
  }
}

void emit_json(const Table& t, std::ostream& os) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
      if (row[i].is_num)
        obj[t.columns[i]] = row[i].num;
      else
        obj[t.columns[i]] = row[i].str;
    }
    arr.push_back(obj);
  }
  os << arr.dump(2) << "\n";
}

// ------------------------------------------------------------- run spec

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;  // 0 = command default
  std::string scale = "linear";

  bool set() const { return count > 0; }

  std::vector<double> build() const {
    if (count < 1) throw precondition_error("grid: count must be >= 1");
    if (scale != "linear" && scale != "log")
      throw precondition_error("grid: scale must be linear or log");
    std::vector<double> g;
    if (count == 1) {
      g.push_back(start);
      return g;
    }
    if (scale == "log") {
      if (start <= 0.0 || stop <= 0.0)
        throw precondition_error("grid: log scale needs positive endpoints");
      double l0 = std::log(start), l1 = std::log(stop);
      for (int i = 0; i < count; ++i)
        g.push_back(std::exp(l0 + (l1 - l0) * i / (count - 1)));
    } else {
      for (int i = 0; i < count; ++i)
        g.push_back(start + (stop - start) * i / (count - 1));
    }
    return g;
  }

  GridSpec or_default(double a, double b, int n,
                      const std::string& sc = "linear") const {
    if (set()) return *this;
    return GridSpec{a, b, n, sc};
  }
};

struct Common {
  std::string model_file;
  std::vector<std::string> sets;
  std::map<std::string, double> sym;  // --alpha etc.
  std::string output = "-";
  std::string format = "csv";
  GridSpec grid;
};

ModelSpec load_model(const Common& c) {
  std::map<std::string, std::string> overrides;
  for (const auto& kv : c.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw precondition_error("--set expects key=value, got '" + kv + "'");
    overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  for (const auto& [k, v] : c.sym) overrides[k] = fmt17(v);
  if (!c.model_file.empty())
    return parse_model_spec_file(c.model_file, overrides);
  std::istringstream empty;
  return parse_model_spec(empty, overrides);
}

struct OutStream {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit OutStream(const std::string& path) {
    if (path != "-") {
      file.open(path);
      if (!file) throw precondition_error("cannot open output '" + path + "'");
      os = &file;
    }
  }
};

void emit(const Table& t, const Common& c) {
  OutStream out(c.output);
  if (c.format == "json")
    emit_json(t, *out.os);
  else if (c.format == "csv")
    emit_csv(t, *out.os);
  else
    throw precondition_error("format must be csv or json");
}

// ----------------------------------------------------------- law lookup

const BernsteinFunction& entry_phi(const ModelSpec& m, const char* law) {
  if (!m.phi)
    throw precondition_error(std::string("law '") + law +
                             "' needs a subordinator entry or time change");
  return *m.phi;
}

const WienerHopfPair& need_pair(const ModelSpec& m, const char* law) {
  if (!m.pair)
    throw precondition_error(std::string("law '") + law +
                             "' needs a process pair model");
  return *m.pair;
}

MellinLaw law_for(const ModelSpec& m, const std::string& law, double t) {
  if (law == "T") return mellin_markov_T(need_pair(m, "T"), m.x);
  if (law == "extinction") {
    need_pair(m, "extinction");
    return mellin_extinction(m);
  }
  if (law == "lambda") return mellin_lambda(entry_phi(m, "lambda"), m.beta, t);
  if (law == "chi") return mellin_chi_entry(entry_phi(m, "chi"), m.beta);
  if (law == "frechet") {
    const BernsteinFunction& phi = m.pair ? m.pair->minus : entry_phi(m, "frechet");
    return mellin_gen_frechet(phi, m.beta);
  }
  throw precondition_error("unknown law '" + law + "'");
}

// Midsection of the analyticity strip, clamped to sane magnitudes.
std::pair<double, double> strip_window(const MellinLaw& law) {
  double lo = std::max(law.strip_lo, -2.0);
  double hi = std::min(law.strip_hi, 3.0);
  double w = hi - lo;
  return {lo + 0.15 * w, hi - 0.15 * w};
}

// ------------------------------------------------------------- commands

void cmd_phi(const Common& c) {
  ModelSpec m = load_model(c);
  GridSpec g = c.grid.or_default(0.0, 5.0, 21);
  Table t;
  t.columns = {"u"};
  std::vector<const BernsteinFunction*> fns;
  if (m.pair) {
    t.columns.push_back("phi_minus");
    t.columns.push_back("phi_plus");
    fns.push_back(&m.pair->minus);
    fns.push_back(&m.pair->plus);
    if (m.phi) {
      t.columns.push_back("time_change");
      fns.push_back(&*m.phi);
    }
  } else {
    t.columns.push_back("phi");
    fns.push_back(&*m.phi);
  }
  for (double u : g.build()) {
    std::vector<Cell> row{Cell(u)};
    for (const auto* f : fns) row.push_back(Cell(f->eval(u)));
    t.rows.push_back(std::move(row));
  }
  emit(t, c);
}

void cmd_mellin(const Common& c, const std::string& law_name, double t_at,
                double im) {
  ModelSpec m = load_model(c);
  MellinLaw law = law_for(m, law_name, t_at);
  GridSpec g = c.grid;
  if (!g.set()) {
    auto [a, b] = strip_window(law);
    g = GridSpec{a, b, 11, "linear"};
  }
  Table t;
  t.columns = {"re_z", "im_z", "re_M", "im_M"};
  for (double re : g.build()) {
    cplx v = law(cplx(re, im));
    t.rows.push_back({Cell(re), Cell(im), Cell(v.real()), Cell(v.imag())});
  }
  emit(t, c);
}

void guard_density_class(const ModelSpec& m, const std::string& law_name) {
  if (!m.pair) return;
  SmoothnessIndex idx =
      law_name == "T"
          ? smoothness_index(*m.pair, BernsteinFunction::identity(), 1.0)
          : smoothness_index(m);
  if (!idx.density_available)
    throw precondition_error(
        "density-not-available: smoothness index N = " + fmt17(idx.n) +
        " (density of class C^(ceil(N)-2) needs N > 1)");
}

void cmd_density(const Common& c, const std::string& law_name,
                 const std::string& method, double t_at) {
  ModelSpec m = load_model(c);
  if (law_name == "T" || law_name == "extinction")
    guard_density_class(m, law_name);
  MellinLaw law = law_for(m, law_name, t_at);
  GridSpec g = c.grid.or_default(0.5, 10.0, 20);

  const bool series_possible = law_name == "frechet";
  const BernsteinFunction* phi =
      series_possible ? (m.pair ? &m.pair->minus : &*m.phi) : nullptr;
  if (method == "series" && !series_possible)
    throw precondition_error("series density is only available for law "
                             "'frechet'; use mellin_barnes");

  Table tb;
  tb.columns = {"t", "f", "method", "error_estimate"};
  for (double t : g.build()) {
    std::string used = method;
    if (method == "auto") {
      used = series_possible && std::pow(t, -m.beta) < phi->value_at_infinity()
                 ? "series"
                 : "mellin_barnes";
    }
    double f, err;
    if (used == "series") {
      f = density_series_gen_frechet(*phi, m.beta, t);
      err = 1e-15 * std::abs(f);  // term cutoff is at machine precision
    } else {
      MbOptions opt;
      MbDiagnostics diag;
      f = density_mellin_barnes(law, t, opt, &diag);
      err = diag.remainder_bound + std::abs(diag.step_delta);
    }
    tb.rows.push_back({Cell(t), Cell(f), Cell(used), Cell(err)});
  }
  emit(tb, c);
}

void cmd_tail(const Common& c) {
  ModelSpec m = load_model(c);
  GridSpec g = c.grid.or_default(10.0, 1000.0, 13, "log");
  double exponent, limit;
  MellinLaw law = [&] {
    if (m.pair) {
      PersistenceReport rep = persistence_report(m);
      exponent = rep.tail_exponent;
      limit = rep.limit_constant;
      return mellin_extinction(m);
    }
    // generalized Frechet tail: dominant pole at z = beta, so
    // t^beta P(F > t) -> Gamma(2) / W_phi(2) = 1 / phi(1).
    const BernsteinFunction& phi = entry_phi(m, "tail");
    exponent = m.beta;
    limit = 1.0 / phi.eval(1.0);
    return mellin_gen_frechet(phi, m.beta);
  }();
  Table t;
  t.columns = {"t", "survival", "scaled_survival", "limit_constant"};
  for (double tv : g.build()) {
    double s = survival(law, tv);
    t.rows.push_back(
        {Cell(tv), Cell(s), Cell(std::pow(tv, exponent) * s), Cell(limit)});
  }
  emit(t, c);
}

void cmd_table(const Common& c) {
  ModelSpec m = load_model(c);
  Table t;
  t.columns = {"key", "value"};
  auto put = [&](const std::string& k, Cell v) {
    t.rows.push_back({Cell(k), std::move(v)});
  };
  put("kind", m.kind);
  put("alpha", m.alpha);
  put("beta", m.beta);
  put("x", m.x);
  put("time_change", m.time_change.empty() ? "identity" : m.time_change);

  auto membership =
      [&](const std::string& key,
          BernsteinFunction::Membership (BernsteinFunction::*check)() const,
          const BernsteinFunction& f) {
        try {
          auto m = (f.*check)();
          put(key, m.value ? "yes" : "no: " + m.reason);
        } catch (const precondition_error& e) {
          put(key, std::string("undecidable: ") + e.what());
        }
      };
  auto describe = [&](const std::string& tag, const BernsteinFunction& f) {
    put(tag + ".phi(0)", f.at_zero());
    put(tag + ".phi'(0+)", f.prime_at_zero());
    put(tag + ".phi(inf)", f.value_at_infinity());
    put(tag + ".abscissa_a", f.abscissa_a());
    put(tag + ".abscissa_a*", f.abscissa_astar());
    membership(tag + ".in_B_rho", &BernsteinFunction::in_b_rho, f);
    membership(tag + ".in_B_1", &BernsteinFunction::in_b1, f);
    membership(tag + ".in_B_minus", &BernsteinFunction::in_b_minus, f);
  };
  if (m.pair) {
    describe("phi_minus", m.pair->minus);
    describe("phi_plus", m.pair->plus);
    if (m.phi) describe("time_change", *m.phi);
    SmoothnessIndex idx = m.phi ? smoothness_index(m)
                                : smoothness_index(*m.pair,
                                                   BernsteinFunction::identity(),
                                                   1.0);
    put("smoothness.N", idx.n);
    put("smoothness.density_available", idx.density_available ? "yes" : "no");
    if (idx.density_available)
      put("smoothness.density_class",
          idx.density_class == std::numeric_limits<int>::max()
              ? Cell("inf")
              : Cell((double)idx.density_class));
    try {
      PersistenceReport rep = persistence_report(m);
      put("persistence.c_alpha", rep.c_alpha);
      put("persistence.tail_exponent", rep.tail_exponent);
      put("persistence.limit_constant", rep.limit_constant);
    } catch (const std::exception& e) {
      put("persistence", std::string("unavailable: ") + e.what());
    }
    MellinLaw ext = m.phi ? mellin_extinction(m) : mellin_markov_T(*m.pair, m.x);
    put("strip." + std::string(m.phi ? "extinction" : "T") + ".lo", ext.strip_lo);
    put("strip." + std::string(m.phi ? "extinction" : "T") + ".hi", ext.strip_hi);
  } else {
    describe("phi", *m.phi);
    MellinLaw fre = mellin_gen_frechet(*m.phi, m.beta);
    put("strip.frechet.lo", fre.strip_lo);
    put("strip.frechet.hi", fre.strip_hi);
  }
  emit(t, c);
}

void cmd_simulate(const Common& c, std::string law, const SimConfig& cfg,
                  double t_at, bool path_route) {
  ModelSpec m = load_model(c);
  if (law.empty()) {
    if (m.pair)
      law = m.phi ? "extinction" : "T";
    else if (m.phi && m.phi->kind() == PhiKind::stable_sub)
      law = "lambda";
    else
      throw precondition_error("no default simulation law for this model");
  }
  EmpiricalLaw emp = [&] {
    if (law == "T") return sample_exponential_functional(need_pair(m, "T"), m.x, cfg);
    if (law == "extinction") {
      need_pair(m, "extinction");
      if (!m.phi)
        throw precondition_error("law 'extinction' needs a time change");
      return sample_extinction(m, cfg);
    }
    if (law == "lambda")
      return sample_inverse_subordinator(entry_phi(m, "lambda"), m.beta, t_at,
                                         cfg, path_route);
    if (law == "chi") {
      const BernsteinFunction& phi = entry_phi(m, "chi");
      if (phi.kind() != PhiKind::stable_sub)
        throw precondition_error("law 'chi' sampler needs the stable entry");
      return sample_positive_stable(m.beta, cfg);
    }
    throw precondition_error("unknown simulation law '" + law + "'");
  }();

  OutStream out(c.output);
  if (c.format == "json") {
    json j;
    char hash[20];
    std::snprintf(hash, sizeof(hash), "0x%016llx",
                  (unsigned long long)config_hash(cfg));
    j["law"] = law;
    j["config_hash"] = hash;
    j["seed"] = cfg.seed;
    j["n_paths"] = cfg.n_paths;
    j["dt"] = cfg.dt;
    j["horizon"] = cfg.horizon;
    j["jump_cutoff"] = cfg.jump_cutoff;
    j["gauss_compensation"] = cfg.gauss_compensation;
    j["extended_paths"] = emp.extended_paths;
    j["flagged_paths"] = emp.flagged_paths;
    j["samples"] = emp.samples;
    *out.os << j.dump(2) << "\n";
  } else {
    dump_samples_csv(emp, cfg, *out.os);
  }
}

// --------------------------------------------------------------- verify

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

void check_against(std::vector<Check>& out, const std::string& name,
                   double measured, double tol) {
  out.push_back({name, measured, tol, std::abs(measured) <= tol});
}

void suite_wphi(const ModelSpec& m, std::vector<Check>& out) {
  std::vector<std::pair<std::string, const BernsteinFunction*>> fns;
  if (m.pair) {
    fns.emplace_back("phi_minus", &m.pair->minus);
    fns.emplace_back("phi_plus", &m.pair->plus);
  }
  if (m.phi) fns.emplace_back(m.pair ? "time_change" : "phi", &*m.phi);
  if (fns.empty()) throw precondition_error("model defines no phi to verify");

  const double res[] = {0.5, 1.0, 1.75, 2.5, 3.0};
  const double ims[] = {-5.0, -2.0, 0.0, 2.0, 5.0};
  for (const auto& [tag, f] : fns) {
    double worst = 0.0;
    for (double re : res)
      for (double im : ims)
        worst = std::max(worst, w_phi_residual(*f, cplx(re, im)));
    check_against(out, tag + ": functional equation residual", worst, 1e-8);
    check_against(out, tag + ": W(1) - 1",
                  std::abs(w_phi(*f, cplx(1.0, 0.0)) - 1.0), 1e-12);
    if (f->kind() == PhiKind::identity) {
      double worst_g = 0.0;
      for (double re : res)
        for (double im : ims) {
          cplx z(re, im);
          cplx w = std::exp(log_w_phi_euler(*f, z));
          cplx g = std::exp(log_gamma(z));
          worst_g = std::max(worst_g, std::abs(w - g) / std::abs(g));
        }
      check_against(out, tag + ": Euler product vs Gamma", worst_g, 1e-8);
    }
  }
}

void suite_theorem1(const ModelSpec& m, std::vector<Check>& out) {
  need_pair(m, "theorem1 suite");
  MellinLaw law = m.phi ? mellin_extinction(m) : mellin_markov_T(*m.pair, m.x);

  double lo = std::max(law.strip_lo, -1.5), hi = std::min(law.strip_hi, 1.5);
  double s1 = lo + 0.3 * (hi - lo), s2 = lo + 0.7 * (hi - lo);
  for (double s : {s1, s2}) {
    double direct = law.moment(s);
    double closed = moment_via_density(law, s);
    check_against(out, "moment closure at s=" + fmt17(s),
                  std::abs(closed - direct) / std::abs(direct), 1e-6);
  }

  double prev = 1.0, worst_up = 0.0;
  for (double t : {0.5, 2.0, 10.0, 50.0, 200.0}) {
    double s = survival(law, t);
    worst_up = std::max(worst_up, s - prev);
    prev = s;
  }
  check_against(out, "survival monotone on [0.5, 200]", worst_up, 1e-8);

  PersistenceReport rep = persistence_report(
      *m.pair, m.phi ? *m.phi : BernsteinFunction::identity(),
      m.phi ? m.beta : 1.0, m.x);
  double t = 1000.0;
  double plateau = std::pow(t, rep.tail_exponent) * survival(law, t);
  check_against(out, "tail plateau at t=1e3 vs limit constant",
                plateau / rep.limit_constant - 1.0, 0.15);
}

void suite_theorem3(const ModelSpec& m, std::vector<Check>& out) {
  need_pair(m, "theorem3 suite");
  Theorem3Report rep = verify_theorem3(*m.pair, m.beta, m.x, 20);
  check_against(out, "identity (1): extinction vs scaled Frechet factor",
                rep.max_rel_identity1, 1e-8);
  if (rep.max_rel_identity2)
    check_against(out, "identity (2): reduced-pair route",
                  *rep.max_rel_identity2, 1e-8);
  if (rep.max_rel_identity3)
    check_against(out, "identity (3): Frechet reduction",
                  *rep.max_rel_identity3, 1e-8);
  check_against(out, "W_{S_phi}(u) u = W_phi(u) dual route",
                rep.w_identity_residual, 1e-8);
}

// CLT-valid probe points: 2z must stay inside the strip.  Keeps away from
// the nonpositive integers, where the transform's gamma factors pair up
// poles that do not cancel pointwise.
std::pair<double, double> mc_points(const MellinLaw& law) {
  double hi = std::min(law.strip_hi / 2.0, 2.0);
  double lo = std::max(law.strip_lo / 2.0, -2.0);
  auto nudge = [](double z) {
    double r = std::round(z);
    if (std::abs(z - r) < 0.05) return r + (z >= r ? 0.07 : -0.07);
    return z;
  };
  double z1 = nudge(0.45 * hi);
  double z2 = nudge(lo < 0.0 ? 0.45 * lo : 0.2 * hi);
  return {z1, z2};
}

void mc_moment_checks(std::vector<Check>& out, const std::string& tag,
                      const EmpiricalLaw& emp, const MellinLaw& law,
                      double band) {
  auto [z1, z2] = mc_points(law);
  for (double z : {z1, z2}) {
    MellinEstimate est = empirical_mellin(emp, cplx(z, 0.0));
    double want = law(cplx(z, 0.0)).real();
    Check c;
    c.name = tag + ": moment at z=" + fmt17(z) + " within " + fmt17(band) +
             " s.e.";
    c.measured = std::abs(est.value.real() - want);
    c.tolerance = band * est.se;
    c.pass = c.measured <= c.tolerance;
    out.push_back(c);
  }
}

void suite_mc(const ModelSpec& m, std::vector<Check>& out, long long n) {
  SimConfig cfg;
  cfg.n_paths = n;
  cfg.dt = 0.02;
  cfg.jump_cutoff = 0.01;          // quick-mode event budget
  cfg.gauss_compensation = true;   // compensate the coarser cutoff
  const double band = n >= 100000 ? 3.0 : 4.0;

  if (m.pair) {
    EmpiricalLaw T = sample_exponential_functional(*m.pair, m.x, cfg);
    mc_moment_checks(out, "T", T, mellin_markov_T(*m.pair, m.x), band);

    SimConfig det = cfg;
    det.n_paths = std::min<long long>(n, 2000);
    det.workers = 1;
    EmpiricalLaw a = sample_exponential_functional(*m.pair, m.x, det);
    det.workers = 3;
    EmpiricalLaw b = sample_exponential_functional(*m.pair, m.x, det);
    check_against(out, "T: worker invariance (max |diff|)",
                  [&] {
                    double worst = 0.0;
                    for (std::size_t i = 0; i < a.samples.size(); ++i)
                      worst = std::max(worst,
                                       std::abs(a.samples[i] - b.samples[i]));
                    return worst;
                  }(),
                  0.0);

    if (m.phi) {
      EmpiricalLaw ext = sample_extinction(m, cfg);
      mc_moment_checks(out, "extinction", ext, mellin_extinction(m), band);
    }
  }
  if (m.phi && m.phi->kind() == PhiKind::stable_sub) {
    EmpiricalLaw lam = sample_inverse_subordinator(*m.phi, m.beta, 1.0, cfg);
    MellinLaw law = mellin_lambda(*m.phi, m.beta, 1.0);
    for (double z : {1.0, 2.0}) {
      MellinEstimate est = empirical_mellin(lam, cplx(z, 0.0));
      double want = law(cplx(z, 0.0)).real();
      Check c;
      c.name = "lambda: moment at z=" + fmt17(z);
      c.measured = std::abs(est.value.real() - want);
      c.tolerance = band * est.se;
      c.pass = c.measured <= c.tolerance;
      out.push_back(c);
    }
    SimConfig pc = cfg;
    pc.n_paths = std::min<long long>(n, 5000);
    pc.jump_cutoff = 1e-4;
    EmpiricalLaw exact = sample_inverse_subordinator(*m.phi, m.beta, 1.0, pc);
    EmpiricalLaw path =
        sample_inverse_subordinator(*m.phi, m.beta, 1.0, pc, true);
    check_against(out, "lambda: exact vs path route KS",
                  ks_distance(exact, path), 0.05);
  }
  if (out.empty())
    throw precondition_error("mc suite: model has no simulable law");
}

int cmd_verify(const Common& c, const std::string& suite, long long n) {
  ModelSpec m = load_model(c);
  std::vector<Check> checks;
  if (suite == "wphi")
    suite_wphi(m, checks);
  else if (suite == "theorem1")
    suite_theorem1(m, checks);
  else if (suite == "theorem3")
    suite_theorem3(m, checks);
  else if (suite == "mc")
    suite_mc(m, checks, n);
  else
    throw precondition_error("unknown suite '" + suite + "'");

  bool all = true;
  json rep;
  rep["suite"] = suite;
  rep["model"] = m.kind;
  if (suite == "mc") rep["n"] = n;
  rep["checks"] = json::array();
  for (const auto& ck : checks) {
    all = all && ck.pass;
    rep["checks"].push_back({{"name", ck.name},
                             {"measured", ck.measured},
                             {"tolerance", ck.tolerance},
                             {"pass", ck.pass}});
  }
  rep["pass"] = all;
  OutStream out(c.output);
  *out.os << rep.dump(2) << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extinction times of time-changed self-similar processes"};
  app.require_subcommand(1);

  Common c;
  app.add_option("--model", c.model_file, "model spec file (key=value lines)");
  app.add_option("--set", c.sets, "inline model key=value (repeatable)");
  for (const char* k : {"alpha", "beta", "x", "a", "rho", "b"}) {
    app.add_option_function<double>(
        std::string("--") + k,
        [&c, k](double v) { c.sym[k] = v; },
        std::string("model override: ") + k);
  }
  app.add_option("--output", c.output, "output path, '-' for stdout");
  app.add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--grid-start", c.grid.start, "grid start");
  app.add_option("--grid-stop", c.grid.stop, "grid stop");
  app.add_option("--grid-count", c.grid.count, "grid point count (>= 1)");
  app.add_option("--grid-scale", c.grid.scale, "linear or log")
      ->check(CLI::IsMember({"linear", "log"}));

  auto* sub_phi = app.add_subcommand("phi", "evaluate the model's phi on a grid");
  sub_phi->fallthrough();

  std::string law = "T", method = "auto";
  double t_at = 1.0, im = 0.0;
  auto* sub_mellin =
      app.add_subcommand("mellin", "Mellin transform along Re z grid");
  sub_mellin->fallthrough();
  sub_mellin->add_option("--law", law, "T, lambda, chi, extinction, frechet");
  sub_mellin->add_option("--t", t_at, "time for the lambda law");
  sub_mellin->add_option("--im", im, "imaginary part of z");

  std::string dlaw = "frechet";
  auto* sub_density = app.add_subcommand("density", "density table over t grid");
  sub_density->fallthrough();
  sub_density->add_option("--law", dlaw, "T, lambda, extinction, frechet");
  sub_density->add_option("--method", method, "series, mellin_barnes, auto")
      ->check(CLI::IsMember({"series", "mellin_barnes", "auto"}));
  sub_density->add_option("--t", t_at, "time for the lambda law");

  auto* sub_tail =
      app.add_subcommand("tail", "survival and persistence plateau table");
  sub_tail->fallthrough();

  auto* sub_table = app.add_subcommand("table", "model summary table");
  sub_table->fallthrough();

  std::string slaw;
  SimConfig cfg;
  // The library default cutoff (1e-4) is meant for estimator studies; as an
  // interactive default for infinite-activity pairs it costs ~1000x the
  // events of 1e-2. Dump runs get a coarser default; tighten explicitly.
  cfg.jump_cutoff = 5e-3;
  bool path_route = false, gauss = false;
  auto* sub_sim = app.add_subcommand("simulate", "Monte Carlo sample dump");
  sub_sim->fallthrough();
  sub_sim->add_option("--law", slaw, "T, extinction, lambda, chi");
  sub_sim->add_option("--n", cfg.n_paths, "number of paths");
  sub_sim->add_option("--seed", cfg.seed, "RNG seed");
  sub_sim->add_option("--dt", cfg.dt, "grid step for Gaussian segments");
  sub_sim->add_option("--horizon", cfg.horizon, "time horizon (0 = heuristic)");
  sub_sim->add_option("--cutoff", cfg.jump_cutoff,
                      "small-jump cutoff epsilon (default 5e-3; pair with "
                      "--gauss-compensation when tightening matters)");
  sub_sim->add_flag("--gauss-compensation", gauss,
                    "replace small jumps by matched Gaussian noise");
  sub_sim->add_option("--workers", cfg.workers,
                      "worker threads (0 = EXTIME_WORKERS or hardware)");
  sub_sim->add_option("--t", t_at, "time for the lambda law");
  sub_sim->add_flag("--path-route", path_route,
                    "lambda: first-passage of the sampled path");

  std::string suite = "wphi";
  long long vn = 10000;
  auto* sub_verify = app.add_subcommand("verify", "run a verification suite");
  sub_verify->fallthrough();
  sub_verify->add_option("--suite", suite, "wphi, theorem1, theorem3, mc");
  sub_verify->add_option("--n", vn, "mc suite path count (then band = 4 s.e. "
                                    "below 1e5, 3 s.e. at 1e5 and above)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sub_phi->parsed()) cmd_phi(c);
    if (sub_mellin->parsed()) cmd_mellin(c, law, t_at, im);
    if (sub_density->parsed()) cmd_density(c, dlaw, method, t_at);
    if (sub_tail->parsed()) cmd_tail(c);
    if (sub_table->parsed()) cmd_table(c);
    if (sub_sim->parsed()) {
      cfg.gauss_compensation = gauss;
      cmd_simulate(c, slaw, cfg, t_at, path_route);
    }
    if (sub_verify->parsed()) return cmd_verify(c, suite, vn);
  } catch (const precondition_error& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numeric: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

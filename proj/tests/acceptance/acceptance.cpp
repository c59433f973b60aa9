// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance --cli PATH --work DIR [--only N]
//
// Criteria that name a command run the real executable; the rest go through
// the C interface. Every tolerance and runtime limit is fixed below.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "blob/blob.h"
#include "json.hpp"

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = 3.14159265358979323846;
constexpr double kD1Printed = 0.650245952951;         // p = 1 optimum
constexpr double kDiskD = 128.0 / 45.0 / 5.568327996831708;  // 128/45 pi^(-3/2)
constexpr double kPrintedCircleD = 0.1915596;

std::string g_cli;
fs::path g_work;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED{" << what << "}";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<void(Outcome&)> run;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int run_cli(const std::string& args, const std::string& tag) {
  std::string log = (g_work / (tag + ".log")).string();
  std::string cmd = "'" + g_cli + "' " + args + " > '" + log + "' 2>&1";
  int st = std::system(cmd.c_str());
  if (st == -1 || !WIFEXITED(st)) return -1;
  return WEXITSTATUS(st);
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("missing report " + p.string());
  return json::parse(in);
}

std::vector<std::pair<double, double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    auto c = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, c)), std::stod(line.substr(c + 1)));
  }
  return rows;
}

void ok_or_throw(blob_status s, const char* what) {
  if (s != BLOB_OK) throw std::runtime_error(std::string(what) + ": " + blob_last_error());
}

struct CurveRef {
  blob_curve* c = nullptr;
  CurveRef() = default;
  explicit CurveRef(blob_curve* p) : c(p) {}
  CurveRef(const CurveRef&) = delete;
  CurveRef& operator=(const CurveRef&) = delete;
  CurveRef(CurveRef&& o) noexcept : c(o.c) { o.c = nullptr; }
  ~CurveRef() { blob_curve_free(c); }
  operator const blob_curve*() const { return c; }
};

CurveRef preset(const char* name) {
  blob_curve* c = nullptr;
  ok_or_throw(blob_curve_preset(name, &c), name);
  return CurveRef(c);
}

CurveRef ode_curve(blob_ode_kind kind, blob_ode_summary* summary = nullptr) {
  blob_ode_solution* s = nullptr;
  ok_or_throw(blob_solve_ode(kind, nullptr, &s), "ode");
  blob_curve* c = nullptr;
  ok_or_throw(blob_ode_curve(s, &c), "ode curve");
  if (summary) blob_ode_summary_get(s, summary);
  blob_ode_free(s);
  return CurveRef(c);
}

blob_functionals evaluate(const blob_curve* c, double p, blob_method m = BLOB_METHOD_OCTANT, double scale = 1.0,
                          int points = 32) {
  blob_quadrature q = blob_quadrature_default();
  q.points_per_axis = points;
  blob_functionals f{};
  ok_or_throw(blob_evaluate(c, p, &q, m, scale, &f), "evaluate");
  return f;
}

double residual_sup(const blob_curve* c, double p, int nodes = 33) {
  blob_profile* prof = nullptr;
  ok_or_throw(blob_residual_profile(c, p, nodes, BLOB_RESIDUAL_OCTANT, nullptr, &prof), "residual");
  double sup = 0.0;
  blob_profile_norms(prof, &sup, nullptr);
  blob_profile_free(prof);
  return sup;
}

// ---- criteria -------------------------------------------------------------

void c1_closed_form(Outcome& o) {
  auto csv = g_work / "c1_curve.csv";
  int rc = run_cli("solve --p 2 --method closed_form --out '" + csv.string() + "' --report '" +
                       (g_work / "c1_solve.json").string() + "'",
                   "c1_solve");
  o.require(rc == 0, "solve exit " + std::to_string(rc));
  auto rows = read_csv(csv);
  double worst = 0.0;
  for (auto [x, w] : rows) worst = std::fmax(worst, std::fabs(w - std::sqrt(std::fmax(0.0, 2.0 - x * x))));
  o.detail << "rows=" << rows.size() << " max|w-sqrt(2-x^2)|=" << num(worst);
  o.require(rows.size() >= 65 && worst <= 1e-12, "curve is sqrt(2-x^2) to 1e-12");

  auto rep = g_work / "c1_residual.json";
  rc = run_cli("residual --curve '" + csv.string() + "' --p 2 --nodes 33 --threshold 1e-6 --report '" + rep.string() +
                   "'",
               "c1_residual");
  o.require(rc == 0, "residual exit " + std::to_string(rc));
  json r = read_json(rep);
  double sup = r["residual_sup"].get<double>();
  o.detail << " residual_sup=" << num(sup) << " nodes=" << r["solver"]["profile"].size();
  o.require(r["solver"]["profile"].size() == 33, "33 t-nodes");
  o.require(sup <= 1e-6, "sup <= 1e-6");
}

void c2_circle_mc(Outcome& o) {
  auto rep = g_work / "c2_mc.json";
  int rc = run_cli("mc --preset circle --p 2 --samples 10000000 --seed 20240601 --report '" + rep.string() + "'", "c2_mc");
  o.require(rc == 0, "mc exit " + std::to_string(rc));
  json r = read_json(rep);
  double d_mc = r["d"].get<double>();
  double se = r["error_estimate"].get<double>();
  double d_q = r["solver"]["quadrature_d"].get<double>();
  double z = std::fabs(d_mc - d_q) / se;
  o.detail << "D_quad=" << d_q << " D_mc=" << d_mc << " se=" << num(se) << " |z|=" << num(z);
  o.require(r["solver"]["samples"].get<std::uint64_t>() == 10000000ULL, "1e7 samples");
  o.require(z <= 3.0, "agree within 3 SE");
  o.require(std::fabs(d_q - kDiskD) <= 1e-3 && std::fabs(d_mc - kDiskD) <= 1e-3, "both within 1e-3 of 128/45 pi^-3/2");
  bool disputed = r.contains("disputed_reference") &&
                  std::fabs(r["disputed_reference"]["printed_value"].get<double>() - kPrintedCircleD) < 1e-12;
  o.detail << " disputed_recorded=" << (disputed ? "yes" : "no");
  o.require(disputed, "printed 0.1915596 recorded as disputed");
}

void c3_p1(Outcome& o) {
  double d[2] = {0, 0};
  int grids[2] = {256, 512};
  for (int i = 0; i < 2; ++i) {
    std::string tag = "c3_grid" + std::to_string(grids[i]);
    auto csv = g_work / (tag + ".csv");
    auto rep = g_work / (tag + ".json");
    int rc = run_cli("solve --p 1 --method ode --grid " + std::to_string(grids[i]) + " --out '" + csv.string() +
                         "' --report '" + rep.string() + "'",
                     tag);
    o.require(rc == 0, tag + " exit " + std::to_string(rc));
    d[i] = read_json(rep)["d"].get<double>();
  }
  auto rep = g_work / "c3_reduced.json";
  int rc = run_cli("residual --curve '" + (g_work / "c3_grid256.csv").string() +
                       "' --p 1 --form reduced --nodes 33 --threshold 1e-4 --report '" + rep.string() + "'",
                   "c3_reduced");
  double sup = read_json(rep)["residual_sup"].get<double>();
  o.detail << "D=" << d[0] << " |D-0.650245952951|=" << num(std::fabs(d[0] - kD1Printed))
           << " reduced_residual_sup=" << num(sup) << " grid_change=" << num(std::fabs(d[0] - d[1]));
  o.require(std::fabs(d[0] - kD1Printed) <= 1e-4, "D within 1e-4");
  o.require(rc == 0 && sup <= 1e-4, "reduced residual <= 1e-4");
  o.require(std::fabs(d[0] - d[1]) < 1e-5, "grid halving changes D < 1e-5");
}

void c4_square(Outcome& o) {
  auto sq = preset("square");
  double d1 = evaluate(sq, 1.0).d;
  double dinf = evaluate(sq, INFINITY).d;
  blob_monte_carlo mc{};
  ok_or_throw(blob_evaluate_monte_carlo(sq, INFINITY, 4000000, 11, &mc), "mc");
  double opt1 = evaluate(ode_curve(BLOB_ODE_P1), 1.0).d;
  double optinf = evaluate(ode_curve(BLOB_ODE_PINF), INFINITY).d;
  o.detail << "D1=" << d1 << " Dinf=" << dinf << " Dinf_mc=" << mc.d << "+-" << num(mc.d_standard_error)
           << " opt1=" << opt1 << " optinf=" << optinf;
  o.require(std::fabs(d1 - 2.0 / 3.0) <= 1e-6, "D(square,1) = 2/3 +- 1e-6");
  o.require(std::fabs(dinf - 7.0 / 15.0) <= 1e-3, "D(square,inf) = 7/15 +- 1e-3");
  o.require(std::fabs(mc.d - 7.0 / 15.0) <= 1e-3 && std::fabs(mc.d - dinf) <= 3.0 * mc.d_standard_error,
            "Monte Carlo confirms 7/15");
  o.require(d1 > opt1 && dinf > optinf, "square exceeds both optima");
}

void c5_pinf(Outcome& o) {
  auto csv = g_work / "c5_pinf.csv";
  auto rep = g_work / "c5_pinf.json";
  int rc = run_cli("solve --p inf --method ode --out '" + csv.string() + "' --report '" + rep.string() + "'", "c5_solve");
  o.require(rc == 0, "solve exit " + std::to_string(rc));
  json r = read_json(rep);
  double dinf = r["d"].get<double>();

  // Boundary conditions f(0) = 0 and f'(1) = 1 on the solver grid.
  blob_ode_solution* s = nullptr;
  ok_or_throw(blob_solve_ode(BLOB_ODE_PINF, nullptr, &s), "ode");
  size_t n = blob_ode_grid(s, nullptr, nullptr, nullptr, 0);
  std::vector<double> t(n), f(n), h(n);
  blob_ode_grid(s, t.data(), f.data(), h.data(), n);
  blob_ode_free(s);
  o.detail << "f(0)=" << f.front() << " f'(1)-1=" << num(h.back() - 1.0);
  o.require(f.front() == 0.0 && std::fabs(h.back() - 1.0) <= 1e-10, "f(0)=0, f'(1)=1");

  blob_curve* raw = nullptr;
  ok_or_throw(blob_curve_read_csv(csv.string().c_str(), BLOB_INTERP_AUTO, &raw), "read");
  CurveRef pinf(raw);
  blob_ode_summary s1{};
  CurveRef p1 = ode_curve(BLOB_ODE_P1, &s1);
  double d1 = evaluate(p1, 1.0).d;
  double dual = d1 / std::sqrt(2.0);
  // The 45-degree rotation of the p = 1 region, rescaled so the diagonal
  // crossing sits at (1, 1).
  double hd = 0.0;
  ok_or_throw(blob_curve_hausdorff(pinf, p1, kPi / 4.0, std::sqrt(2.0) / s1.a, &hd), "hausdorff");
  o.detail << " Dinf=" << dinf << " D1/sqrt2=" << dual << " hausdorff=" << num(hd);
  o.require(std::fabs(dinf - dual) <= 1e-3, "D_inf = D_1/sqrt2 within 1e-3");
  o.require(hd <= 1e-3, "Hausdorff <= 1e-3");
}

struct OptRun {
  double d, initial_residual, final_residual;
};

OptRun optimize(double p, int k, blob_optimization_summary* out = nullptr) {
  blob_optimizer_options opt = blob_optimizer_options_default();
  opt.k = k;
  opt.init = BLOB_INIT_CIRCLE;
  opt.perturbation = 0.05;
  opt.seed = 3;
  blob_optimization* res = nullptr;
  ok_or_throw(blob_optimize(p, &opt, &res), "optimize");
  blob_optimization_summary s{};
  blob_optimization_summary_get(res, &s);
  blob_curve* c = nullptr;
  ok_or_throw(blob_optimization_curve(res, &c), "curve");
  CurveRef curve(c);
  // Independent re-evaluation of the returned curve.
  OptRun r{evaluate(curve, p).d, s.initial_residual_sup, residual_sup(curve, p)};
  // Accepted D values never rise beyond round-off.
  double prev = INFINITY;
  for (size_t i = 0; i < s.iterates; ++i) {
    double d = 0.0;
    ok_or_throw(blob_optimization_iterate(res, i, &d, nullptr), "iterate");
    if (d > prev + 1e-12 * std::fabs(prev)) r.d = NAN;
    prev = std::fmin(prev, d);
  }
  if (out) *out = s;
  blob_optimization_free(res);
  return r;
}

void c6_optimizer(Outcome& o) {
  OptRun r1 = optimize(1.0, 8);
  OptRun r2 = optimize(2.0, 6);
  auto circle = preset("circle");
  double dc3 = evaluate(circle, 3.0).d;
  double rc3 = residual_sup(circle, 3.0);
  OptRun r3 = optimize(3.0, 8);
  double reduction = rc3 / r3.final_residual;
  o.detail << "p1 D=" << r1.d << " p2 D=" << r2.d << " p3 D=" << r3.d << " (circle " << dc3 << ") residual "
           << num(rc3) << "->" << num(r3.final_residual) << " (x" << num(reduction) << ")";
  o.require(std::fabs(r1.d - kD1Printed) <= 1e-3, "p=1 D within 1e-3");
  o.require(std::fabs(r2.d - kDiskD) <= 1e-3, "p=2 D within 1e-3");
  o.require(r3.d < dc3, "p=3 improves on the circle");
  o.require(reduction >= 100.0, "p=3 residual reduced >= 100x");
}

// Analytic bump centred near c that leaves h'(0), h(1) and h'(1) untouched.
double bump(double x, double c, double r) {
  double u = (x - c) / r;
  return x * x * (1.0 - x) * (1.0 - x) * std::exp(-u * u);
}

CurveRef circle_with_bump(double c, double r, double eps) {
  const int n = 129;
  std::vector<double> x(n), h(n);
  for (int j = 0; j < n; ++j) {
    x[j] = 0.5 * (1.0 - std::cos(kPi * j / (n - 1)));
    h[j] = std::sqrt(2.0 - x[j] * x[j]) + eps * bump(x[j], c, r);
  }
  h.back() = 1.0;
  blob_curve* out = nullptr;
  ok_or_throw(blob_curve_from_samples(x.data(), h.data(), n, BLOB_INTERP_CHEBYSHEV, &out), "bumped curve");
  return CurveRef(out);
}

// Composite Simpson; the bump is smooth and vanishes at both ends.
double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
  double h = (hi - lo) / panels, s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

void c7_properties(Outcome& o) {
  const char* names[] = {"circle", "diamond", "square"};
  const double ps[] = {1.0, 2.0, 3.0, INFINITY};

  double scale_drift = 0.0, form_gap = 0.0;
  for (const char* name : names) {
    auto c = preset(name);
    for (double p : ps) {
      blob_functionals base = evaluate(c, p);
      for (double lambda : {0.5, 2.0}) {
        double d = evaluate(c, p, BLOB_METHOD_OCTANT, lambda).d;
        scale_drift = std::fmax(scale_drift, std::fabs(d - base.d) / base.d);
      }
      double mf = evaluate(c, p, BLOB_METHOD_FULL).m;
      form_gap = std::fmax(form_gap, std::fabs(mf - base.m) / base.m);
    }
  }
  o.detail << "scale_drift=" << num(scale_drift) << " full_vs_octant=" << num(form_gap);
  o.require(scale_drift <= 1e-8, "scale invariance 1e-8");
  o.require(form_gap <= 1e-6, "m_full = m_octant 1e-6");

  // Bumps at three locations; dA/dh = 8 and dM/dh against central differences.
  const double r = 0.15, eps = 1e-3;
  double area_err = 0.0, dm_err = 0.0;
  auto circle = preset("circle");
  for (double c : {0.3, 0.5, 0.7}) {
    auto up = circle_with_bump(c, r, eps);
    auto dn = circle_with_bump(c, r, -eps);
    double bump_mass = simpson([&](double x) { return bump(x, c, r); }, 0.0, 1.0, 2000);
    double fd_area = (evaluate(up, 2.0).area - evaluate(dn, 2.0).area) / (2.0 * eps);
    area_err = std::fmax(area_err, std::fabs(fd_area / bump_mass - blob_da_dh()) / blob_da_dh());
    for (double p : {1.0, 2.0, 3.0, double(INFINITY)}) {
      double mp = evaluate(up, p, BLOB_METHOD_OCTANT, 1.0, 64).m;
      double mm = evaluate(dn, p, BLOB_METHOD_OCTANT, 1.0, 64).m;
      double fd = (mp - mm) / (2.0 * eps);
      double analytic = simpson(
          [&](double t) {
            double b = bump(t, c, r);
            if (b == 0.0) return 0.0;
            double v = 0.0;
            ok_or_throw(blob_dm_dh(circle, t, p, nullptr, &v), "dm_dh");
            return v * b;
          },
          0.0, 1.0, 400);
      dm_err = std::fmax(dm_err, std::fabs(fd - analytic) / std::fabs(analytic));
    }
  }
  o.detail << " dA/dh_err=" << num(area_err) << " dm_dh_vs_fd=" << num(dm_err);
  o.require(area_err <= 1e-6, "dA/dh = 8 within 1e-6");
  o.require(dm_err <= 1e-4, "dm_dh vs finite differences within 1e-4");

  // M(1) >= M(2) >= M(inf) on every test curve.
  std::vector<CurveRef> curves;
  for (const char* name : names) curves.push_back(preset(name));
  curves.push_back(ode_curve(BLOB_ODE_P1));
  curves.push_back(ode_curve(BLOB_ODE_PINF));
  bool ordered = true;
  for (const auto& c : curves) {
    double m1 = evaluate(c, 1.0).m, m2 = evaluate(c, 2.0).m, mi = evaluate(c, INFINITY).m;
    ordered = ordered && m1 >= m2 && m2 >= mi;
  }
  o.detail << " monotone_in_p=" << (ordered ? "yes" : "no") << " (" << curves.size() << " curves)";
  o.require(ordered, "M(1) >= M(2) >= M(inf)");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      g_cli = argv[++i];
    } else if (a == "--work" && i + 1 < argc) {
      g_work = argv[++i];
    } else if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance --cli PATH --work DIR [--only N]\n";
      return 64;
    }
  }
  if (g_cli.empty() || g_work.empty()) {
    std::cerr << "usage: acceptance --cli PATH --work DIR [--only N]\n";
    return 64;
  }
  fs::create_directories(g_work);

  const std::vector<Criterion> criteria = {
      {1, "p=2 closed form and residual", 5.0, c1_closed_form},
      {2, "circle D at p=2, quadrature vs Monte Carlo", 120.0, c2_circle_mc},
      {3, "p=1 optimum by ODE", 120.0, c3_p1},
      {4, "square baselines", 120.0, c4_square},
      {5, "p=inf optimum and rotation duality", 120.0, c5_pinf},
      {6, "general-p optimizer", 900.0, c6_optimizer},
      {7, "property suite", 600.0, c7_properties},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    Outcome o;
    o.detail.precision(12);
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " EXCEPTION{" << e.what() << "}";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail << " FAILED{runtime limit}";
    }
    std::printf("%s criterion %d: %s | %s | %.1f s (limit %.0f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.str().c_str(), secs, c.limit_s);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

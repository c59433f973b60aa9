#include "core/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "core/error.hpp"
#include "core/functionals.hpp"
#include "core/parallel.hpp"
#include "core/quadrature.hpp"
#include "core/special_solvers.hpp"
#include "core/variational.hpp"

namespace blob {
namespace {

constexpr int kPanelPoints = 12;
constexpr double kDNoise = 1e-12;

double q_value(const std::vector<double>& c, double u) {
  // Clenshaw on T_j(2u - 1).
  double z = 2.0 * u - 1.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) {
    double b0 = 2.0 * z * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return z * b1 - b2 + c[0];
}

double squash(double u, double q) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u / (u + (1.0 - u) * std::exp(-q));
}

using Vec = std::vector<double>;

struct Objective {
  PNorm p;
  int points;
  int* counter;

  double operator()(const Vec& c) const {
    ++*counter;
    try {
      QuadratureSpec q;
      q.points_per_axis = points;
      return d_value(CurveParameterization(c).curve(), p, q).d_value;
    } catch (const InvalidCurve&) {
      return std::numeric_limits<double>::infinity();
    }
  }
};

// Nelder-Mead with dimension-adapted coefficients. Returns the best vertex.
Vec nelder_mead(const Objective& f, Vec x0, double step, int max_evals, double ftol, int& used, double& fbest) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 0.5 / dn, delta = 1.0 - 1.0 / dn;
  std::vector<Vec> v(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) v[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(v[i]);
  used = static_cast<int>(n + 1);
  std::vector<std::size_t> idx(n + 1);

  while (used < max_evals) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];
    if (std::fabs(fv[worst] - fv[best]) <= ftol * std::fabs(fv[best])) break;

    Vec centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += v[idx[i]][j] / dn;
    auto along = [&](double coef) {
      Vec x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + coef * (v[worst][j] - centroid[j]);
      return x;
    };
    Vec xr = along(-alpha);
    double fr = f(xr);
    ++used;
    if (fr < fv[best]) {
      Vec xe = along(-alpha * beta);
      double fe = f(xe);
      ++used;
      if (fe < fr) {
        v[worst] = xe;
        fv[worst] = fe;
      } else {
        v[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      v[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    bool outside = fr < fv[worst];
    Vec xc = along(outside ? -alpha * gamma : gamma);
    double fc = f(xc);
    ++used;
    if (fc < (outside ? fr : fv[worst])) {
      v[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      std::size_t k = idx[i];
      for (std::size_t j = 0; j < n; ++j) v[k][j] = v[best][j] + delta * (v[k][j] - v[best][j]);
      fv[k] = f(v[k]);
      ++used;
    }
  }
  std::size_t b = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  fbest = fv[b];
  return v[b];
}

struct Gradient {
  double d = 0.0;
  Vec g;
};

// dD/dc_j = A^(-5/2) int_0^1 (dm_dh(t) - 20 M / A) dh(t)/dc_j dt.
Gradient d_gradient(const Vec& c, const PNorm& p, int points) {
  CurveParameterization cp(c);
  OctantCurve h = cp.curve();
  QuadratureSpec q;
  q.points_per_axis = points;
  auto rep = d_value(h, p, q);
  const double shift = 20.0 * rep.m_value / rep.area;
  const auto& rule = gauss_legendre(32);
  Vec g(c.size(), 0.0);
  std::vector<Vec> parts(rule.nodes.size());
  parallel_for(rule.nodes.size(), [&](std::size_t i) {
    double t = 0.5 * (rule.nodes[i] + 1.0);
    double w = (dm_dh(h, t, p, q) - shift) * 0.5 * rule.weights[i];
    parts[i] = cp.curve_gradient(t);
    for (double& v : parts[i]) v *= w;
  });
  for (const auto& part : parts)
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += part[j];
  double scale = std::pow(rep.area, -2.5);
  for (double& v : g) v *= scale;
  return {rep.d_value, g};
}

// Gaussian elimination with partial pivoting; a tiny ridge keeps a
// near-singular Jacobian usable.
Vec solve_linear(std::vector<Vec> A, Vec b) {
  const std::size_t n = b.size();
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) diag = std::fmax(diag, std::fabs(A[i][i]));
  for (std::size_t i = 0; i < n; ++i) A[i][i] += 1e-12 * diag;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(A[i][k]) > std::fabs(A[piv][k])) piv = i;
    std::swap(A[k], A[piv]);
    std::swap(b[k], b[piv]);
    if (A[k][k] == 0.0) throw Error(ErrorCode::convergence, "singular Jacobian in the polish step");
    for (std::size_t i = k + 1; i < n; ++i) {
      double m = A[i][k] / A[k][k];
      for (std::size_t j = k; j < n; ++j) A[i][j] -= m * A[k][j];
      b[i] -= m * b[k];
    }
  }
  Vec x(n);
  for (std::size_t k = n; k-- > 0;) {
    double acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= A[k][j] * x[j];
    x[k] = acc / A[k][k];
  }
  return x;
}

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

double residual_sup(const Vec& c, const PNorm& p, int nodes, int points) {
  QuadratureSpec q;
  q.points_per_axis = points;
  return residual_profile(CurveParameterization(c).curve(), p, nodes, ResidualForm::octant, q).sup_norm;
}

Vec initial_coefficients(const PNorm& p, const OptimizerOptions& opt) {
  (void)p;
  switch (opt.init) {
    case OptimizerInit::circle:
      return CurveParameterization::fit(circle_octant(), opt.k).coefficients();
    case OptimizerInit::p1_solution:
      return CurveParameterization::fit(solve_ode(OdeKind::p1).first, opt.k).coefficients();
    case OptimizerInit::coefficients:
      if (static_cast<int>(opt.initial_coefficients.size()) != opt.k) {
        throw Error(ErrorCode::invalid_argument, "initial coefficient count must equal k");
      }
      return opt.initial_coefficients;
  }
  throw Error(ErrorCode::internal, "unknown optimizer init");
}

void kick(Vec& c, double amplitude, std::uint64_t seed) {
  for (std::size_t j = 0; j < c.size(); ++j) c[j] += amplitude * (2.0 * detail::counter_uniform(seed, j) - 1.0);
}

struct RunState {
  Vec best;
  double best_d = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  int polish_steps = 0;
  bool converged = false;
};

RunState single_run(const PNorm& p, const OptimizerOptions& opt, Vec start, OptimizationTrace* trace) {
  RunState st;
  Objective fine{p, opt.fine_points, &st.evaluations};
  // Polish steps may sit a round-off above the best D while still reducing
  // the residual; those are accepted within kDNoise.
  auto record = [&](const Vec& c, double d, bool polish = false) {
    if (d > st.best_d && !(polish && d <= st.best_d + kDNoise * std::fabs(st.best_d))) return;
    st.best = c;
    st.best_d = d;
    if (trace) trace->iterates.push_back({c, d, residual_sup(c, p, opt.residual_nodes, opt.fine_points)});
  };
  record(start, fine(start));

  // Coarse then fine simplex stages, each restarted from its best vertex.
  // The simplex only needs to land in the basin; the polish does the rest.
  Vec x = start;
  int spent = 0;
  bool simplex_converged = true;
  for (int stage = 0; stage < 2; ++stage) {
    int points = stage == 0 ? opt.coarse_points : opt.fine_points;
    int stage_budget = stage == 0 ? (opt.budget * 3) / 5 : opt.budget - spent;
    Objective f{p, points, &st.evaluations};
    double step = 0.1;
    int stage_spent = 0;
    for (int r = 0; r <= opt.restarts && stage_spent < stage_budget; ++r) {
      int used = 0;
      double fx = 0.0;
      x = nelder_mead(f, x, step, stage_budget - stage_spent, 1e-9, used, fx);
      stage_spent += used;
      step *= 0.3;
    }
    if (stage_spent >= stage_budget) simplex_converged = false;
    spent += stage_spent;
    double dx = stage == 1 ? f(x) : fine(x);
    record(x, dx);
  }
  st.converged = simplex_converged;

  // Newton on the stationarity condition dD/dc = 0. The gradient comes from
  // one-dimensional integrals of dm_dh, which are far more accurate than the
  // differences of D the simplex sees near the optimum.
  if (opt.polish_iterations > 0) {
    Vec c = st.best;
    Gradient gr = d_gradient(c, p, opt.fine_points);
    double gnorm = std::sqrt(dot(gr.g, gr.g));
    const std::size_t n = c.size();
    for (int it = 0; it < opt.polish_iterations; ++it) {
      const double h = 1e-4;
      std::vector<Vec> J(n, Vec(n));
      std::vector<Gradient> plus(n), minus(n);
      for (std::size_t j = 0; j < n; ++j) {
        Vec cp = c, cm = c;
        cp[j] += h;
        cm[j] -= h;
        plus[j] = d_gradient(cp, p, opt.fine_points);
        minus[j] = d_gradient(cm, p, opt.fine_points);
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          J[i][j] = 0.25 * ((plus[j].g[i] - minus[j].g[i]) + (plus[i].g[j] - minus[i].g[j])) / h;
      Vec step = solve_linear(J, gr.g);
      for (double& v : step) v = -v;

      bool accepted = false;
      double lambda = 1.0;
      Gradient next;
      Vec trial(n);
      for (int ls = 0; ls < 8; ++ls) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = c[i] + lambda * step[i];
        next = d_gradient(trial, p, opt.fine_points);
        if (std::isfinite(next.d) && std::sqrt(dot(next.g, next.g)) < gnorm &&
            next.d <= gr.d + kDNoise * std::fabs(gr.d)) {
          accepted = true;
          break;
        }
        lambda *= 0.5;
      }
      if (!accepted) {
        st.converged = true;  // nothing left to gain at the quadrature noise floor
        break;
      }
      ++st.polish_steps;
      double next_norm = std::sqrt(dot(next.g, next.g));
      bool stalled = next_norm > 0.5 * gnorm;
      c = trial;
      gr = next;
      gnorm = next_norm;
      record(c, gr.d, true);
      if (stalled || gr.d == 0.0) {
        st.converged = true;
        break;
      }
    }
  }
  return st;
}

}  // namespace

CurveParameterization::CurveParameterization(std::vector<double> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) throw Error(ErrorCode::invalid_argument, "parameterization needs at least one coefficient");
  for (double v : c_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite coefficient");
  }
}

double CurveParameterization::slope_magnitude(double u) const { return squash(u, q_value(c_, u)); }

CurveParameterization CurveParameterization::fit(const OctantCurve& h, int k) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be positive");
  // Interior Chebyshev-Gauss points keep the logit finite.
  const int m = std::max(64, 4 * k);
  std::vector<double> c(k, 0.0);
  for (int i = 0; i < m; ++i) {
    double theta = std::numbers::pi * (i + 0.5) / m;
    double z = std::cos(theta);
    double u = 0.5 * (z + 1.0);
    double s = std::clamp(-h.slope(u), 1e-12, 1.0 - 1e-12);
    double q = std::log(s * (1.0 - u) / (u * (1.0 - s)));
    for (int j = 0; j < k; ++j) c[j] += 2.0 / m * q * std::cos(j * theta);
  }
  c[0] *= 0.5;
  return CurveParameterization(std::move(c));
}

OctantCurve CurveParameterization::curve() const {
  auto x = chebyshev_lobatto(OctantCurve::kDefaultNodes);
  const auto& rule = gauss_legendre(kPanelPoints);
  std::vector<double> h(x.size());
  h.back() = 1.0;
  for (std::size_t i = x.size() - 1; i-- > 0;) {
    double lo = x[i], hi = x[i + 1], half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) acc += rule.weights[g] * slope_magnitude(mid + half * rule.nodes[g]);
    h[i] = h[i + 1] + half * acc;
  }
  return OctantCurve::from_samples(std::move(x), std::move(h), Interpolant::chebyshev, CurveOrigin::solver);
}

std::vector<double> CurveParameterization::curve_gradient(double t) const {
  // d s / d q = s (1 - s); dh(t)/dc_j = int_t^1 s (1 - s) T_j(2u - 1) du.
  const auto& rule = gauss_legendre(24);
  std::vector<double> g(c_.size(), 0.0);
  double half = 0.5 * (1.0 - t), mid = 0.5 * (1.0 + t);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double u = mid + half * rule.nodes[i];
    double s = slope_magnitude(u);
    double w = half * rule.weights[i] * s * (1.0 - s);
    double z = 2.0 * u - 1.0, t0 = 1.0, t1 = z;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      double tj = j == 0 ? t0 : (j == 1 ? t1 : 0.0);
      if (j >= 2) {
        tj = 2.0 * z * t1 - t0;
        t0 = t1;
        t1 = tj;
      }
      g[j] += w * tj;
    }
  }
  return g;
}

OptimizationResult minimize_d(const PNorm& p, const OptimizerOptions& opt) {
  if (opt.k < 2 || opt.k > 16) throw Error(ErrorCode::invalid_argument, "k must lie in [2, 16]");
  if (opt.budget < 1) throw Error(ErrorCode::invalid_argument, "budget must be at least 1");
  if (opt.coarse_points < 4 || opt.fine_points < 4 || opt.residual_nodes < 1 || opt.restarts < 0 ||
      opt.multistart < 0 || !(opt.perturbation >= 0.0) || !(opt.certificate > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "optimizer options out of range");
  }

  Vec start = initial_coefficients(p, opt);
  if (opt.perturbation > 0.0) kick(start, opt.perturbation, opt.seed);

  OptimizationTrace trace;
  RunState st = single_run(p, opt, start, &trace);
  if (!std::isfinite(st.best_d)) throw Error(ErrorCode::internal, "no feasible iterate");
  trace.initial_d = trace.iterates.front().d_value;
  trace.initial_residual_sup = trace.iterates.front().residual_sup;
  trace.evaluations = st.evaluations;
  trace.polish_steps = st.polish_steps;

  for (int m = 0; m < opt.multistart; ++m) {
    Vec other = initial_coefficients(p, opt);
    kick(other, std::max(opt.perturbation, 0.05), opt.seed + 0x9e3779b97f4a7c15ULL * (m + 1));
    RunState alt = single_run(p, opt, other, nullptr);
    trace.multistart_d.push_back(alt.best_d);
    trace.evaluations += alt.evaluations;
  }

  trace.final_d = trace.iterates.back().d_value;
  trace.final_residual_sup = trace.iterates.back().residual_sup;
  trace.certified = trace.final_residual_sup <= opt.certificate;
  if (trace.certified) {
    trace.termination = Termination::converged_residual;
  } else {
    trace.termination = st.converged ? Termination::converged_d : Termination::max_iter;
  }
  CurveParameterization params(st.best);
  return {params.curve(), params, std::move(trace)};
}

}  // namespace blob

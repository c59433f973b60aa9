#include "core/special_solvers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "core/error.hpp"

namespace blob {
namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 2>;  // f, f'

struct DegenerateCoefficient {
  double t;
};

// The coefficient of f'' in the governing equation; must keep its sign.
double coefficient(OdeKind kind, double t, double f, double fp, double F1) {
  if (kind == OdeKind::p1) return t * fp + 2.0 * F1 - 1.0 - f;
  return 4.0 * F1 - t * t + fp * fp - 2.0;
}

double second_derivative(OdeKind kind, double t, double f, double fp, double F1) {
  double c = coefficient(kind, t, f, fp, F1);
  if (!(std::fabs(c) > 1e-10)) throw DegenerateCoefficient{t};
  if (kind == OdeKind::p1) return -f / c;
  return (2.0 * t * fp - 4.0 * f) / c;
}

// Full equation with every term on one side.
double equation(OdeKind kind, double t, double f, double fp, double fpp, double F1) {
  if (kind == OdeKind::p1) return t * fp * fpp + (2.0 * F1 - 1.0) * fpp + f - fpp * f;
  return 4.0 * F1 * fpp - t * t * fpp - 2.0 * t * fp + 4.0 * f + fpp * fp * fp - 2.0 * fpp;
}

struct Trajectory {
  bool valid = false;
  std::vector<State> states;  // at the requested times
};

Trajectory shoot(OdeKind kind, double a, double F1, const std::vector<double>& times, double tol) {
  Trajectory out;
  State x{0.0, a};
  auto rhs = [&](const State& y, State& dy, double t) {
    dy[0] = y[1];
    dy[1] = second_derivative(kind, t, y[0], y[1], F1);
  };
  auto obs = [&](const State& y, double) { out.states.push_back(y); };
  try {
    auto stepper = ode::make_controlled(tol * 1e-2, tol * 1e-2, ode::runge_kutta_dopri5<State>());
    ode::integrate_times(stepper, rhs, x, times.begin(), times.end(), 1e-3, obs);
    out.valid = out.states.size() == times.size();
  } catch (const DegenerateCoefficient&) {
    out.valid = false;
  }
  return out;
}

struct ShotResult {
  double a;
  Trajectory traj;
};

// Secant on a so that f'(1) = 1. Invalid trajectories pull the step back
// toward the last valid slope.
ShotResult solve_slope(OdeKind kind, double a0, double F1, const std::vector<double>& times, double tol,
                       int& shots) {
  auto miss = [&](const Trajectory& tr) { return tr.states.back()[1] - 1.0; };
  double a_prev = a0;
  Trajectory t_prev = shoot(kind, a_prev, F1, times, tol);
  ++shots;
  if (!t_prev.valid) {
    std::ostringstream os;
    os << "shooting from f'(0) = " << a0 << " met a vanishing f'' coefficient";
    throw Error(ErrorCode::convergence, os.str());
  }
  double g_prev = miss(t_prev);
  double a_cur = a0 + (g_prev > 0 ? -0.02 : 0.02);
  for (int it = 0; it < 60; ++it) {
    Trajectory t_cur = shoot(kind, a_cur, F1, times, tol);
    ++shots;
    int shrink = 0;
    while (!t_cur.valid) {
      if (++shrink > 40) throw Error(ErrorCode::convergence, "shooting trajectories stay degenerate");
      a_cur = 0.5 * (a_cur + a_prev);
      t_cur = shoot(kind, a_cur, F1, times, tol);
      ++shots;
    }
    double g_cur = miss(t_cur);
    if (std::fabs(g_cur) < 1e-13 || (std::fabs(g_cur) < 1e-11 && std::fabs(a_cur - a_prev) < 1e-13)) {
      return {a_cur, std::move(t_cur)};
    }
    if (g_cur == g_prev) break;
    double a_next = a_cur - g_cur * (a_cur - a_prev) / (g_cur - g_prev);
    a_prev = a_cur;
    g_prev = g_cur;
    a_cur = a_next;
  }
  std::ostringstream os;
  os << "secant on f'(0) did not meet f'(1) = 1 (F1 = " << F1 << ")";
  throw Error(ErrorCode::convergence, os.str());
}

}  // namespace

OctantCurve solve_p2() {
  return OctantCurve::chebyshev([](double x) { return std::sqrt(2.0 - x * x); }, OctantCurve::kDefaultNodes,
                                CurveOrigin::solver);
}

std::pair<OctantCurve, OdeSolution> solve_ode(OdeKind kind, const OdeOptions& opt) {
  if (!(opt.tol >= 1e-12 && opt.tol < 1e-2)) throw Error(ErrorCode::invalid_argument, "tol must lie in [1e-12, 1e-2)");
  if (opt.grid_size < 8) throw Error(ErrorCode::invalid_argument, "grid_size must be at least 8");
  if (opt.max_sweeps < 1 || !(opt.damping > 0.0 && opt.damping <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "fixed-point settings out of range");
  }

  // Observation times: the report grid plus the interpolation nodes.
  const int n = opt.grid_size;
  auto cheb = chebyshev_lobatto(OctantCurve::kDefaultNodes);
  std::vector<double> times;
  for (int i = 0; i <= n; ++i) times.push_back(static_cast<double>(i) / n);
  times.insert(times.end(), cheb.begin(), cheb.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  OdeSolution sol;
  double F1 = std::numbers::pi / 4.0 + 0.5;
  double a = std::sqrt(2.0);
  ShotResult shot{};
  bool closed = false;
  for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    shot = solve_slope(kind, a, F1, times, opt.tol, sol.shots);
    a = shot.a;
    sol.iterations = sweep;
    double f1_new = shot.traj.states.back()[0];
    double gap = f1_new - F1;
    if (std::fabs(gap) <= opt.tol) {
      closed = true;
      break;
    }
    F1 += opt.damping * gap;
  }
  if (!closed) {
    std::ostringstream os;
    os << "self-consistency on f(1) not reached in " << opt.max_sweeps << " sweeps (F1 = " << F1 << ")";
    throw Error(ErrorCode::convergence, os.str());
  }

  auto state_at = [&](double t) -> const State& {
    auto it = std::lower_bound(times.begin(), times.end(), t);
    return shot.traj.states[static_cast<std::size_t>(it - times.begin())];
  };
  sol.a = a;
  sol.f1 = F1;
  for (int i = 0; i <= n; ++i) {
    double t = static_cast<double>(i) / n;
    const State& s = state_at(t);
    sol.t.push_back(t);
    sol.f_values.push_back(s[0]);
    sol.h_values.push_back(s[1]);
  }
  const State& end = shot.traj.states.back();
  sol.hprime1 = second_derivative(kind, 1.0, end[0], end[1], F1);

  std::vector<double> hv;
  for (double x : cheb) hv.push_back(state_at(x)[1]);
  if (std::fabs(hv.back() - 1.0) > 1e-10) throw Error(ErrorCode::convergence, "f'(1) = 1 not met");
  hv.back() = 1.0;
  auto curve = OctantCurve::from_samples(cheb, hv, Interpolant::chebyshev, CurveOrigin::solver);

  // Unisolated equation, with f'' from the interpolant rather than the
  // integrator, so the check is independent of how f'' was produced.
  for (int i = 0; i <= n; ++i) {
    double t = sol.t[i];
    double r = equation(kind, t, sol.f_values[i], sol.h_values[i], curve.slope(t), F1);
    sol.residual_sup = std::fmax(sol.residual_sup, std::fabs(r));
  }
  return {std::move(curve), std::move(sol)};
}

}  // namespace blob

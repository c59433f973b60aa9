#pragma once

#include <utility>
#include <vector>

#include "core/curve.hpp"

namespace blob {

// Optimal curve for the Euclidean metric: the circle through (1, 1).
OctantCurve solve_p2();

enum class OdeKind { p1, pinf };

struct OdeOptions {
  double tol = 1e-10;   // integrator tolerance and fixed-point stopping threshold
  int grid_size = 256;  // uniform report grid; also caps the integration step at 1/grid_size
  int max_sweeps = 100;
  double damping = 0.5;
};

// f(t) = int_0^t h on a uniform grid of grid_size + 1 points, with f(0) = 0
// and f'(1) = 1.
struct OdeSolution {
  std::vector<double> t;
  std::vector<double> f_values;
  std::vector<double> h_values;
  double a = 0.0;        // f'(0)
  double f1 = 0.0;       // self-consistent f(1)
  double residual_sup = 0.0;  // governing equation, unisolated form, on the grid
  int iterations = 0;         // fixed-point sweeps
  int shots = 0;              // trajectories integrated in total
  double hprime1 = 0.0;       // achieved h'(1); not imposed
};

// p = 1:   t f' f'' + (2 F1 - 1) f'' + f - f'' f = 0
// p = inf: 4 F1 f'' - t^2 f'' - 2 t f' + 4 f + f'' f'^2 - 2 f'' = 0
// with F1 = f(1). Shooting on a = f'(0) inside a damped fixed point on F1.
std::pair<OctantCurve, OdeSolution> solve_ode(OdeKind kind, const OdeOptions& opt = {});

}  // namespace blob

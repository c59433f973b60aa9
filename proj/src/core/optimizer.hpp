#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/curve.hpp"
#include "core/metrics.hpp"

namespace blob {

// Coefficients c_0..c_{k-1} define the slope magnitude
//   s(u) = u / (u + (1 - u) exp(-q(u))),   q(u) = sum c_j T_j(2u - 1),
// and h(x) = 1 + int_x^1 s. Any real vector gives s(0) = 0, s(1) = 1 and
// 0 < s < 1, so every coefficient vector is a valid octant curve.
class CurveParameterization {
 public:
  explicit CurveParameterization(std::vector<double> coefficients);

  // Chebyshev projection of q for an existing curve's slope.
  static CurveParameterization fit(const OctantCurve& h, int k);

  const std::vector<double>& coefficients() const { return c_; }
  int size() const { return static_cast<int>(c_.size()); }
  double slope_magnitude(double u) const;
  OctantCurve curve() const;
  // d h(t) / d c_j for all j.
  std::vector<double> curve_gradient(double t) const;

 private:
  std::vector<double> c_;
};

enum class OptimizerInit { circle, p1_solution, coefficients };
enum class Termination { converged_d, converged_residual, max_iter };

struct OptimizerOptions {
  int k = 8;
  OptimizerInit init = OptimizerInit::circle;
  std::vector<double> initial_coefficients;  // for OptimizerInit::coefficients
  double perturbation = 0.0;  // uniform kick of this amplitude on every coefficient
  std::uint64_t seed = 1;
  int budget = 3000;          // objective evaluations for the simplex stages
  int polish_iterations = 8;  // Newton steps on the analytic gradient; 0 disables
  int restarts = 2;           // simplex restarts per stage
  int multistart = 0;         // extra independent starts from kicked initial points
  int coarse_points = 16;
  int fine_points = 32;
  double d_tolerance = 1e-12; // relative change in D counted as converged
  double certificate = 1e-4;  // residual sup-norm bound
  int residual_nodes = 33;
};

struct TraceEntry {
  std::vector<double> coefficients;
  double d_value = 0.0;
  double residual_sup = 0.0;
};

struct OptimizationTrace {
  std::vector<TraceEntry> iterates;  // D non-increasing
  Termination termination = Termination::max_iter;
  int evaluations = 0;
  int polish_steps = 0;
  double initial_d = 0.0;
  double initial_residual_sup = 0.0;
  double final_d = 0.0;
  double final_residual_sup = 0.0;
  bool certified = false;
  std::vector<double> multistart_d;  // best D from each extra start
};

struct OptimizationResult {
  OctantCurve curve;
  CurveParameterization parameters;
  OptimizationTrace trace;
};

OptimizationResult minimize_d(const PNorm& p, const OptimizerOptions& opt = {});

}  // namespace blob

#pragma once

#include <vector>

#include "core/curve.hpp"
#include "core/functionals.hpp"
#include "core/metrics.hpp"

namespace blob {

// delta M / delta h(t) for t in (0, 1). Equals 16 times the boundary
// potential  int_R ||P(t) - Q||_p dQ  at P(t) = (t, h(t)).
double dm_dh(const OctantCurve& h, double t, const PNorm& p, const QuadratureSpec& q = {});

// delta A / delta h(t); A = 8 int (h - x) is linear in h.
constexpr double da_dh() noexcept { return 8.0; }

// delta D / delta h(t) = (dm_dh - (5/2) (M/A) da_dh) / A^(5/2).
double dd_dh(const OctantCurve& h, double t, const PNorm& p, double area, double m_value,
             const QuadratureSpec& q = {});

// Stationarity residuals. Each vanishes on the optimal curve for its p.
struct ResidualValue {
  double value = 0.0;
  double magnitude = 0.0;  // integral of |integrand|, for scale-free comparison
  double error = 0.0;
};

// Octant form: single integral over x in [0, 1] of the eight-term kernel.
// p = inf uses the max metric.
ResidualValue residual_octant(const OctantCurve& h, double t, const PNorm& p, const QuadratureSpec& q = {});
// Full-boundary form for t in (-a, a); the [1, a] stretch is integrated
// through x = h(s) so the vertical tangents never enter.
ResidualValue residual_full(const FullBoundary& w, double t, const PNorm& p, const QuadratureSpec& q = {});
// Reduced p = 1 condition with I(t) = int_0^t h:
//   I(t) - h'(t) + 2 h'(t) I(1) - h'(t) I(t) + h'(t) h(t) t.
ResidualValue residual_reduced_p1(const OctantCurve& h, double t, const QuadratureSpec& q = {});

enum class ResidualForm { octant, full, reduced_p1 };

struct ResidualProfile {
  std::vector<double> t_nodes;
  std::vector<double> residuals;
  std::vector<double> normalized;  // residual / magnitude per node
  double sup_norm = 0.0;
  double l2_norm = 0.0;            // sqrt(sum r^2 * spacing)
  PNorm p = PNorm::finite(2.0);
  ResidualForm form = ResidualForm::octant;
};

// Uniform interior nodes: i/(n+1) on (0, 1), or -a + 2a i/(n+1) for the full form.
ResidualProfile residual_profile(const OctantCurve& h, const PNorm& p, int nodes, ResidualForm form,
                                 const QuadratureSpec& q = {});

}  // namespace blob

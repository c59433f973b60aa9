#pragma once

#include <cstdint>

#include "core/curve.hpp"
#include "core/metrics.hpp"

namespace blob {

struct QuadratureSpec {
  int points_per_axis = 32;
  bool split_at_kinks = true;
  double relative_tolerance = 1e-6;

  // points_per_axis >= 4, relative_tolerance in (0, 1e-2].
  void validate() const;
};

enum class FunctionalMethod { octant_quadrature, full_quadrature, monte_carlo };

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct FunctionalReport {
  double area = 0.0;
  double m_value = 0.0;
  double d_value = 0.0;
  double error_estimate = 0.0;  // on d_value
  PNorm p = PNorm::finite(2.0);
  FunctionalMethod method = FunctionalMethod::octant_quadrature;
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  double acceptance_rate = 0.0;
};

// `scale` evaluates the functional on the region scaled by that factor in
// both axes (the curve itself stays normalised to b = 1).
double area_octant(const OctantCurve& h, double scale = 1.0);

// Pair-distance integral with the outer point restricted to the octant and
// the [1, a] part of the boundary written through h (no reference to g).
// Escalates 1x, 1.5x, 2x, 3x points_per_axis until successive values agree.
Estimate m_octant(const OctantCurve& h, const PNorm& p, const QuadratureSpec& q = {}, double scale = 1.0);

// Pair-distance integral over the full region as column integrals on
// [-a, a], using reflection symmetry and the h-parameterisation on [1, a].
Estimate m_full(const FullBoundary& w, const PNorm& p, const QuadratureSpec& q = {}, double scale = 1.0);

// A, M and D = M / A^(5/2). `method` picks octant_quadrature or full_quadrature.
FunctionalReport d_value(const OctantCurve& h, const PNorm& p, const QuadratureSpec& q = {},
                         FunctionalMethod method = FunctionalMethod::octant_quadrature, double scale = 1.0);

// Rejection-sampled M = A^2 * E[d(P, Q)] with a counter-keyed generator:
// deterministic for a seed and independent of the worker count.
MonteCarloEstimate monte_carlo_m(const FullBoundary& w, const PNorm& p, std::uint64_t samples,
                                 std::uint64_t seed, double scale = 1.0);

namespace detail {
// Single-resolution evaluations (no escalation).
double m_octant_fixed(const OctantCurve& h, const PNorm& p, int n, bool split, double scale);
double m_full_fixed(const OctantCurve& h, const PNorm& p, int n, bool split, double scale);
// Counter-based uniform in [0, 1).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);
}  // namespace detail

}  // namespace blob

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace blob {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Cached n-point Gauss-Legendre rule.
const GaussRule& gauss_legendre(int n);

// Plain n-point Gauss-Legendre on [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi, int n);

// Sum of n-point rules over the panels cut by `breaks` (sorted or not;
// entries outside (lo, hi) are ignored).
double integrate_panels(const std::function<double(double)>& f, double lo, double hi,
                        std::span<const double> breaks, int n);

// Roots of g on [lo, hi] located by sampling `samples` intervals and bisecting
// every sign change down to `xtol`.
std::vector<double> sign_changes(const std::function<double(double)>& g, double lo, double hi,
                                 int samples = 96, double xtol = 1e-14);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace blob

#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "core/error.hpp"

namespace blob {
namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "Gauss rule needs at least one point");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
  return *slot;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, int n) {
  if (hi == lo) return 0.0;
  const GaussRule& rule = gauss_legendre(n);
  double mid = 0.5 * (lo + hi);
  double half = 0.5 * (hi - lo);
  CompensatedSum sum;
  for (int i = 0; i < n; ++i) sum.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
  return half * sum.value();
}

double integrate_panels(const std::function<double(double)>& f, double lo, double hi,
                        std::span<const double> breaks, int n) {
  std::vector<double> cuts{lo};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 1e-15 * (1.0 + std::fabs(cuts[i]))) continue;
    sum.add(integrate(f, cuts[i], cuts[i + 1], n));
  }
  return sum.value();
}

std::vector<double> sign_changes(const std::function<double(double)>& g, double lo, double hi,
                                 int samples, double xtol) {
  std::vector<double> roots;
  double step = (hi - lo) / samples;
  double xa = lo;
  double ga = g(xa);
  for (int i = 1; i <= samples; ++i) {
    double xb = i == samples ? hi : lo + i * step;
    double gb = g(xb);
    if (ga == 0.0) {
      roots.push_back(xa);
    } else if ((ga < 0.0) != (gb < 0.0) && gb != 0.0) {
      double a = xa, b = xb, fa = ga;
      while (b - a > xtol) {
        double m = 0.5 * (a + b);
        double fm = g(m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    xa = xb;
    ga = gb;
  }
  if (ga == 0.0) roots.push_back(hi);
  return roots;
}

void CompensatedSum::add(double v) noexcept {
  double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

}  // namespace blob

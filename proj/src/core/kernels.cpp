#include "core/kernels.hpp"

#include <array>
#include <cmath>

#include "core/quadrature.hpp"

namespace blob {
namespace {

constexpr int kHeadPoints = 20;
constexpr int kPanelPoints = 16;
constexpr std::array<double, 10> kTauBreaks{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};

// int_{s0}^{s1} (Y - s)^order * (correction-free tail F = s).
double tail(double s0, double s1, double Y, int order) {
  if (order == 0) return 0.5 * (s1 * s1 - s0 * s0);
  auto prim = [Y](double s) { return Y * s * s / 2.0 - s * s * s / 3.0; };
  return prim(s1) - prim(s0);
}

// int_0^Y (Y - s)^order F(X, s) ds for X > 0, Y > 0 and order in {0, 1}.
double numeric(double X, double Y, double p, int order) {
  const GaussRule& head = gauss_legendre(kHeadPoints);
  const GaussRule& panel = gauss_legendre(kPanelPoints);
  auto weight = [&](double s) { return order == 0 ? 1.0 : (Y - s); };

  // s in [0, min(X, Y)], s = X z^2 softens the s^p behaviour at s = 0.
  double sA = std::fmin(X, Y);
  double zmax = std::sqrt(sA / X);
  CompensatedSum sum;
  for (int i = 0; i < kHeadPoints; ++i) {
    double z = 0.5 * zmax * (1.0 + head.nodes[i]);
    double s = X * z * z;
    double f = X * std::exp(std::log1p(std::pow(z * z, p)) / p);
    sum.add(0.5 * zmax * head.weights[i] * weight(s) * f * 2.0 * X * z);
  }
  if (Y <= X) return sum.value();

  // s in [X, Y], s = X e^tau. Past tau_star the correction is below 1e-17.
  double L = std::log(Y / X);
  double tau_star = 40.0 / p;
  double tau_end = std::fmin(L, tau_star);
  for (std::size_t k = 0; k + 1 < kTauBreaks.size(); ++k) {
    double t0 = kTauBreaks[k];
    if (t0 >= tau_end) break;
    double t1 = std::fmin(kTauBreaks[k + 1], tau_end);
    if (k + 2 == kTauBreaks.size()) t1 = tau_end;
    double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
    for (int i = 0; i < kPanelPoints; ++i) {
      double tau = mid + half * panel.nodes[i];
      double s = X * std::exp(tau);
      double f = s * std::exp(std::log1p(std::exp(-p * tau)) / p);
      sum.add(half * panel.weights[i] * weight(s) * f * s);
    }
  }
  if (L > tau_end) sum.add(tail(X * std::exp(tau_end), Y, Y, order));
  return sum.value();
}

}  // namespace

namespace detail {

double lp_primitive_numeric(double X, double Y, double p) {
  double x = std::fabs(X);
  double y = std::fabs(Y);
  double sign = Y < 0.0 ? -1.0 : 1.0;
  if (y == 0.0) return 0.0;
  if (x == 0.0) return sign * 0.5 * y * y;
  return sign * numeric(x, y, p, 0);
}

double lp_second_primitive_numeric(double X, double Y, double p) {
  double x = std::fabs(X);
  double y = std::fabs(Y);
  if (y == 0.0) return 0.0;
  if (x == 0.0) return y * y * y / 6.0;
  return numeric(x, y, p, 1);
}

}  // namespace detail

double lp_primitive(double X, double Y, const PNorm& p) {
  double x = std::fabs(X);
  double y = std::fabs(Y);
  double sign = Y < 0.0 ? -1.0 : 1.0;
  if (y == 0.0) return 0.0;
  if (p.is_infinite()) {
    return sign * (y <= x ? x * y : 0.5 * (x * x + y * y));
  }
  if (p.is(1.0)) return sign * (x * y + 0.5 * y * y);
  if (p.is(2.0)) {
    if (x == 0.0) return sign * 0.5 * y * y;
    double r = std::hypot(x, y);
    return sign * 0.5 * (y * r + x * x * std::asinh(y / x));
  }
  return detail::lp_primitive_numeric(X, Y, p.value());
}

double lp_second_primitive(double X, double Y, const PNorm& p) {
  double x = std::fabs(X);
  double y = std::fabs(Y);
  if (y == 0.0) return 0.0;
  if (p.is_infinite()) {
    if (x >= y) return 0.5 * x * y * y;
    return y * y * y / 6.0 + 0.5 * y * x * x - x * x * x / 6.0;
  }
  if (p.is(1.0)) return 0.5 * x * y * y + y * y * y / 6.0;
  if (p.is(2.0)) {
    if (x == 0.0) return y * y * y / 6.0;
    double r = std::hypot(x, y);
    double r_minus_x = y * y / (r + x);
    double cube_diff = r_minus_x * (r * r + r * x + x * x);
    return 0.5 * y * (y * r + x * x * std::asinh(y / x)) - cube_diff / 3.0;
  }
  return detail::lp_second_primitive_numeric(X, Y, p.value());
}

}  // namespace blob

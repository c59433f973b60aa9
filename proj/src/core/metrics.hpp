#pragma once

#include <compare>
#include <limits>
#include <string>
#include <string_view>

namespace blob {

// Metric exponent p in [1, inf]. Infinity selects the max (Chebyshev) metric.
class PNorm {
 public:
  static PNorm finite(double p);
  static PNorm infinity() { return PNorm(std::numeric_limits<double>::infinity()); }
  // Accepts a decimal number or "inf" / "infinity".
  static PNorm parse(std::string_view text);
  // +inf maps to infinity(); anything else goes through finite().
  static PNorm from_double(double p);

  bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const noexcept { return value_; }
  bool is(double p) const noexcept { return value_ == p; }
  std::string to_string() const;

  friend auto operator<=>(const PNorm&, const PNorm&) = default;

 private:
  explicit PNorm(double p) : value_(p) {}
  double value_;
};

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

// ||(dx, dy)||_p. Large finite p uses the max-factored form so |d|^p never overflows.
double lp_norm(double dx, double dy, const PNorm& p) noexcept;

double lp_distance(const Point2& a, const Point2& b, const PNorm& p) noexcept;

}  // namespace blob

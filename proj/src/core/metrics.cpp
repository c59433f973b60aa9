#include "core/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "core/error.hpp"

namespace blob {

PNorm PNorm::finite(double p) {
  if (!std::isfinite(p)) throw Error(ErrorCode::invalid_argument, "p must be finite here; use PNorm::infinity()");
  if (p < 1.0) throw Error(ErrorCode::invalid_argument, "p must be >= 1 (p < 1 is not a norm)");
  return PNorm(p);
}

PNorm PNorm::from_double(double p) {
  if (p == std::numeric_limits<double>::infinity()) return infinity();
  if (std::isnan(p)) throw Error(ErrorCode::invalid_argument, "p is NaN");
  return finite(p);
}

PNorm PNorm::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") return infinity();
  std::string s(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::invalid_argument, "cannot parse p from '" + s + "'");
  }
  return finite(v);
}

std::string PNorm::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

double lp_norm(double dx, double dy, const PNorm& p) noexcept {
  double a = std::fabs(dx);
  double b = std::fabs(dy);
  double hi = a > b ? a : b;
  double lo = a > b ? b : a;
  if (p.is_infinite() || hi == 0.0) return hi;
  double pv = p.value();
  if (pv == 1.0) return a + b;
  if (pv == 2.0) return std::hypot(a, b);
  double r = lo / hi;
  return hi * std::exp(std::log1p(std::pow(r, pv)) / pv);
}

double lp_distance(const Point2& a, const Point2& b, const PNorm& p) noexcept {
  return lp_norm(a.x1 - b.x1, a.x2 - b.x2, p);
}

}  // namespace blob

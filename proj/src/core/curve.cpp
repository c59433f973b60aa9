#include "core/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "core/error.hpp"

namespace blob {
namespace {

constexpr double kRepresentationTol = 1e-12;
constexpr double kSlopeTol = 1e-6;
constexpr int kCheckGrid = 1024;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double clamp_unit(double x) {
  if (x < -kRepresentationTol || x > 1.0 + kRepresentationTol || std::isnan(x)) {
    throw Error(ErrorCode::domain, "octant curve evaluated outside [0, 1] at x = " + fmt(x));
  }
  return std::clamp(x, 0.0, 1.0);
}

class AnalyticModel final : public detail::CurveModel {
 public:
  AnalyticModel(std::function<double(double)> h, std::function<double(double)> dh)
      : h_(std::move(h)), dh_(std::move(dh)) {}
  double value(double x) const override { return h_(x); }
  double slope(double x) const override { return dh_(x); }

 private:
  std::function<double(double)> h_;
  std::function<double(double)> dh_;
};

class BarycentricModel final : public detail::CurveModel {
 public:
  BarycentricModel(std::vector<double> x, std::vector<double> f, std::vector<double> w)
      : x_(std::move(x)), f_(std::move(f)), w_(std::move(w)) {
    double span = x_.back() - x_.front();
    snap_ = 1e-9 * span / static_cast<double>(x_.size());
  }

  double value(double x) const override {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      double d = x - x_[j];
      if (d == 0.0) return f_[j];
      double c = w_[j] / d;
      num += c * f_[j];
      den += c;
    }
    return num / den;
  }

  double slope(double x) const override {
    for (std::size_t j = 0; j < x_.size(); ++j) {
      if (std::fabs(x - x_[j]) <= snap_) return node_slope(j);
    }
    double r = value(x);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      double d = x - x_[j];
      double c = w_[j] / d;
      num += c * (r - f_[j]) / d;
      den += c;
    }
    return num / den;
  }

 private:
  double node_slope(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      if (j == i) continue;
      s += w_[j] * (f_[i] - f_[j]) / (x_[i] - x_[j]);
    }
    return -s / w_[i];
  }

  std::vector<double> x_, f_, w_;
  double snap_;
};

class MonotoneCubicModel final : public detail::CurveModel {
 public:
  MonotoneCubicModel(std::vector<double> x, std::vector<double> f) : x_(std::move(x)), f_(std::move(f)) {
    std::size_t n = x_.size();
    m_.assign(n, 0.0);
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      h[k] = x_[k + 1] - x_[k];
      delta[k] = (f_[k + 1] - f_[k]) / h[k];
    }
    if (n == 2) {
      m_[0] = m_[1] = delta[0];
      return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      double w1 = 2.0 * h[k] + h[k - 1];
      double w2 = h[k] + 2.0 * h[k - 1];
      m_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    m_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    m_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double value(double x) const override {
    auto [k, t, hk] = locate(x);
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f_[k] + (t3 - 2 * t2 + t) * hk * m_[k] + (-2 * t3 + 3 * t2) * f_[k + 1] +
           (t3 - t2) * hk * m_[k + 1];
  }

  double slope(double x) const override {
    auto [k, t, hk] = locate(x);
    double t2 = t * t;
    return ((6 * t2 - 6 * t) * f_[k] + (6 * t - 6 * t2) * f_[k + 1]) / hk + (3 * t2 - 4 * t + 1) * m_[k] +
           (3 * t2 - 2 * t) * m_[k + 1];
  }

 private:
  static double end_slope(double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::fabs(m) > std::fabs(3.0 * d0)) return 3.0 * d0;
    return m;
  }

  struct Cell {
    std::size_t k;
    double t;
    double h;
  };
  Cell locate(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    k = std::min(k, x_.size() - 2);
    double hk = x_[k + 1] - x_[k];
    return {k, (x - x_[k]) / hk, hk};
  }

  std::vector<double> x_, f_, m_;
};

std::vector<double> chebyshev_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j + 1 == n) w[j] *= 0.5;
  }
  return w;
}

std::vector<double> floater_hormann_weights(const std::vector<double>& x, int d) {
  int n = static_cast<int>(x.size()) - 1;
  std::vector<double> w(x.size(), 0.0);
  for (int k = 0; k <= n; ++k) {
    double sum = 0.0;
    for (int i = std::max(0, k - d); i <= std::min(k, n - d); ++i) {
      double prod = 1.0;
      for (int j = i; j <= i + d; ++j) {
        if (j != k) prod /= (x[k] - x[j]);
      }
      sum += (i % 2 == 0 ? 1.0 : -1.0) * prod;
    }
    w[k] = sum;
  }
  return w;
}

bool is_chebyshev_lobatto(const std::vector<double>& x) {
  if (x.size() < 3) return false;
  auto ref = chebyshev_lobatto(static_cast<int>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::fabs(x[j] - ref[j]) > 1e-13) return false;
  }
  return true;
}

}  // namespace

std::vector<double> chebyshev_lobatto(int n) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "Chebyshev grid needs at least two nodes");
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * j / (n - 1)));
  x.front() = 0.0;
  x.back() = 1.0;
  if (n % 2 == 1) x[n / 2] = 0.5;
  return x;
}

OctantCurve OctantCurve::from_samples(std::vector<double> x, std::vector<double> h, Interpolant kind,
                                      CurveOrigin origin) {
  if (x.size() != h.size()) throw Error(ErrorCode::invalid_argument, "node and value counts differ");
  if (x.size() < 2) throw InvalidCurve("node grid", "at least two nodes spanning [0, 1] are required");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(h[i])) throw InvalidCurve("finite samples", "non-finite value");
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw InvalidCurve("node grid", "nodes must be strictly increasing (at x = " + fmt(x[i]) + ")");
    }
  }
  if (std::fabs(x.front()) > kRepresentationTol || std::fabs(x.back() - 1.0) > kRepresentationTol) {
    throw InvalidCurve("node grid", "nodes must span [0, 1]");
  }
  x.front() = 0.0;
  x.back() = 1.0;
  if (std::fabs(h.back() - 1.0) > kRepresentationTol) {
    throw InvalidCurve("h(1) = 1", "h(1) = " + fmt(h.back()));
  }
  h.back() = 1.0;

  if (kind == Interpolant::analytic) throw Error(ErrorCode::invalid_argument, "samples cannot be analytic");
  bool automatic = kind == Interpolant::automatic;
  if (automatic) kind = is_chebyshev_lobatto(x) ? Interpolant::chebyshev : Interpolant::rational;
  if (kind == Interpolant::chebyshev && !is_chebyshev_lobatto(x)) {
    throw Error(ErrorCode::invalid_argument, "chebyshev interpolant requires Chebyshev-Lobatto nodes");
  }

  auto build = [&](Interpolant k) {
    OctantCurve c;
    c.nodes_ = x;
    c.values_ = h;
    c.kind_ = k;
    c.origin_ = origin;
    switch (k) {
      case Interpolant::chebyshev:
        c.order_ = static_cast<int>(x.size()) - 1;
        c.model_ = std::make_shared<BarycentricModel>(x, h, chebyshev_weights(x.size()));
        c.label_ = "chebyshev";
        break;
      case Interpolant::rational: {
        int d = std::min<int>(6, static_cast<int>(x.size()) - 1);
        c.order_ = d;
        c.model_ = std::make_shared<BarycentricModel>(x, h, floater_hormann_weights(x, d));
        c.label_ = "rational";
        break;
      }
      default:
        c.order_ = 3;
        c.model_ = std::make_shared<MonotoneCubicModel>(x, h);
        c.label_ = "monotone_cubic";
        break;
    }
    c.validate();
    return c;
  };

  if (automatic && kind == Interpolant::rational) {
    try {
      return build(kind);
    } catch (const InvalidCurve& e) {
      // Overshoot of the rational interpolant on rough data: fall back.
      if (e.invariant() != "slope bound" && e.invariant() != "h non-increasing") throw;
      OctantCurve c = build(Interpolant::monotone_cubic);
      c.warnings_.push_back("rational interpolant violated " + e.invariant() + "; using monotone cubic");
      return c;
    }
  }
  return build(kind);
}

OctantCurve OctantCurve::analytic(std::function<double(double)> h, std::function<double(double)> dh,
                                  std::string label, CurveOrigin origin, int listed_nodes) {
  OctantCurve c;
  c.nodes_ = chebyshev_lobatto(listed_nodes);
  c.values_.reserve(c.nodes_.size());
  for (double x : c.nodes_) c.values_.push_back(h(x));
  c.kind_ = Interpolant::analytic;
  c.order_ = 0;
  c.origin_ = origin;
  c.label_ = std::move(label);
  c.model_ = std::make_shared<AnalyticModel>(std::move(h), std::move(dh));
  c.validate();
  return c;
}

OctantCurve OctantCurve::chebyshev(const std::function<double(double)>& h, int n, CurveOrigin origin) {
  auto x = chebyshev_lobatto(n);
  std::vector<double> v;
  v.reserve(x.size());
  for (double xi : x) v.push_back(h(xi));
  return from_samples(std::move(x), std::move(v), Interpolant::chebyshev, origin);
}

double OctantCurve::value(double x) const { return model_->value(clamp_unit(x)); }

double OctantCurve::slope(double x) const { return model_->slope(clamp_unit(x)); }

void OctantCurve::validate() {
  double h1 = model_->value(1.0);
  if (std::fabs(h1 - 1.0) > kRepresentationTol) throw InvalidCurve("h(1) = 1", "h(1) = " + fmt(h1));
  a_ = model_->value(0.0);
  if (!(a_ >= 1.0 - kRepresentationTol)) throw InvalidCurve("a = h(0) >= 1", "h(0) = " + fmt(a_));

  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i > 0 && values_[i] > values_[i - 1] + kRepresentationTol) {
      throw InvalidCurve("h non-increasing", "h rises between x = " + fmt(nodes_[i - 1]) + " and " + fmt(nodes_[i]));
    }
    if (values_[i] < nodes_[i] - kRepresentationTol) {
      throw InvalidCurve("h(x) >= x", "curve dips below the diagonal at x = " + fmt(nodes_[i]));
    }
  }

  std::vector<double> grid;
  grid.reserve(kCheckGrid + 1 + nodes_.size());
  for (int i = 0; i <= kCheckGrid; ++i) grid.push_back(static_cast<double>(i) / kCheckGrid);
  grid.insert(grid.end(), nodes_.begin(), nodes_.end());
  std::sort(grid.begin(), grid.end());
  double prev = a_;
  for (double x : grid) {
    double v = model_->value(x);
    double s = model_->slope(x);
    if (!std::isfinite(v) || !std::isfinite(s)) throw InvalidCurve("finite samples", "non-finite at x = " + fmt(x));
    if (v > prev + 1e-10) throw InvalidCurve("h non-increasing", "interpolant rises near x = " + fmt(x));
    if (s > kSlopeTol || s < -1.0 - kSlopeTol) {
      throw InvalidCurve("slope bound", "-1 <= h'(x) <= 0 fails at x = " + fmt(x) + " (h' = " + fmt(s) + ")");
    }
    if (v < x - 1e-10) throw InvalidCurve("h(x) >= x", "curve dips below the diagonal at x = " + fmt(x));
    prev = v;
  }

  double s0 = model_->slope(0.0);
  double s1 = model_->slope(1.0);
  std::vector<std::string> endpoint;
  if (std::fabs(s0) > kSlopeTol) endpoint.push_back("h'(0) = " + fmt(s0) + " (optimal curves have 0)");
  if (std::fabs(s1 + 1.0) > kSlopeTol) endpoint.push_back("h'(1) = " + fmt(s1) + " (optimal curves have -1)");
  if (!endpoint.empty()) {
    if (origin_ == CurveOrigin::solver) throw InvalidCurve("endpoint slopes", endpoint.front());
    warnings_.insert(warnings_.end(), endpoint.begin(), endpoint.end());
  }
}

double invert_octant(const OctantCurve& h, double y) {
  double a = h.a();
  if (!(y >= 1.0 - kRepresentationTol && y <= a + kRepresentationTol)) {
    throw Error(ErrorCode::domain, "inversion target " + fmt(y) + " outside [1, a = " + fmt(a) + "]");
  }
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (h.value(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = hi;
  double s = h.slope(x);
  if (s < -1e-12) {
    double polished = x - (h.value(x) - y) / s;
    if (polished >= lo - 1e-12 && polished <= hi + 1e-12) x = polished;
  }
  return std::clamp(x, 0.0, 1.0);
}

FullBoundary::FullBoundary(OctantCurve octant) : octant_(std::move(octant)) {}

double FullBoundary::value(double x) const {
  double ax = std::fabs(x);
  double a = octant_.a();
  if (!(ax <= a * (1.0 + 1e-14) + 1e-14)) {
    throw Error(ErrorCode::domain, "|x| = " + fmt(ax) + " outside [0, a = " + fmt(a) + "]");
  }
  if (ax <= 1.0) return octant_.value(ax);
  return invert_octant(octant_, std::min(ax, a));
}

double FullBoundary::slope(double x) const {
  double ax = std::fabs(x);
  double sign = x < 0.0 ? -1.0 : 1.0;
  if (ax <= 1.0) return sign * octant_.slope(ax);
  if (ax >= octant_.a()) throw Error(ErrorCode::domain, "w' is unbounded at |x| = a");
  double s = octant_.slope(invert_octant(octant_, ax));
  if (s == 0.0) throw Error(ErrorCode::domain, "vertical tangent at |x| = " + fmt(ax));
  return sign / s;
}

FullBoundary assemble_full(const OctantCurve& h) { return FullBoundary(h); }

std::vector<Point2> boundary_polygon(const OctantCurve& h, int per_octant) {
  if (per_octant < 2) throw Error(ErrorCode::invalid_argument, "need at least two points per arc");
  // First quadrant from (0, a) to (a, 0): h on [0, 1], then its reflection.
  std::vector<Point2> q;
  for (int i = 0; i < per_octant; ++i) {
    double x = static_cast<double>(i) / per_octant;
    q.push_back({x, h.value(x)});
  }
  for (int i = per_octant; i >= 0; --i) {
    double s = static_cast<double>(i) / per_octant;
    q.push_back({h.value(s), s});
  }
  // Clockwise through the quadrants, dropping the shared axis points.
  std::vector<Point2> poly(q.begin(), q.end());
  for (std::size_t k = q.size() - 1; k-- > 0;) poly.push_back({q[k].x1, -q[k].x2});
  for (std::size_t k = 1; k < q.size(); ++k) poly.push_back({-q[k].x1, -q[k].x2});
  for (std::size_t k = q.size() - 1; k-- > 1;) poly.push_back({-q[k].x1, q[k].x2});
  std::reverse(poly.begin() + 1, poly.end());
  return poly;
}

namespace {

double point_segment(const Point2& p, const Point2& a, const Point2& b) {
  double dx = b.x1 - a.x1, dy = b.x2 - a.x2;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x1 - a.x1) * dx + (p.x2 - a.x2) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x1 - a.x1 - t * dx, p.x2 - a.x2 - t * dy);
}

double directed(const std::vector<Point2>& from, const std::vector<Point2>& to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) best = std::fmin(best, point_segment(p, to[j], to[(j + 1) % to.size()]));
    worst = std::fmax(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  if (a.size() < 2 || b.size() < 2) throw Error(ErrorCode::invalid_argument, "polygons need two vertices");
  return std::fmax(directed(a, b), directed(b, a));
}

std::vector<Point2> rotate_scale(std::vector<Point2> poly, double angle, double scale) {
  double c = std::cos(angle), s = std::sin(angle);
  for (auto& p : poly) p = {scale * (c * p.x1 - s * p.x2), scale * (s * p.x1 + c * p.x2)};
  return poly;
}

OctantCurve circle_octant() {
  return OctantCurve::analytic([](double x) { return std::sqrt(2.0 - x * x); },
                               [](double x) { return -x / std::sqrt(2.0 - x * x); }, "circle");
}

OctantCurve diamond_octant() {
  return OctantCurve::analytic([](double x) { return 2.0 - x; }, [](double) { return -1.0; }, "diamond");
}

OctantCurve square_octant() {
  return OctantCurve::analytic([](double) { return 1.0; }, [](double) { return 0.0; }, "square");
}

}  // namespace blob

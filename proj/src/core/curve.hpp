#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "core/metrics.hpp"

namespace blob {

enum class Interpolant {
  automatic,       // chebyshev on Chebyshev-Lobatto nodes, rational otherwise
  chebyshev,       // barycentric polynomial through Chebyshev-Lobatto nodes
  rational,        // Floater-Hormann barycentric rational
  monotone_cubic,  // Fritsch-Carlson piecewise cubic Hermite
  analytic,        // closed-form h and h'
};

// Solver curves must meet h'(0) = 0 and h'(1) = -1; user curves only get warnings.
enum class CurveOrigin { user, solver };

namespace detail {
class CurveModel {
 public:
  virtual ~CurveModel() = default;
  virtual double value(double x) const = 0;
  virtual double slope(double x) const = 0;
};
}  // namespace detail

// Chebyshev-Lobatto points on [0, 1], ascending, n >= 2.
std::vector<double> chebyshev_lobatto(int n);

// The octant boundary h on [0, 1]: h(0) = a, h(1) = 1, non-increasing,
// -1 <= h' <= 0 and h(x) >= x. Immutable; copies share state.
class OctantCurve {
 public:
  static constexpr int kDefaultNodes = 65;

  static OctantCurve from_samples(std::vector<double> x, std::vector<double> h,
                                  Interpolant kind = Interpolant::automatic,
                                  CurveOrigin origin = CurveOrigin::user);
  // Exact callable pair. Node listing uses Chebyshev-Lobatto points.
  static OctantCurve analytic(std::function<double(double)> h, std::function<double(double)> dh,
                              std::string label, CurveOrigin origin = CurveOrigin::user,
                              int listed_nodes = kDefaultNodes);
  // Samples `h` at n Chebyshev-Lobatto nodes and interpolates spectrally.
  static OctantCurve chebyshev(const std::function<double(double)>& h, int n = kDefaultNodes,
                               CurveOrigin origin = CurveOrigin::user);

  double value(double x) const;
  double slope(double x) const;
  double operator()(double x) const { return value(x); }

  double a() const { return a_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  Interpolant interpolant() const { return kind_; }
  int interpolant_order() const { return order_; }
  CurveOrigin origin() const { return origin_; }
  const std::string& label() const { return label_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  OctantCurve() = default;
  void validate();

  std::shared_ptr<const detail::CurveModel> model_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  Interpolant kind_ = Interpolant::analytic;
  int order_ = 0;
  CurveOrigin origin_ = CurveOrigin::user;
  double a_ = 1.0;
  std::string label_;
  std::vector<std::string> warnings_;
};

// x in [0, 1] with h(x) = y for y in [1, a]. On a flat stretch of h the
// smallest such x is returned.
double invert_octant(const OctantCurve& h, double y);

// The full upper boundary w on [-a, a]: h on [0, 1], g = h^{-1} on [1, a],
// even in x.
class FullBoundary {
 public:
  explicit FullBoundary(OctantCurve octant);

  const OctantCurve& octant() const { return octant_; }
  double a() const { return octant_.a(); }
  double value(double x) const;
  // Not available at |x| = a, where the tangent is vertical.
  double slope(double x) const;

 private:
  OctantCurve octant_;
};

FullBoundary assemble_full(const OctantCurve& h);

// Closed polygon through the whole boundary, counter-clockwise from (0, a),
// with `per_octant` points on each of the eight arcs.
std::vector<Point2> boundary_polygon(const OctantCurve& h, int per_octant = 1024);

// Symmetric Hausdorff distance between two closed polygonal boundaries.
double hausdorff_distance(const std::vector<Point2>& a, const std::vector<Point2>& b);

// Rotates every vertex by `angle` radians about the origin, then scales.
std::vector<Point2> rotate_scale(std::vector<Point2> poly, double angle, double scale);

// Closed-form reference curves.
OctantCurve circle_octant();   // sqrt(2 - x^2)
OctantCurve diamond_octant();  // 2 - x
OctantCurve square_octant();   // 1

}  // namespace blob

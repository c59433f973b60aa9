#include "core/functionals.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "core/error.hpp"
#include "core/kernels.hpp"
#include "core/parallel.hpp"
#include "core/quadrature.hpp"

namespace blob {
namespace {

// A boundary sample: abscissa, column half-height, and measure factor.
struct ColumnPoint {
  double x;
  double w;
  double jac;
};

// Piece 0 walks x over [0, 1] with w = h(x); piece 1 walks the [1, a] part
// through x = h(s), w = s, dx = -h'(s) ds.
ColumnPoint column_point(const OctantCurve& h, int piece, double t, double scale) {
  if (piece == 0) return {scale * t, scale * h.value(t), scale};
  return {scale * h.value(t), scale * t, -scale * h.slope(t)};
}

using Integrand2 = std::function<double(double, double)>;

// int_0^1 int_0^1 f(t1, t2). With split, the square is cut along t1 = t2
// and each triangle is collapsed onto the unit square, which puts the
// diagonal kink on an edge.
double integrate_unit_square(const Integrand2& f, int n, bool split, bool symmetric) {
  const GaussRule& rule = gauss_legendre(n);
  std::vector<double> t(n), wt(n);
  for (int i = 0; i < n; ++i) {
    t[i] = 0.5 * (1.0 + rule.nodes[i]);
    wt[i] = 0.5 * rule.weights[i];
  }
  std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
  if (!split) {
    parallel_for(n, [&](std::size_t i) {
      CompensatedSum s;
      for (int j = 0; j < n; ++j) s.add(wt[j] * f(t[i], t[j]));
      rows[i] = wt[i] * s.value();
    });
  } else {
    parallel_for(n, [&](std::size_t i) {
      double xi = t[i];
      CompensatedSum s;
      for (int j = 0; j < n; ++j) {
        double lower = f(xi, xi * t[j]);
        double upper = symmetric ? lower : f(xi * t[j], xi);
        s.add(wt[j] * (lower + upper));
      }
      rows[i] = wt[i] * xi * s.value();
    });
  }
  CompensatedSum total;
  for (double r : rows) total.add(r);
  return total.value();
}

// int_{y0}^{y1} int_{v0}^{v1} F(X, y - v) dv dy from the second primitive.
double box_pair(double X, double y0, double y1, double v0, double v1, const PNorm& p) {
  return lp_second_primitive(X, y1 - v0, p) - lp_second_primitive(X, y0 - v0, p) -
         lp_second_primitive(X, y1 - v1, p) + lp_second_primitive(X, y0 - v1, p);
}

Estimate escalate(const std::function<double(int)>& at, const QuadratureSpec& q, const char* what) {
  q.validate();
  const std::array<double, 4> ladder{1.0, 1.5, 2.0, 3.0};
  double prev = at(q.points_per_axis);
  double err = 0.0;
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    int n = static_cast<int>(std::lround(ladder[k] * q.points_per_axis));
    double cur = at(n);
    err = std::fabs(cur - prev);
    if (err <= q.relative_tolerance * std::fabs(cur)) return {cur, err};
    prev = cur;
  }
  std::ostringstream os;
  os.precision(6);
  os << what << ": relative tolerance " << q.relative_tolerance << " not reached (best " << prev
     << ", achieved error " << err << ")";
  throw QuadratureError(prev, err, os.str());
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (points_per_axis < 4) throw Error(ErrorCode::invalid_argument, "points_per_axis must be >= 4");
  if (!(relative_tolerance > 0.0 && relative_tolerance <= 1e-2)) {
    throw Error(ErrorCode::invalid_argument, "relative_tolerance must lie in (0, 1e-2]");
  }
}

double area_octant(const OctantCurve& h, double scale) {
  auto f = [&](double x) { return h.value(x) - x; };
  double v;
  if (h.interpolant() == Interpolant::monotone_cubic) {
    v = integrate_panels(f, 0.0, 1.0, h.nodes(), 4);
  } else {
    v = integrate(f, 0.0, 1.0, 96);
  }
  return 8.0 * scale * scale * v;
}

namespace detail {

double m_full_fixed(const OctantCurve& h, const PNorm& p, int n, bool split, double scale) {
  auto pair = [&](int pi, int pj) {
    return [&, pi, pj](double t1, double t2) {
      ColumnPoint P = column_point(h, pi, t1, scale);
      ColumnPoint Q = column_point(h, pj, t2, scale);
      double jac = P.jac * Q.jac;
      if (jac == 0.0) return 0.0;
      double sum = P.w + Q.w, diff = P.w - Q.w;
      double minus = P.x - Q.x, plus = P.x + Q.x;
      double v = lp_second_primitive(minus, sum, p) - lp_second_primitive(minus, diff, p) +
                 lp_second_primitive(plus, sum, p) - lp_second_primitive(plus, diff, p);
      return jac * v;
    };
  };
  double i00 = integrate_unit_square(pair(0, 0), n, split, true);
  double i11 = integrate_unit_square(pair(1, 1), n, split, true);
  double i01 = integrate_unit_square(pair(0, 1), n, false, false);
  // Each column pair stands for a (y, v) box on [-w, w]^2: factor 2 from
  // box_pair symmetry, 2 from x -> -x.
  return 4.0 * (i00 + i11 + 2.0 * i01);
}

double m_octant_fixed(const OctantCurve& h, const PNorm& p, int n, bool split, double scale) {
  // Outer point in the octant x in [0, 1], y in [x, h(x)]; inner point over
  // the quadrant column u with v in [-w(u), w(u)] (the v -> -v images).
  auto inner = [&](int piece) {
    return [&, piece](double x1, double t2) {
      double x = scale * x1;
      double y0 = x, y1 = scale * h.value(x1);
      ColumnPoint Q = column_point(h, piece, t2, scale);
      if (Q.jac == 0.0) return 0.0;
      double v = box_pair(x + Q.x, y0, y1, -Q.w, Q.w, p) + box_pair(x - Q.x, y0, y1, -Q.w, Q.w, p);
      return scale * Q.jac * v;
    };
  };
  double direct = integrate_unit_square(inner(0), n, split, false);
  double through_g = integrate_unit_square(inner(1), n, split, false);
  return 8.0 * (direct + through_g);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = splitmix64(seed ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace detail

Estimate m_octant(const OctantCurve& h, const PNorm& p, const QuadratureSpec& q, double scale) {
  return escalate([&](int n) { return detail::m_octant_fixed(h, p, n, q.split_at_kinks, scale); }, q, "m_octant");
}

Estimate m_full(const FullBoundary& w, const PNorm& p, const QuadratureSpec& q, double scale) {
  return escalate([&](int n) { return detail::m_full_fixed(w.octant(), p, n, q.split_at_kinks, scale); }, q,
                  "m_full");
}

FunctionalReport d_value(const OctantCurve& h, const PNorm& p, const QuadratureSpec& q, FunctionalMethod method,
                         double scale) {
  if (method == FunctionalMethod::monte_carlo) {
    throw Error(ErrorCode::invalid_argument, "d_value computes quadrature reports; use monte_carlo_m");
  }
  FunctionalReport r;
  r.p = p;
  r.method = method;
  r.area = area_octant(h, scale);
  Estimate m = method == FunctionalMethod::octant_quadrature ? m_octant(h, p, q, scale)
                                                             : m_full(FullBoundary(h), p, q, scale);
  r.m_value = m.value;
  double denom = std::pow(r.area, 2.5);
  r.d_value = m.value / denom;
  r.error_estimate = m.error / denom;
  return r;
}

MonteCarloEstimate monte_carlo_m(const FullBoundary& w, const PNorm& p, std::uint64_t samples,
                                 std::uint64_t seed, double scale) {
  if (samples < 1000) throw Error(ErrorCode::invalid_argument, "monte_carlo_m needs at least 1000 samples");
  const OctantCurve& h = w.octant();
  const double half = scale * w.a();
  constexpr std::uint64_t kChunk = 1u << 16;
  constexpr std::uint64_t kMaxAttempts = 1u << 12;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;

  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t attempts = 0;
    bool starved = false;
  };
  std::vector<Partial> partial(chunks);

  auto inside = [&](double x, double y) {
    double ax = std::fabs(x) / scale, ay = std::fabs(y) / scale;
    double lo = std::fmin(ax, ay), hi = std::fmax(ax, ay);
    return lo <= 1.0 && hi <= h.value(lo);
  };

  parallel_for(chunks, [&](std::size_t c) {
    Partial& out = partial[c];
    CompensatedSum s, s2;
    std::uint64_t begin = c * kChunk;
    std::uint64_t end = std::min<std::uint64_t>(samples, begin + kChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      Point2 pts[2];
      for (std::uint64_t stream = 0; stream < 2; ++stream) {
        bool found = false;
        for (std::uint64_t k = 0; k < kMaxAttempts; ++k) {
          std::uint64_t base = ((((i << 1) | stream) << 16) | (k << 1));
          double x = half * (2.0 * detail::counter_uniform(seed, base) - 1.0);
          double y = half * (2.0 * detail::counter_uniform(seed, base | 1u) - 1.0);
          ++out.attempts;
          if (inside(x, y)) {
            pts[stream] = {x, y};
            found = true;
            break;
          }
        }
        if (!found) {
          out.starved = true;
          return;
        }
      }
      double d = lp_distance(pts[0], pts[1], p);
      s.add(d);
      s2.add(d * d);
    }
    out.sum = s.value();
    out.sum_sq = s2.value();
  });

  CompensatedSum sum, sum_sq;
  std::uint64_t attempts = 0;
  bool starved = false;
  for (const auto& part : partial) {
    sum.add(part.sum);
    sum_sq.add(part.sum_sq);
    attempts += part.attempts;
    starved = starved || part.starved;
  }
  double rate = static_cast<double>(2 * samples) / static_cast<double>(attempts);
  if (starved || rate < 0.01) {
    throw Error(ErrorCode::invalid_curve, "Monte Carlo acceptance rate below 1% (degenerate region)");
  }
  double n = static_cast<double>(samples);
  double mean = sum.value() / n;
  double var = std::fmax(0.0, (sum_sq.value() / n - mean * mean) * n / (n - 1.0));
  double area = area_octant(h, scale);
  double a2 = area * area;
  return {a2 * mean, a2 * std::sqrt(var / n), samples, rate};
}

}  // namespace blob

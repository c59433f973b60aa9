#include "core/variational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

#include "core/error.hpp"
#include "core/kernels.hpp"
#include "core/parallel.hpp"
#include "core/quadrature.hpp"

namespace blob {
namespace {

using ArgPairs = std::vector<std::array<double, 2>>;
using PairFn = std::function<void(double, ArgPairs&)>;

// Places where some kernel argument pair (A, B) loses smoothness: A = 0,
// B = 0, and for the max metric |A| = |B|.
std::vector<double> kink_points(const PairFn& pairs, double lo, double hi, const PNorm& p) {
  constexpr int kSamples = 128;
  ArgPairs buf;
  pairs(lo, buf);
  const std::size_t npairs = buf.size();
  const std::size_t ncomp = npairs * (p.is_infinite() ? 3 : 2);
  auto component = [&](const ArgPairs& v, std::size_t c) {
    const auto& ab = v[c % npairs];
    std::size_t kind = c / npairs;
    if (kind == 0) return ab[0];
    if (kind == 1) return ab[1];
    return std::fabs(ab[0]) - std::fabs(ab[1]);
  };

  std::vector<double> xs(kSamples + 1);
  std::vector<std::vector<double>> vals(ncomp, std::vector<double>(kSamples + 1));
  double scale = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    xs[i] = lo + (hi - lo) * i / kSamples;
    pairs(xs[i], buf);
    for (std::size_t c = 0; c < ncomp; ++c) {
      vals[c][i] = component(buf, c);
      scale = std::fmax(scale, std::fabs(vals[c][i]));
    }
  }

  std::vector<double> out;
  for (std::size_t c = 0; c < ncomp; ++c) {
    double peak = 0.0;
    for (double v : vals[c]) peak = std::fmax(peak, std::fabs(v));
    if (peak <= 1e-12 * (1.0 + scale)) continue;  // identically zero: no kink to resolve
    for (int i = 0; i < kSamples; ++i) {
      double fa = vals[c][i], fb = vals[c][i + 1];
      if (fa == 0.0 || (fa < 0.0) == (fb < 0.0)) continue;
      if (fb == 0.0) continue;
      double a = xs[i], b = xs[i + 1];
      while (b - a > 1e-14) {
        double m = 0.5 * (a + b);
        pairs(m, buf);
        double fm = component(buf, c);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.push_back(0.5 * (a + b));
    }
    for (int i = 1; i < kSamples; ++i) {
      if (vals[c][i] == 0.0) out.push_back(xs[i]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double u, double v) { return v - u < 1e-12; }), out.end());
  return out;
}

// Integral of f over [lo, hi] with panels at `breaks`, n and 2n points per
// panel compared. Returns value, integral of |f|, and the difference.
ResidualValue integrate_checked(const std::function<double(double)>& f, double lo, double hi,
                                const std::vector<double>& breaks, const QuadratureSpec& q, const char* what) {
  ResidualValue out;
  int n = q.points_per_axis;
  double coarse = integrate_panels(f, lo, hi, breaks, n);
  for (int level = 0; level < 3; ++level) {
    int m = 2 * n;
    double fine = integrate_panels(f, lo, hi, breaks, m);
    double mag = integrate_panels([&](double x) { return std::fabs(f(x)); }, lo, hi, breaks, m);
    out = {fine, mag, std::fabs(fine - coarse)};
    if (out.error <= q.relative_tolerance * std::fmax(mag, std::fabs(fine)) + 1e-15) return out;
    coarse = fine;
    n = m;
  }
  std::ostringstream os;
  os << what << ": quadrature did not settle (value " << out.value << ", error " << out.error << ")";
  throw QuadratureError(out.value, out.error, os.str());
}

ResidualValue add(const ResidualValue& a, const ResidualValue& b) {
  return {a.value + b.value, a.magnitude + b.magnitude, a.error + b.error};
}

void require_interior(double t, double lo, double hi, const char* what) {
  if (!(t > lo && t < hi)) {
    std::ostringstream os;
    os << what << ": t = " << t << " must lie in (" << lo << ", " << hi << ")";
    throw Error(ErrorCode::domain, os.str());
  }
}

}  // namespace

double dm_dh(const OctantCurve& h, double t, const PNorm& p, const QuadratureSpec& q) {
  q.validate();
  require_interior(t, 0.0, 1.0, "dm_dh");
  const double ht = h.value(t);
  const std::array<double, 2> cs{ht, -ht};

  auto integrand = [&](double x) {
    double hx = h.value(x);
    double hpx = h.slope(x);
    double column = 0.0, through_g = 0.0;
    for (double c : cs) {
      for (double X : {x + t, x - t}) column += lp_primitive(X, hx - c, p) + lp_primitive(X, c, p);
      for (double X : {hx + t, hx - t}) through_g += lp_primitive(X, x - c, p) + lp_primitive(X, c, p);
    }
    return column - hpx * through_g;
  };
  PairFn pairs = [&](double x, ArgPairs& out) {
    double hx = h.value(x);
    out.clear();
    for (double c : cs) {
      for (double X : {x + t, x - t}) {
        out.push_back({X, hx - c});
        out.push_back({X, c});
      }
      for (double X : {hx + t, hx - t}) out.push_back({X, x - c});
    }
  };
  std::vector<double> breaks{t};
  if (q.split_at_kinks) {
    auto k = kink_points(pairs, 0.0, 1.0, p);
    breaks.insert(breaks.end(), k.begin(), k.end());
  }
  return 16.0 * integrate_checked(integrand, 0.0, 1.0, breaks, q, "dm_dh").value;
}

double dd_dh(const OctantCurve& h, double t, const PNorm& p, double area, double m_value,
             const QuadratureSpec& q) {
  double dm = dm_dh(h, t, p, q);
  return (dm - 2.5 * (m_value / area) * da_dh()) / std::pow(area, 2.5);
}

ResidualValue residual_octant(const OctantCurve& h, double t, const PNorm& p, const QuadratureSpec& q) {
  q.validate();
  require_interior(t, 0.0, 1.0, "residual_octant");
  const double ht = h.value(t);
  const double hpt = h.slope(t);
  // The kernel writes (h(t) - x) and (h(x) - t) without absolute values.
  if (ht < 1.0 - 1e-12) throw InvalidCurve("h(t) >= x", "h(t) < 1 in the octant residual");

  auto d = [&](double A, double B) { return lp_norm(A, B, p); };
  auto integrand = [&](double x) {
    double hx = h.value(x);
    double hpx = h.slope(x);
    double pp = hpx * hpt;
    return (hpx + hpt) * d(x - t, hx + ht) + (hpx - hpt) * d(x - t, hx - ht) -
           (hpx + hpt) * d(x + t, hx - ht) - (hpx - hpt) * d(x + t, hx + ht) + (1.0 + pp) * d(ht - x, hx + t) +
           (1.0 - pp) * d(ht + x, hx + t) + (pp - 1.0) * d(ht - x, hx - t) - (1.0 + pp) * d(ht + x, hx - t);
  };
  PairFn pairs = [&](double x, ArgPairs& out) {
    double hx = h.value(x);
    out = {{x - t, hx + ht}, {x - t, hx - ht}, {x + t, hx - ht}, {x + t, hx + ht},
           {ht - x, hx + t}, {ht + x, hx + t}, {ht - x, hx - t}, {ht + x, hx - t}};
  };
  std::vector<double> breaks{t};
  if (q.split_at_kinks) {
    auto k = kink_points(pairs, 0.0, 1.0, p);
    breaks.insert(breaks.end(), k.begin(), k.end());
  }
  return integrate_checked(integrand, 0.0, 1.0, breaks, q, "residual_octant");
}

ResidualValue residual_full(const FullBoundary& w, double t, const PNorm& p, const QuadratureSpec& q) {
  q.validate();
  const OctantCurve& h = w.octant();
  require_interior(t, -w.a(), w.a(), "residual_full");
  const double wt = w.value(t);
  const double wpt = w.slope(t);

  auto G = [&](double x, double wx) { return lp_norm(x - t, wx + wt, p) - lp_norm(x + t, wx - wt, p); };
  // x in [0, 1] and its mirror image.
  auto column = [&](double x) {
    double hx = h.value(x);
    double hpx = h.slope(x);
    return (hpx + wpt) * G(x, hx) + (wpt - hpx) * G(-x, hx);
  };
  // x = h(s) in [1, a] and its mirror image, with dx w'(x) = ds.
  auto through_g = [&](double s) {
    double hs = h.value(s);
    double hps = h.slope(s);
    return (-1.0 - wpt * hps) * G(hs, s) + (1.0 - wpt * hps) * G(-hs, s);
  };
  PairFn column_pairs = [&](double x, ArgPairs& out) {
    double hx = h.value(x);
    out = {{x - t, hx + wt}, {x + t, hx - wt}, {-x - t, hx + wt}, {-x + t, hx - wt}};
  };
  PairFn g_pairs = [&](double s, ArgPairs& out) {
    double hs = h.value(s);
    out = {{hs - t, s + wt}, {hs + t, s - wt}, {-hs - t, s + wt}, {-hs + t, s - wt}};
  };
  std::vector<double> b1{std::fabs(t)}, b2{std::fabs(t), wt};
  if (q.split_at_kinks) {
    auto k1 = kink_points(column_pairs, 0.0, 1.0, p);
    auto k2 = kink_points(g_pairs, 0.0, 1.0, p);
    b1.insert(b1.end(), k1.begin(), k1.end());
    b2.insert(b2.end(), k2.begin(), k2.end());
  }
  auto r1 = integrate_checked(column, 0.0, 1.0, b1, q, "residual_full");
  auto r2 = integrate_checked(through_g, 0.0, 1.0, b2, q, "residual_full");
  return add(r1, r2);
}

ResidualValue residual_reduced_p1(const OctantCurve& h, double t, const QuadratureSpec& q) {
  q.validate();
  require_interior(t, 0.0, 1.0, "residual_reduced_p1");
  auto hf = [&](double x) { return h.value(x); };
  int n = 2 * q.points_per_axis;
  std::vector<double> none;
  std::span<const double> breaks = h.interpolant() == Interpolant::monotone_cubic
                                       ? std::span<const double>(h.nodes())
                                       : std::span<const double>(none);
  int panel_n = h.interpolant() == Interpolant::monotone_cubic ? 4 : n;
  double It = integrate_panels(hf, 0.0, t, breaks, panel_n);
  double I1 = integrate_panels(hf, 0.0, 1.0, breaks, panel_n);
  double hpt = h.slope(t);
  double ht = h.value(t);
  std::array<double, 5> terms{It, -hpt, 2.0 * hpt * I1, -hpt * It, hpt * ht * t};
  ResidualValue r;
  for (double v : terms) {
    r.value += v;
    r.magnitude += std::fabs(v);
  }
  return r;
}

ResidualProfile residual_profile(const OctantCurve& h, const PNorm& p, int nodes, ResidualForm form,
                                 const QuadratureSpec& q) {
  if (nodes < 1) throw Error(ErrorCode::invalid_argument, "residual profile needs at least one node");
  if (form == ResidualForm::reduced_p1 && !p.is(1.0)) {
    throw Error(ErrorCode::invalid_argument, "the reduced residual is the p = 1 condition");
  }
  ResidualProfile prof;
  prof.p = p;
  prof.form = form;
  FullBoundary w(h);
  double lo = form == ResidualForm::full ? -w.a() : 0.0;
  double hi = form == ResidualForm::full ? w.a() : 1.0;
  double spacing = (hi - lo) / (nodes + 1);
  prof.t_nodes.resize(nodes);
  prof.residuals.resize(nodes);
  prof.normalized.resize(nodes);
  for (int i = 0; i < nodes; ++i) prof.t_nodes[i] = lo + spacing * (i + 1);

  parallel_for(static_cast<std::size_t>(nodes), [&](std::size_t i) {
    double t = prof.t_nodes[i];
    ResidualValue r;
    switch (form) {
      case ResidualForm::octant:
        r = residual_octant(h, t, p, q);
        break;
      case ResidualForm::full:
        r = residual_full(w, t, p, q);
        break;
      case ResidualForm::reduced_p1:
        r = residual_reduced_p1(h, t, q);
        break;
    }
    prof.residuals[i] = r.value;
    prof.normalized[i] = r.magnitude > 0.0 ? r.value / r.magnitude : 0.0;
  });
  double ss = 0.0;
  for (double r : prof.residuals) {
    prof.sup_norm = std::fmax(prof.sup_norm, std::fabs(r));
    ss += r * r;
  }
  prof.l2_norm = std::sqrt(ss * spacing);
  return prof;
}

}  // namespace blob

#include <cmath>
#include <numbers>

#include "core/curve.hpp"
#include "core/error.hpp"
#include "core/functionals.hpp"
#include "doctest.h"

using namespace blob;

namespace {
const PNorm P1 = PNorm::finite(1), P2 = PNorm::finite(2), P3 = PNorm::finite(3), PINF = PNorm::infinity();
}

TEST_CASE("areas") {
  CHECK(area_octant(circle_octant()) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-13));
  CHECK(area_octant(square_octant()) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(area_octant(diamond_octant(), 2.0) == doctest::Approx(32.0).epsilon(1e-14));
}

TEST_CASE("circle at p = 2 against the closed form") {
  auto r = d_value(circle_octant(), P2);
  CHECK(r.m_value == doctest::Approx(512.0 * std::sqrt(2.0) * std::numbers::pi / 45.0).epsilon(1e-9));
  CHECK(r.d_value == doctest::Approx(128.0 / 45.0 / std::pow(std::numbers::pi, 1.5)).epsilon(1e-9));
}

TEST_CASE("reference D values") {
  struct Row {
    OctantCurve h;
    PNorm p;
    double d;
  };
  Row rows[] = {
      {square_octant(), P1, 2.0 / 3.0},          {square_octant(), PINF, 7.0 / 15.0},
      {square_octant(), P2, 0.5214054},          {diamond_octant(), P1, 0.6599663},
      {diamond_octant(), PINF, 0.4714045},       {circle_octant(), P1, 0.6504033},
      {circle_octant(), P3, 0.4828726},          {circle_octant(), PINF, 0.4599046},
  };
  for (const auto& row : rows) {
    CAPTURE(row.p.to_string());
    CHECK(d_value(row.h, row.p).d_value == doctest::Approx(row.d).epsilon(2e-7));
  }
}

TEST_CASE("octant and full reductions agree") {
  for (const auto& h : {circle_octant(), diamond_octant(), square_octant()}) {
    for (const auto& p : {P1, P2, P3, PINF}) {
      double a = m_octant(h, p).value;
      double b = m_full(FullBoundary(h), p).value;
      CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
  }
}

TEST_CASE("scaling") {
  auto h = circle_octant();
  double m1 = m_octant(h, P3).value;
  CHECK(m_octant(h, P3, {}, 2.0).value == doctest::Approx(32.0 * m1).epsilon(1e-12));
  CHECK(d_value(h, P3, {}, FunctionalMethod::octant_quadrature, 0.5).d_value ==
        doctest::Approx(d_value(h, P3).d_value).epsilon(1e-12));
}

TEST_CASE("Monte Carlo is deterministic and unbiased") {
  FullBoundary w(square_octant());
  auto a = monte_carlo_m(w, P1, 200000, 7);
  auto b = monte_carlo_m(w, P1, 200000, 7);
  CHECK(a.estimate == b.estimate);
  CHECK(std::fabs(a.estimate - 32.0 * 2.0 / 3.0) < 4.0 * a.standard_error);
  CHECK_THROWS_AS(monte_carlo_m(w, P1, 10, 7), Error);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  q.points_per_axis = 2;
  CHECK_THROWS_AS(d_value(circle_octant(), P2, q), Error);
}

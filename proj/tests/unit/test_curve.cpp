#include <cmath>

#include "core/curve.hpp"
#include "core/error.hpp"
#include "doctest.h"

using namespace blob;

TEST_CASE("preset curves") {
  auto c = circle_octant();
  CHECK(c.a() == doctest::Approx(std::sqrt(2.0)));
  CHECK(c.value(0.6) == doctest::Approx(std::sqrt(2.0 - 0.36)));
  CHECK(c.slope(1.0) == doctest::Approx(-1.0));
  CHECK(diamond_octant().a() == 2.0);
  CHECK(square_octant().slope(0.3) == 0.0);
}

TEST_CASE("spectral interpolation of a smooth curve") {
  auto c = OctantCurve::chebyshev([](double x) { return std::sqrt(2.0 - x * x); });
  for (double x : {0.0, 0.123, 0.5, 0.77, 0.999}) {
    CHECK(c.value(x) == doctest::Approx(std::sqrt(2.0 - x * x)).epsilon(1e-13));
    CHECK(c.slope(x) == doctest::Approx(-x / std::sqrt(2.0 - x * x)).epsilon(1e-10));
  }
  CHECK(c.interpolant() == Interpolant::chebyshev);
}

TEST_CASE("sampled curves validate their invariants") {
  std::vector<double> x{0.0, 0.5, 1.0};
  CHECK_THROWS_AS(OctantCurve::from_samples(x, {1.5, 1.2, 0.9}), InvalidCurve);  // h(1) != 1
  CHECK_THROWS_AS(OctantCurve::from_samples(x, {1.5, 1.6, 1.0}), InvalidCurve);  // increasing
  CHECK_THROWS_AS(OctantCurve::from_samples({0.0, 0.6, 0.5, 1.0}, {1.5, 1.4, 1.3, 1.0}), InvalidCurve);
  CHECK_THROWS_AS(OctantCurve::from_samples({0.2, 0.5, 1.0}, {1.5, 1.2, 1.0}), InvalidCurve);
  auto ok = OctantCurve::from_samples(x, {1.4, 1.3, 1.0}, Interpolant::monotone_cubic);
  CHECK(ok.value(0.25) <= 1.4);
  CHECK_FALSE(ok.warnings().empty());  // endpoint slopes not met
  CHECK_THROWS_AS(ok.value(1.5), Error);
}

TEST_CASE("inversion and the full boundary") {
  auto c = circle_octant();
  CHECK(invert_octant(c, 1.2) == doctest::Approx(std::sqrt(2.0 - 1.44)).epsilon(1e-12));
  CHECK(invert_octant(square_octant(), 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(invert_octant(c, 1.5), Error);
  FullBoundary w(c);
  CHECK(w.value(-1.3) == doctest::Approx(std::sqrt(2.0 - 1.69)).epsilon(1e-12));
  CHECK(w.slope(1.2) == doctest::Approx(-1.2 / std::sqrt(2.0 - 1.44)).epsilon(1e-9));
  CHECK_THROWS_AS(w.value(1.5), Error);
}

#include <cmath>

#include "core/curve.hpp"
#include "core/functionals.hpp"
#include "core/variational.hpp"
#include "doctest.h"

using namespace blob;

TEST_CASE("circle at p = 2: potential is constant along the boundary") {
  auto h = circle_octant();
  PNorm p2 = PNorm::finite(2);
  double m = m_octant(h, p2).value;
  double area = area_octant(h);
  for (double t : {0.1, 0.5, 0.9}) CHECK(dm_dh(h, t, p2) == doctest::Approx(20.0 * m / area).epsilon(1e-9));
  for (double t : {0.2, 0.7}) CHECK(std::fabs(residual_octant(h, t, p2).value) < 1e-10);
}

TEST_CASE("residual forms agree on the octant") {
  auto h = circle_octant();
  FullBoundary w(h);
  for (const auto& p : {PNorm::finite(1), PNorm::finite(3), PNorm::infinity()}) {
    for (double t : {0.25, 0.5, 0.8}) {
      CHECK(residual_octant(h, t, p).value == doctest::Approx(residual_full(w, t, p).value).epsilon(1e-9));
    }
  }
  CHECK(residual_octant(h, 0.5, PNorm::finite(1)).value == doctest::Approx(0.43985907).epsilon(1e-7));
  CHECK(residual_octant(h, 0.5, PNorm::finite(3)).value == doctest::Approx(-0.14023919).epsilon(1e-7));
  CHECK(residual_octant(h, 0.5, PNorm::infinity()).value == doctest::Approx(-0.30888863).epsilon(1e-7));
  CHECK(residual_octant(diamond_octant(), 0.5, PNorm::finite(1)).value == doctest::Approx(-4.0).epsilon(1e-9));
}

TEST_CASE("octant residual is the derivative of the potential") {
  auto h = circle_octant();
  PNorm p3 = PNorm::finite(3);
  double t = 0.4, e = 1e-4;
  double fd = (dm_dh(h, t + e, p3) - dm_dh(h, t - e, p3)) / (2 * e) / 16.0;
  CHECK(residual_octant(h, t, p3).value == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("profiles") {
  auto prof = residual_profile(circle_octant(), PNorm::finite(2), 33, ResidualForm::octant);
  CHECK(prof.t_nodes.size() == 33);
  CHECK(prof.t_nodes[16] == doctest::Approx(0.5));
  CHECK(prof.sup_norm < 1e-10);
  auto full = residual_profile(circle_octant(), PNorm::finite(1), 9, ResidualForm::full);
  CHECK(full.t_nodes.front() < 0.0);
  CHECK(full.sup_norm > 0.1);
  CHECK_THROWS(residual_profile(circle_octant(), PNorm::finite(2), 5, ResidualForm::reduced_p1));
}

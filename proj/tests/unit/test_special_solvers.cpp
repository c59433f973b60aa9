#include <cmath>

#include "core/functionals.hpp"
#include "core/special_solvers.hpp"
#include "core/variational.hpp"
#include "doctest.h"

using namespace blob;

TEST_CASE("p = 2 closed form") {
  auto h = solve_p2();
  CHECK(h.a() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(h.value(1.0) == 1.0);
  CHECK(h.slope(1.0) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("p = 1 ODE") {
  auto [h, sol] = solve_ode(OdeKind::p1);
  CHECK(sol.a == doctest::Approx(1.4631101177283006).epsilon(1e-9));
  CHECK(sol.f1 == doctest::Approx(1.311794482331593).epsilon(1e-9));
  CHECK(sol.f_values.front() == 0.0);
  CHECK(sol.h_values.back() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.hprime1 == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(sol.residual_sup < 1e-6);
  CHECK(sol.iterations < 100);
  CHECK(d_value(h, PNorm::finite(1)).d_value == doctest::Approx(0.650245952951).epsilon(1e-9));
  auto prof = residual_profile(h, PNorm::finite(1), 17, ResidualForm::reduced_p1);
  CHECK(prof.sup_norm < 1e-9);
}

TEST_CASE("p = inf ODE and the rotation duality") {
  auto [h, sol] = solve_ode(OdeKind::pinf);
  CHECK(sol.a == doctest::Approx(2.0 / 1.4631101177283006).epsilon(1e-9));
  CHECK(sol.f1 == doctest::Approx(1.2584414567005133).epsilon(1e-9));
  CHECK(sol.hprime1 == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(d_value(h, PNorm::infinity()).d_value ==
        doctest::Approx(0.650245952951 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("solver option validation") {
  OdeOptions o;
  o.tol = 1e-14;
  CHECK_THROWS(solve_ode(OdeKind::p1, o));
  o = {};
  o.grid_size = 2;
  CHECK_THROWS(solve_ode(OdeKind::p1, o));
}

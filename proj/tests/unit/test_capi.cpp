#include <cmath>
#include <string>

#include "blob/blob.h"
#include "doctest.h"

TEST_CASE("status names and version") {
  CHECK(std::string(blob_status_name(BLOB_OK)) == "ok");
  CHECK(std::string(blob_version()).size() > 0);
}

TEST_CASE("errors map to status codes with detail") {
  blob_curve* c = nullptr;
  CHECK(blob_curve_preset("hexagon", &c) == BLOB_E_INVALID_ARGUMENT);
  CHECK(c == nullptr);
  CHECK(std::string(blob_last_error()).size() > 0);

  double x[] = {0.0, 0.5, 1.0};
  double h[] = {1.5, 1.6, 1.0};
  CHECK(blob_curve_from_samples(x, h, 3, BLOB_INTERP_AUTO, &c) == BLOB_E_INVALID_CURVE);
  CHECK(std::string(blob_last_error_detail()).size() > 0);

  CHECK(blob_curve_read_csv("/nonexistent/curve.csv", BLOB_INTERP_AUTO, &c) == BLOB_E_IO);
  CHECK(blob_curve_preset("circle", nullptr) == BLOB_E_INVALID_ARGUMENT);
}

TEST_CASE("evaluate through the handle interface") {
  blob_curve* c = nullptr;
  REQUIRE(blob_curve_preset("circle", &c) == BLOB_OK);
  blob_functionals f{};
  CHECK(blob_evaluate(c, 0.5, nullptr, BLOB_METHOD_OCTANT, 1.0, &f) == BLOB_E_INVALID_ARGUMENT);
  REQUIRE(blob_evaluate(c, 2.0, nullptr, BLOB_METHOD_OCTANT, 1.0, &f) == BLOB_OK);
  CHECK(f.d == doctest::Approx(128.0 / 45.0 / std::pow(M_PI, 1.5)).epsilon(1e-10));
  CHECK(f.area == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  REQUIRE(blob_evaluate(c, INFINITY, nullptr, BLOB_METHOD_FULL, 2.0, &f) == BLOB_OK);
  CHECK(f.d > 0.0);
  CHECK(blob_da_dh() == 8.0);
  blob_curve_free(c);
  blob_curve_free(nullptr);
}

TEST_CASE("ode handles expose the solver grid") {
  blob_ode_solution* s = nullptr;
  REQUIRE(blob_solve_ode(BLOB_ODE_P1, nullptr, &s) == BLOB_OK);
  blob_ode_summary sum{};
  blob_ode_summary_get(s, &sum);
  CHECK(sum.a == doctest::Approx(1.4631101177283006).epsilon(1e-9));
  size_t n = blob_ode_grid(s, nullptr, nullptr, nullptr, 0);
  CHECK(n == static_cast<size_t>(sum.grid_size) + 1);
  blob_ode_free(s);
}

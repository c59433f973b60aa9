#include <cmath>
#include <vector>

#include "core/error.hpp"
#include "core/kernels.hpp"
#include "core/metrics.hpp"
#include "core/quadrature.hpp"
#include "doctest.h"

using namespace blob;

TEST_CASE("p-norm parsing and limits") {
  CHECK(PNorm::parse("inf").is_infinite());
  CHECK(PNorm::parse("2.5").value() == doctest::Approx(2.5));
  CHECK_THROWS_AS(PNorm::parse("0.5"), Error);
  CHECK_THROWS_AS(PNorm::parse("abc"), Error);
  CHECK_THROWS_AS(PNorm::finite(std::nan("")), Error);
  CHECK(PNorm::infinity().to_string() == "inf");
}

TEST_CASE("lp_norm special cases") {
  CHECK(lp_norm(3, -4, PNorm::finite(1)) == 7.0);
  CHECK(lp_norm(3, -4, PNorm::finite(2)) == doctest::Approx(5.0));
  CHECK(lp_norm(3, -4, PNorm::infinity()) == 4.0);
  CHECK(lp_norm(1, 1, PNorm::finite(3)) == doctest::Approx(std::cbrt(2.0)));
  // Huge p approaches the max norm without overflow.
  CHECK(lp_norm(1e200, 1e200, PNorm::finite(400)) == doctest::Approx(1e200).epsilon(1e-2));
  CHECK(lp_norm(0, 0, PNorm::finite(3)) == 0.0);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  double v = integrate([](double x) { return std::pow(x, 9); }, 0.0, 2.0, 5);
  CHECK(v == doctest::Approx(102.4).epsilon(1e-14));
  double br[] = {0.5};
  double k = integrate_panels([](double x) { return std::fabs(x - 0.5); }, 0.0, 1.0, br, 4);
  CHECK(k == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("numeric primitives match closed forms") {
  for (double p : {1.0, 2.0}) {
    for (double X : {0.0, 0.3, -1.7, 4.0}) {
      for (double Y : {0.0, 0.2, -0.9, 3.5}) {
        PNorm pn = PNorm::finite(p);
        CHECK(detail::lp_primitive_numeric(X, Y, p) == doctest::Approx(lp_primitive(X, Y, pn)).epsilon(1e-12));
        CHECK(detail::lp_second_primitive_numeric(X, Y, p) ==
              doctest::Approx(lp_second_primitive(X, Y, pn)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("general-p primitives against high-precision values") {
  // 30-digit reference values at X = 0.7, Y = 1.9.
  struct Row {
    double p, first, second;
  };
  Row rows[] = {{1.5, 2.56530524032787970, 1.97327438431731341},
                {3.0, 2.17789793211831932, 1.67052880495311470},
                {7.0, 2.06936829089669822, 1.57319356532819400}};
  for (const auto& r : rows) {
    PNorm pn = PNorm::finite(r.p);
    CHECK(lp_primitive(0.7, 1.9, pn) == doctest::Approx(r.first).epsilon(1e-14));
    CHECK(lp_primitive(0.7, -1.9, pn) == doctest::Approx(-r.first).epsilon(1e-14));
    CHECK(lp_second_primitive(-0.7, -1.9, pn) == doctest::Approx(r.second).epsilon(1e-14));
  }
}

TEST_CASE("max-metric primitives") {
  PNorm inf = PNorm::infinity();
  double X = 0.6;
  for (double Y : {0.3, 1.4}) {
    double direct = integrate_panels([&](double s) { return lp_norm(X, s, inf); }, 0.0, Y,
                                     std::vector<double>{X}, 8);
    CHECK(lp_primitive(X, Y, inf) == doctest::Approx(direct).epsilon(1e-13));
  }
}

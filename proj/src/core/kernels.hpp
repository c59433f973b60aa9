#pragma once

#include "core/metrics.hpp"

namespace blob {

// Antiderivatives of the L_p kernel F(X, s) = ||(X, s)||_p along its second
// argument. They turn the inner interval integrals of the pair-distance
// functionals into closed-form corner sums.
//
//   lp_primitive(X, Y)        = int_0^Y F(X, s) ds            (odd in Y)
//   lp_second_primitive(X, Y) = int_0^Y (Y - s) F(X, s) ds    (even in Y)
//
// Both are even in X and homogeneous: degree 2 and 3 respectively.
// p = 1, 2, inf use closed forms; other p use graded Gauss panels.
double lp_primitive(double X, double Y, const PNorm& p);
double lp_second_primitive(double X, double Y, const PNorm& p);

namespace detail {
// The numeric paths, exposed so tests can check them against the closed forms.
double lp_primitive_numeric(double X, double Y, double p);
double lp_second_primitive_numeric(double X, double Y, double p);
}  // namespace detail

}  // namespace blob

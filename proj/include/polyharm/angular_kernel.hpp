// Closed-form angular reduction of Riesz kernels in odd dimension.
//
// For x, y at radii r, s in R^n (n odd), the spherical integral of
// |x - y|^beta reduces with t = cos(theta) to
//
//   kernel(r,s) = |S^(n-2)| * J0,   J0 = int_{-1}^{1} (1-t^2)^m (A - Bt)^(beta/2) dt,
//
// A = r^2 + s^2, B = 2rs, m = (n-3)/2 (an integer). J0 and the first moment
// J1 (with an extra factor t) are evaluated in closed form: a binomial series
// in B/A away from the diagonal, and a tau = 1-t expansion with exact
// endpoint antiderivatives near it. The only rounding is the final floating
// evaluation at the working precision.
#pragma once

#include "polyharm/rational.hpp"
#include "polyharm/real.hpp"

namespace polyharm::riesz {

struct AngularMoments {
    Real j0, j1;
};

// Both moments at once (the Pohozaev kernel needs J1).
AngularMoments angular_moments(const Real& r, const Real& s, const Rational& beta, int n,
                               mpfr_prec_t prec);

// |S^(n-2)| * J0 = int over the unit sphere of |r e1 - s w|^beta dsigma(w).
// Requires beta > -(n-1); (r,s) = (0,0) with beta < 0 is rejected.
Real angular_kernel(const Real& r, const Real& s, const Rational& beta, int n,
                    mpfr_prec_t prec);

} // namespace polyharm::riesz

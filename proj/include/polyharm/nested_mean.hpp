// The triple-nested ball/shell integral identity.
//
// For the normalized solution u (so (-Delta)^N u = -u^-(4N-1)) and
// f = u^-(4N-1), the iterated integral
//
//   g(r) = int_0^r s3^-(2N-2) int_0^s3 s2^(2N-2) int_0^s2 s1^-(2N-2)
//            ( int_{B(x,s1)} f dy ) ds1 ds2 ds3
//
// collapses through the mean-value chain to the closed form
//
//   g(r) = omega_n [ w2(x) - mean_{dB(x,r)} w2 ] - omega_n/(2(2N-1)) w1(x) r^2,
//
// where w2 = (-Delta)^(N-2) u, w1 = (-Delta)^(N-1) u and omega_n is the unit
// sphere area. (For the mirrored equation the chain appears with the opposite
// overall sign; both sides vanish as r -> 0.)
//
// The left side is evaluated by iterated 1-D quadrature: each level is a
// Chebyshev-Lobatto cumulative integral on [0, r], run at two node counts so
// the difference gives a self-estimate; ball masses come from spherical
// means of f. The right side comes from the symbolic ring, so the two routes
// share no machinery past the density itself.
#pragma once

#include "polyharm/potential.hpp"

namespace polyharm::riesz {

struct NestedMeanResult {
    double lhs = 0;          // iterated quadrature
    double rhs = 0;          // closed form
    double abs_diff = 0;
    double rel_diff = 0;     // relative to max(|lhs|, |rhs|, 1e-30)
    double order_error = 0;  // |g_K - g_2K| across the two node counts
    bool pass = false;
};

NestedMeanResult nested_mean_value_check(int N, double x_dist, double r,
                                         const QuadratureConfig& cfg, double tol);

} // namespace polyharm::riesz

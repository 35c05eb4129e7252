// Adaptive 1-D quadrature over MPFR reals.
//
// Panels are integrated with an embedded Gauss-Legendre pair (7/15 points,
// open rules, so endpoints are never evaluated); the panel list refines by
// bisection until the summed error estimate meets the tolerance. Panel
// evaluations are independent and may run under OpenMP; the reduction is
// always performed serially in interval order, so the result is identical
// for any thread count.
#pragma once

#include <functional>
#include <vector>

#include "polyharm/real.hpp"

namespace polyharm::riesz {

enum class Execution { Serial, OpenMP };

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
    mpfr_prec_t precision = 128;
    Execution exec = Execution::OpenMP;
};

struct QuadOutcome {
    Real value;
    double error_estimate = 0;
    long evaluations = 0;
};

using RealFn = std::function<Real(const Real&)>;

struct GaussRule {
    std::vector<Real> nodes;   // on (-1, 1)
    std::vector<Real> weights;
};

// Gauss-Legendre rule computed by Newton iteration on the Legendre roots at
// the requested precision; results are cached per (points, precision).
const GaussRule& gauss_rule(int points, mpfr_prec_t prec);

// Integral of f over [lo, hi]; interior_breaks (strictly inside the interval)
// seed the initial panel partition, e.g. at a kernel singularity.
QuadOutcome integrate_adaptive(const RealFn& f, const Real& lo, const Real& hi,
                               const std::vector<Real>& interior_breaks,
                               const QuadOptions& opt);

} // namespace polyharm::riesz

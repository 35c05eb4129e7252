// Radial Riesz-type potentials int |x-y|^beta f(|y|) dy in odd dimension,
// with the angular factor in closed form, adaptive 1-D quadrature in the
// radial variable (forced split at the kernel diagonal s = r), and analytic
// tail bounds for the truncation at s = R.
#pragma once

#include <functional>

#include "polyharm/quadrature.hpp"
#include "polyharm/radial_expr.hpp"
#include "polyharm/rational.hpp"
#include "polyharm/real.hpp"

namespace polyharm::riesz {

// A positive radial density f(s) = (scale * expr(s))^power together with the
// decay certificate |f(s)| <= decay_coeff * s^(-decay_exponent) for
// s >= decay_onset that justifies truncating its improper integrals.
struct RadialDensity {
    radial::ScaledExpr base;
    Rational power{1};
    Rational decay_exponent{0};
    double decay_coeff = 0;
    double decay_onset = 1.0;

    Real eval(const Real& s, mpfr_prec_t prec) const;
    bool is_zero() const { return base.expr.is_zero(); }

    // sampled check of the decay certificate at 20 log-spaced radii
    bool decay_certificate_holds(double s_hi = 1e6) const;
};

// u_N^power for the solution family: normalized (u = a(1+r^2)^(1/2)) or the
// raw representative (1+r^2)^(1/2).
RadialDensity solution_power_density(int N, bool normalized = true);

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
    double truncation_radius = 200.0;
    mpfr_prec_t precision = 128;
    Execution exec = Execution::OpenMP;

    QuadOptions quad_options() const {
        return {rel_tol, abs_tol, max_subdivisions, precision, exec};
    }
};

struct PotentialValue {
    Real value;
    double error_estimate = 0;
    double tail_bound_used = 0;
    long evaluations = 0;
};

// Valid bound on the mass omitted beyond radius R for a density bounded by
// C s^(-p): C * omega_n * 2^|beta| * R^(n+beta-p) / (p-n-beta), usable at
// any evaluation point with r <= R/2. Throws on p <= n + beta.
double tail_bound(const Rational& p, const Rational& beta, int n, double C, double R);

// int_{R^n} |x-y|^beta f(|y|) dy at |x| = r.
PotentialValue potential(const RadialDensity& f, const Rational& beta, const Real& r, int n,
                         const QuadratureConfig& cfg);
PotentialValue potential(const RadialDensity& f, const Rational& beta, double r, int n,
                         const QuadratureConfig& cfg);

// int_{R^n} (|x|^2 - x.y)/|x-y| f(|y|) dy at |x| = r  (the x . grad side).
PotentialValue pohozaev_integral(const RadialDensity& f, const Real& r, int n,
                                 const QuadratureConfig& cfg);
PotentialValue pohozaev_integral(const RadialDensity& f, double r, int n,
                                 const QuadratureConfig& cfg);

// Mean of a radial profile over the sphere of radius rho centered at
// distance c from the origin.
Real spherical_mean(const std::function<Real(const Real&)>& f, const Real& c, const Real& rho,
                    int n, const QuadratureConfig& cfg);
Real spherical_mean(const radial::ScaledExpr& f, double c, double rho, int n,
                    const QuadratureConfig& cfg);
Real spherical_mean(const RadialDensity& f, double c, double rho, int n,
                    const QuadratureConfig& cfg);

} // namespace polyharm::riesz

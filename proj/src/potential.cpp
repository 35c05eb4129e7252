#include "polyharm/potential.hpp"

#include <cmath>

#include "polyharm/angular_kernel.hpp"
#include "polyharm/errors.hpp"
#include "polyharm/exact_constants.hpp"

namespace polyharm::riesz {

Real RadialDensity::eval(const Real& s, mpfr_prec_t prec) const {
    const mpfr_prec_t work = prec + 16;
    Real v = base.evaluate_at(s, work);
    if (v.is_zero()) {
        if (power <= 0)
            throw std::domain_error("RadialDensity: zero base with non-positive power");
        return Real(0L, prec);
    }
    Real p = pow_rat(v, power);
    Real out(prec);
    mpfr_set(out.raw(), p.raw(), MPFR_RNDN);
    return out;
}

bool RadialDensity::decay_certificate_holds(double s_hi) const {
    const mpfr_prec_t prec = 96;
    const double s_lo = decay_onset > 0 ? decay_onset : 1.0;
    for (int i = 0; i < 20; ++i) {
        double s = s_lo * std::pow(s_hi / s_lo, i / 19.0);
        double f = std::abs(eval(Real(s, prec), prec).to_double());
        double bound = decay_coeff * std::pow(s, -Real(decay_exponent, prec).to_double());
        if (f > bound * (1 + 1e-12)) return false;
    }
    return true;
}

RadialDensity solution_power_density(int N, bool normalized) {
    radial::NormalizedSolution sol = radial::normalized_solution(N);
    RadialDensity f;
    f.base = normalized ? sol.u
                        : radial::ScaledExpr{radial::PowerScale{Rational(1), Rational(0)},
                                             radial::RadialExpr::sqrt_one_plus_r2()};
    f.power = Rational(-(4L * N - 1));
    f.decay_exponent = Rational(4L * N - 1);
    // (scale * sqrt(1+s^2))^-(4N-1) <= scale^-(4N-1) s^-(4N-1) for all s > 0
    double scale = normalized ? sol.a.value(96).to_double() : 1.0;
    f.decay_coeff = std::pow(scale, -(4.0 * N - 1)) * (1 + 1e-12);
    f.decay_onset = 1.0;
    return f;
}

double tail_bound(const Rational& p, const Rational& beta, int n, double C, double R) {
    if (p <= Rational(n) + beta)
        throw DivergentKernelError("tail_bound: decay exponent p <= n + beta, integral diverges");
    const double pd = Real(p, 64).to_double();
    const double bd = Real(beta, 64).to_double();
    const double omega = exact::sphere_area(n).to_real(64).to_double();
    return C * omega * std::pow(2.0, std::abs(bd)) * std::pow(R, n + bd - pd) / (pd - n - bd);
}

namespace {

// effective truncation radius: start from the configured one, honor the
// decay onset and 2r, then grow until the analytic tail is negligible.
double effective_radius(const RadialDensity& f, const Rational& beta_for_tail, double r, int n,
                        const QuadratureConfig& cfg, double C_for_tail, double& tail_out) {
    double R = std::max({cfg.truncation_radius, 2.0 * r, f.decay_onset, 1.0});
    for (int i = 0; i < 60; ++i) {
        tail_out = tail_bound(f.decay_exponent, beta_for_tail, n, C_for_tail, R);
        if (tail_out <= cfg.abs_tol / 10) return R;
        R *= 2;
    }
    throw QuadratureFailure("potential: tail bound does not reach abs_tol/10", 0.0, tail_out);
}

std::vector<Real> seed_breaks(double r, double R, mpfr_prec_t prec) {
    std::vector<Real> breaks;
    for (int j = 1; j <= 12; ++j) breaks.emplace_back(R * std::pow(2.0, -j), prec);
    if (r > 0 && r < R) {
        breaks.emplace_back(r, prec);
        if (r / 2 > 0) breaks.emplace_back(r / 2, prec);
        if (2 * r < R) breaks.emplace_back(2 * r, prec);
    }
    return breaks;
}

void validate_common(const RadialDensity& f, const Rational& beta, double r, int n) {
    if (n < 3 || n % 2 == 0)
        throw std::domain_error("potential: dimension must be an odd integer >= 3");
    if (r < 0) throw std::domain_error("potential: radius must be non-negative");
    if (beta <= Rational(-(n - 1)))
        throw DivergentKernelError("potential: beta <= -(n-1) is not integrable");
    if (f.decay_exponent <= Rational(n) + beta)
        throw std::domain_error("potential: density decay too slow for absolute convergence");
}

} // namespace

PotentialValue potential(const RadialDensity& f, const Rational& beta, const Real& r, int n,
                         const QuadratureConfig& cfg) {
    const double rd = r.to_double();
    validate_common(f, beta, rd, n);
    const mpfr_prec_t prec = cfg.precision;
    if (f.is_zero()) return {Real(0L, prec), 0.0, 0.0, 0};

    double tail = 0;
    const double R = effective_radius(f, beta, rd, n, cfg, f.decay_coeff, tail);

    const mpfr_prec_t work = prec + 16;
    Real rw(work);
    mpfr_set(rw.raw(), r.raw(), MPFR_RNDN);
    auto integrand = [&](const Real& s) {
        Real fs = f.eval(s, work);
        Real kern = angular_kernel(rw, s, beta, n, work);
        return pow_si(s, n - 1) * fs * kern;
    };

    QuadOutcome q = integrate_adaptive(integrand, Real(0L, work), Real(R, work),
                                       seed_breaks(rd, R, work), cfg.quad_options());
    Real out(prec);
    mpfr_set(out.raw(), q.value.raw(), MPFR_RNDN);
    return {out, q.error_estimate + tail, tail, q.evaluations};
}

PotentialValue potential(const RadialDensity& f, const Rational& beta, double r, int n,
                         const QuadratureConfig& cfg) {
    return potential(f, beta, Real(r, cfg.precision), n, cfg);
}

PotentialValue pohozaev_integral(const RadialDensity& f, const Real& r, int n,
                                 const QuadratureConfig& cfg) {
    const double rd = r.to_double();
    validate_common(f, Rational(0), rd, n);
    const mpfr_prec_t prec = cfg.precision;
    if (f.is_zero() || r.is_zero()) return {Real(0L, prec), 0.0, 0.0, 0};

    // |(|x|^2 - x.y)/|x-y|| <= 3r once s >= R >= 2r, so the omitted tail is
    // bounded by the beta = 0 mass bound with constant 3r C.
    double tail = 0;
    const double R = effective_radius(f, Rational(0), rd, n, cfg, 3.0 * rd * f.decay_coeff, tail);

    const mpfr_prec_t work = prec + 16;
    Real rw(work);
    mpfr_set(rw.raw(), r.raw(), MPFR_RNDN);
    Real omega_slice = exact::sphere_area_even(n - 1).to_real(work);
    auto integrand = [&](const Real& s) {
        Real fs = f.eval(s, work);
        AngularMoments m = angular_moments(rw, s, Rational(-1), n, work);
        // (r^2 - r s t) under the angular integral
        Real g = omega_slice * (rw * rw * m.j0 - rw * s * m.j1);
        return pow_si(s, n - 1) * fs * g;
    };

    QuadOutcome q = integrate_adaptive(integrand, Real(0L, work), Real(R, work),
                                       seed_breaks(rd, R, work), cfg.quad_options());
    Real out(prec);
    mpfr_set(out.raw(), q.value.raw(), MPFR_RNDN);
    return {out, q.error_estimate + tail, tail, q.evaluations};
}

PotentialValue pohozaev_integral(const RadialDensity& f, double r, int n,
                                 const QuadratureConfig& cfg) {
    return pohozaev_integral(f, Real(r, cfg.precision), n, cfg);
}

Real spherical_mean(const std::function<Real(const Real&)>& f, const Real& c, const Real& rho,
                    int n, const QuadratureConfig& cfg) {
    if (n < 3 || n % 2 == 0)
        throw std::domain_error("spherical_mean: dimension must be an odd integer >= 3");
    if (!(rho > Real(0L, 53)))
        throw std::domain_error("spherical_mean: sphere radius must be positive");
    const mpfr_prec_t prec = cfg.precision;
    const mpfr_prec_t work = prec + 16;
    Real cw(work), rw(work);
    mpfr_set(cw.raw(), c.raw(), MPFR_RNDN);
    mpfr_set(rw.raw(), rho.raw(), MPFR_RNDN);

    if (cw.is_zero()) {
        Real v = f(rw);
        Real out(prec);
        mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
        return out;
    }

    const long m = (n - 3) / 2;
    // |y|^2 on the sphere: (c - rho)^2 + 2 c rho (1 - t), stable near t = 1
    const Real base = (cw - rw) * (cw - rw);
    const Real two_crho = Real(2L, work) * cw * rw;
    auto integrand = [&](const Real& t) {
        Real arg2 = base + two_crho * (Real(1L, work) - t);
        Real v = f(sqrt(arg2));
        Real poly = Real(1L, work) - t * t;
        return v * pow_si(poly, m);
    };
    QuadOutcome q = integrate_adaptive(integrand, Real(-1L, work), Real(1L, work), {},
                                       cfg.quad_options());
    // mean = |S^(n-2)| / |S^(n-1)| * integral
    Real ratio = (exact::sphere_area_even(n - 1) / exact::sphere_area(n)).to_real(work);
    Real v = ratio * q.value;
    Real out(prec);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

Real spherical_mean(const radial::ScaledExpr& f, double c, double rho, int n,
                    const QuadratureConfig& cfg) {
    const mpfr_prec_t work = cfg.precision + 16;
    return spherical_mean([&](const Real& s) { return f.evaluate_at(s, work); },
                          Real(c, work), Real(rho, work), n, cfg);
}

Real spherical_mean(const RadialDensity& f, double c, double rho, int n,
                    const QuadratureConfig& cfg) {
    const mpfr_prec_t work = cfg.precision + 16;
    return spherical_mean([&](const Real& s) { return f.eval(s, work); },
                          Real(c, work), Real(rho, work), n, cfg);
}

} // namespace polyharm::riesz

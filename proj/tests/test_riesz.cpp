#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "polyharm/angular_kernel.hpp"
#include "polyharm/errors.hpp"
#include "polyharm/exact_constants.hpp"
#include "polyharm/nested_mean.hpp"
#include "polyharm/potential.hpp"
#include "polyharm/quadrature.hpp"

using namespace polyharm;
using namespace polyharm::riesz;

namespace {

QuadratureConfig tight_cfg() {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-13;
    return cfg;
}

double omega(int n) { return exact::sphere_area(n).to_real(96).to_double(); }

// direct numerical evaluation of the angular integral, sharing nothing with
// the closed form. Substituting t = 1 - tau^2 regularizes the algebraic
// endpoint behavior at t = 1, so plain adaptive quadrature reaches full
// accuracy even on the diagonal r = s:
//   int_{-1}^{1} (1-t^2)^m (A-Bt)^(beta/2) dt
//     = int_0^{sqrt 2} 2 tau (tau^2 (2-tau^2))^m ((r-s)^2 + B tau^2)^(beta/2) dtau
double kernel_by_quadrature(double r, double s, const Rational& beta, int n) {
    const mpfr_prec_t prec = 160;
    const int m = (n - 3) / 2;
    Real eps2((r - s) * (r - s), prec), B(2 * r * s, prec);
    QuadOptions opt;
    opt.rel_tol = 1e-14;
    opt.abs_tol = 1e-18;
    opt.precision = prec;
    auto f = [&](const Real& tau) {
        Real tau2 = tau * tau;
        Real poly = pow_si(tau2 * (Real(2L, prec) - tau2), m);
        return Real(2L, prec) * tau * poly * pow_rat(eps2 + B * tau2, beta / 2);
    };
    QuadOutcome q =
        integrate_adaptive(f, Real(0L, prec), sqrt(Real(2L, prec)), {}, opt);
    return (exact::sphere_area_even(n - 1).to_real(prec) * q.value).to_double();
}

RadialDensity zero_density() {
    RadialDensity zero;
    zero.base = {radial::PowerScale{Rational(1), Rational(0)}, radial::RadialExpr::zero()};
    zero.power = Rational(1);
    zero.decay_exponent = Rational(10);
    zero.decay_coeff = 0;
    return zero;
}

} // namespace

TEST_CASE("adaptive quadrature against closed antiderivatives") {
    const mpfr_prec_t prec = 128;
    QuadOptions opt;
    opt.precision = prec;
    // int_0^1 x^3 dx
    auto cubic = [&](const Real& x) { return x * x * x; };
    QuadOutcome q = integrate_adaptive(cubic, Real(0L, prec), Real(1L, prec), {}, opt);
    CHECK(std::abs(q.value.to_double() - 0.25) < 1e-15);
    // integrable kink |x - 1/3| over [0,1] with a forced break
    auto kink = [&](const Real& x) { return abs(x - Real(1.0 / 3.0, prec)); };
    q = integrate_adaptive(kink, Real(0L, prec), Real(1L, prec), {Real(1.0 / 3.0, prec)}, opt);
    const double expect = (1.0 / 9 + 4.0 / 9) / 2;
    CHECK(std::abs(q.value.to_double() - expect) < 1e-12);
    // empty interval
    q = integrate_adaptive(cubic, Real(1L, prec), Real(1L, prec), {}, opt);
    CHECK(q.value.is_zero());
}

TEST_CASE("gauss rule nodes integrate polynomials exactly") {
    const auto& rule = gauss_rule(15, 192);
    // even monomial of degree 28 is integrated exactly by 15-point Gauss
    Real acc(0L, 192);
    for (int i = 0; i < 15; ++i) acc += rule.weights[i] * pow_si(rule.nodes[i], 28);
    CHECK(std::abs(acc.to_double() - 2.0 / 29.0) < 1e-40);
}

TEST_CASE("angular kernel closed forms in dimension 3") {
    const mpfr_prec_t prec = 128;
    // beta = -1: Newton shell, 4 pi / max(r,s), including on the diagonal
    for (auto [r, s] : {std::pair{0.5, 2.0}, {2.0, 0.5}, {1.7, 1.7}, {3.0, 2.9999}}) {
        double k = angular_kernel(Real(r, prec), Real(s, prec), Rational(-1), 3, prec)
                       .to_double();
        CHECK(k == doctest::Approx(4 * M_PI / std::max(r, s)).epsilon(1e-13));
    }
    // beta = 1: 2 pi ((r+s)^3 - |r-s|^3) / (3 r s)
    for (auto [r, s] : {std::pair{0.5, 2.0}, {1.0, 1.0}}) {
        double k = angular_kernel(Real(r, prec), Real(s, prec), Rational(1), 3, prec)
                       .to_double();
        double expect = 2 * M_PI * (std::pow(r + s, 3) - std::pow(std::abs(r - s), 3)) /
                        (3 * r * s);
        CHECK(k == doctest::Approx(expect).epsilon(1e-13));
    }
    // r = 0 reduction: omega_n s^beta
    double k0 = angular_kernel(Real(0.0, prec), Real(2.0, prec), Rational(-1), 3, prec)
                    .to_double();
    CHECK(k0 == doctest::Approx(omega(3) / 2.0).epsilon(1e-14));
}

TEST_CASE("angular kernel against direct quadrature, including near-diagonal") {
    const mpfr_prec_t prec = 128;
    for (int n : {3, 5, 7}) {
        for (const Rational& beta : {Rational(1), Rational(-1), Rational(-3), Rational(-7, 2)}) {
            if (beta <= Rational(-(n - 1))) continue;
            for (auto [r, s] : {std::pair{1.0, 0.2}, {1.0, 0.9}, {1.0, 0.999999}, {1.0, 1.0},
                                {0.3, 4.0}}) {
                if (r == s && Rational(n - 2) + beta < 0) continue; // kernel unbounded there
                double closed =
                    angular_kernel(Real(r, prec), Real(s, prec), beta, n, prec).to_double();
                double direct = kernel_by_quadrature(r, s, beta, n);
                CHECK(closed == doctest::Approx(direct).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("angular kernel symmetry over random radius pairs") {
    const mpfr_prec_t prec = 128;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(0.01, 20.0);
    for (int trial = 0; trial < 100; ++trial) {
        double r = radius(rng), s = radius(rng);
        for (const Rational& beta : {Rational(1), Rational(-1)}) {
            double a = angular_kernel(Real(r, prec), Real(s, prec), beta, 5, prec).to_double();
            double b = angular_kernel(Real(s, prec), Real(r, prec), beta, 5, prec).to_double();
            CHECK(a == doctest::Approx(b).epsilon(1e-13));
        }
    }
}

TEST_CASE("angular kernel divergence guards") {
    const mpfr_prec_t prec = 96;
    CHECK_THROWS_AS(angular_kernel(Real(1.0, prec), Real(1.0, prec), Rational(-2), 3, prec),
                    DivergentKernelError);
    CHECK_THROWS_AS(angular_kernel(Real(0.0, prec), Real(0.0, prec), Rational(-1), 3, prec),
                    DivergentKernelError);
    CHECK_THROWS_AS(angular_kernel(Real(1.0, prec), Real(2.0, prec), Rational(-4), 5, prec),
                    DivergentKernelError);
}

TEST_CASE("tail bound arithmetic") {
    // R -> 2R divides the bound by 2^(p-n-beta)
    double b1 = tail_bound(Rational(7), Rational(1), 3, 2.0, 100.0);
    double b2 = tail_bound(Rational(7), Rational(1), 3, 2.0, 200.0);
    CHECK(b1 / b2 == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(tail_bound(Rational(7), Rational(1), 3, 2.0, 1e9) < 1e-20);
    // plug-in value: C omega_3 2^1 R^-3 / 3 at C = a^-7, R = 100
    double a = radial::normalized_solution(2).a.value(96).to_double();
    double C = std::pow(a, -7.0);
    double expect = C * 4 * M_PI * 2 * std::pow(100.0, -3.0) / 3.0;
    CHECK(tail_bound(Rational(7), Rational(1), 3, C, 100.0) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(tail_bound(Rational(3), Rational(1), 3, 1.0, 10.0), DivergentKernelError);
}

TEST_CASE("potential of the zero density and precondition checks") {
    QuadratureConfig cfg = tight_cfg();
    PotentialValue p = potential(zero_density(), Rational(1), 1.0, 3, cfg);
    CHECK(p.value.is_zero());
    CHECK(p.error_estimate == 0);

    RadialDensity f = solution_power_density(2);
    CHECK_THROWS_AS(potential(f, Rational(-3), 1.0, 3, cfg), DivergentKernelError);
    RadialDensity slow = f;
    slow.decay_exponent = Rational(2); // p <= n + beta
    CHECK_THROWS_AS(potential(slow, Rational(1), 1.0, 3, cfg), std::domain_error);
    CHECK(f.decay_certificate_holds());
}

TEST_CASE("potential at the origin against coarse Monte-Carlo integration") {
    // c_0 int |x-y| u^-7 dy at x = 0 must equal u(0) = a (N = 2). The oracle
    // samples |y| <= 10 uniformly in the ball (radial pushforward s = R U^(1/3));
    // the truncated tail mass (~0.3%) stays inside the noise allowance.
    QuadratureConfig cfg = tight_cfg();
    RadialDensity f = solution_power_density(2);
    PotentialValue p = potential(f, Rational(1), 0.0, 3, cfg);
    double c0 = exact::constant_chain(2, exact::ChainMode::Corrected).c[0].to_real(96)
                    .to_double();
    double a = radial::normalized_solution(2).a.value(96).to_double();
    CHECK(c0 * p.value.to_double() == doctest::Approx(a).epsilon(1e-9));

    const double R = 10.0;
    const long samples = 2'000'000;
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double acc = 0;
    for (long i = 0; i < samples; ++i) {
        double s = R * std::cbrt(unit(rng));
        acc += s * std::pow(std::sqrt(1 + s * s) * a, -7.0);
    }
    double volume = 4.0 / 3.0 * M_PI * R * R * R;
    double mc = volume * acc / (double)samples;
    CHECK(c0 * mc == doctest::Approx(a).epsilon(0.05)); // coarse oracle
}

TEST_CASE("potential with beta = 0 equals the plain radial mass integral") {
    QuadratureConfig cfg = tight_cfg();
    RadialDensity f = solution_power_density(3);
    PotentialValue p = potential(f, Rational(0), 2.0, 5, cfg);
    // independent route: omega_n int s^(n-1) f(s) ds, no angular kernel
    const mpfr_prec_t prec = 144;
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-15;
    opt.precision = prec;
    auto g = [&](const Real& s) { return pow_si(s, 4) * f.eval(s, prec); };
    QuadOutcome direct = integrate_adaptive(g, Real(0L, prec), Real(400.0, prec), {}, opt);
    double expect = omega(5) * direct.value.to_double();
    CHECK(p.value.to_double() == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("spherical means of reference profiles") {
    QuadratureConfig cfg = tight_cfg();
    const mpfr_prec_t prec = cfg.precision;
    // constant profile
    auto konst = [&](const Real&) { return Real(3.5, prec); };
    CHECK(spherical_mean(konst, Real(2.0, prec), Real(0.7, prec), 5, cfg).to_double() ==
          doctest::Approx(3.5).epsilon(1e-13));
    // harmonic profile |y|^-(2N-3) away from the pole: mean = c^-(2N-3)
    for (int N : {2, 3}) {
        const int n = 2 * N - 1;
        auto harm = [&](const Real& s) { return pow_si(s, -(2 * N - 3)); };
        double got = spherical_mean(harm, Real(3.0, prec), Real(1.5, prec), n, cfg).to_double();
        CHECK(got == doctest::Approx(std::pow(3.0, -(2.0 * N - 3))).epsilon(1e-11));
    }
    // |y|^2: mean over the sphere is c^2 + rho^2 (law of cosines)
    auto sq = [&](const Real& s) { return s * s; };
    CHECK(spherical_mean(sq, Real(0.0, prec), Real(0.9, prec), 5, cfg).to_double() ==
          doctest::Approx(0.81).epsilon(1e-13));
    CHECK(spherical_mean(sq, Real(1.2, prec), Real(0.9, prec), 5, cfg).to_double() ==
          doctest::Approx(1.44 + 0.81).epsilon(1e-12));
    CHECK_THROWS_AS(spherical_mean(sq, Real(1.0, prec), Real(0.0, prec), 5, cfg),
                    std::domain_error);
}

TEST_CASE("pohozaev integral trivial cases") {
    QuadratureConfig cfg = tight_cfg();
    RadialDensity f = solution_power_density(2);
    CHECK(pohozaev_integral(f, 0.0, 3, cfg).value.is_zero());
    CHECK(pohozaev_integral(zero_density(), 1.0, 3, cfg).value.is_zero());
}

TEST_CASE("nested mean value identity, dual-order self-check") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-13;
    NestedMeanResult r = nested_mean_value_check(2, 0.0, 1.0, cfg, 1e-5);
    CHECK(r.pass);
    CHECK(r.rel_diff < 1e-8);
    CHECK(r.order_error < 1e-12);
    NestedMeanResult off = nested_mean_value_check(3, 2.0, 1.0, cfg, 1e-5);
    CHECK(off.pass);
    CHECK_THROWS_AS(nested_mean_value_check(2, 0.0, 0.0, cfg, 1e-5), std::domain_error);
}

TEST_CASE("quadrature failure carries its best estimate") {
    const mpfr_prec_t prec = 96;
    QuadOptions opt;
    opt.rel_tol = 1e-30; // unreachable with this subdivision budget
    opt.abs_tol = 1e-35;
    opt.max_subdivisions = 4;
    opt.precision = prec;
    auto wiggly = [&](const Real& x) {
        Real s(prec);
        mpfr_sin(s.raw(), (x * Real(50L, prec)).raw(), MPFR_RNDN);
        return s + sqrt(abs(x));
    };
    try {
        integrate_adaptive(wiggly, Real(0L, prec), Real(1L, prec), {}, opt);
        FAIL("expected QuadratureFailure");
    } catch (const QuadratureFailure& e) {
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.error_estimate > 0);
    }
}

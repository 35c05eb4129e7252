// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is exercised directly against the library with its
// tolerance pinned here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "polyharm/exact_constants.hpp"
#include "polyharm/golden.hpp"
#include "polyharm/nested_mean.hpp"
#include "polyharm/ode.hpp"
#include "polyharm/potential.hpp"
#include "polyharm/radial_expr.hpp"
#include "polyharm/report.hpp"
#include "polyharm/suites.hpp"

using namespace polyharm;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
    std::printf("%s criterion-%d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1: symbolic classification for N = 2..6, K_2 = 15 against the dual oracle
void criterion_1() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (int N = 2; N <= 6 && ok; ++N) {
        radial::RadialExpr res =
            radial::polylaplacian(radial::RadialExpr::sqrt_one_plus_r2(), 2 * N - 1, N);
        ok = res.terms().size() == 1 && res.parity() == 0;
        if (ok) {
            const auto& [q2, c] = *res.terms().begin();
            ok = q2 == -(4L * N - 1) && c < 0;
        }
        if (!ok) detail = "shape failed at N = " + std::to_string(N);
    }
    if (ok) {
        // independent dual-precision oracle for K_2: evaluate the 2-fold
        // Laplacian numerically at two precisions and divide out the power
        Rational K2 = radial::curvature_constant(2);
        ok = K2 == Rational(15);
        for (mpfr_prec_t prec : {256, 512}) {
            Real lhs = radial::evaluate(
                radial::polylaplacian(radial::RadialExpr::sqrt_one_plus_r2(), 3, 2), 1.0, prec);
            Real ratio = -lhs * pow_rat(Real(2L, prec), Rational(7, 2));
            ok = ok && abs(ratio - Real(15L, prec)).to_double() < 1e-50;
        }
        detail = "K_2 = " + rat_str(K2);
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    report(1, "symbolic classification N=2..6", ok,
           detail + ", " + std::to_string(dt) + " s");
}

// 2: constant chain recursion and flux for N = 2..8
void criterion_2() {
    auto t0 = Clock::now();
    bool ok = true;
    using exact::ChainMode;
    for (int N = 2; N <= 8 && ok; ++N) {
        for (ChainMode mode : {ChainMode::PaperLiteral, ChainMode::Corrected}) {
            exact::ConstantChain ch = exact::constant_chain(N, mode);
            for (long k = 1; k <= N - 2; ++k)
                ok = ok && ch.c[N - k - 1] * Rational(2 * k * (2 * N - 2 * k - 3)) ==
                               ch.c[N - k];
            ok = ok && ch.c[0] * Rational(2L * N - 2) == ch.c[1];
        }
        ok = ok && exact::flux_check(N, ChainMode::Corrected) == exact::ExactScalar::one();
        const bool paper_unit =
            exact::flux_check(N, ChainMode::PaperLiteral) == exact::ExactScalar::one();
        ok = ok && paper_unit == (N == 2);
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    report(2, "constant chain recursion and flux N=2..8", ok, std::to_string(dt) + " s");
}

riesz::QuadratureConfig acceptance_quad() {
    riesz::QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    cfg.abs_tol = 1e-12;
    cfg.truncation_radius = 200.0;
    cfg.precision = 128;
    return cfg;
}

// 3: integral representation chain and closing identity, N in {2,3}
void criterion_3() {
    const double tol = 1e-5;
    riesz::QuadratureConfig cfg = acceptance_quad();
    bool ok = true;
    double worst = 0, gamma_worst = 0;
    for (int N : {2, 3}) {
        const int n = 2 * N - 1;
        auto chain = exact::constant_chain(N, exact::ChainMode::Corrected);
        auto f = riesz::solution_power_density(N);
        auto sol = radial::normalized_solution(N);
        const Real a = sol.a.value(cfg.precision);
        const auto u = radial::RadialExpr::sqrt_one_plus_r2();
        double gamma_sum = 0;
        int count = 0;
        for (double r : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            for (int k = 1; k <= N - 1; ++k) {
                Rational beta(-(2L * N - 1 - 2 * k));
                double measured =
                    (chain.c[N - k].to_real(cfg.precision) *
                     riesz::potential(f, beta, r, n, cfg).value)
                        .to_double();
                double expected =
                    -(a * radial::evaluate(radial::polylaplacian(u, n, N - k), r,
                                           cfg.precision))
                         .to_double();
                worst = std::max(worst, std::abs(measured - expected) / std::abs(expected));
            }
            double closing = (chain.c[0].to_real(cfg.precision) *
                              riesz::potential(f, Rational(1), r, n, cfg).value)
                                 .to_double();
            double u_val = sol.u.evaluate_at(r, cfg.precision).to_double();
            worst = std::max(worst, std::abs(closing - u_val) / std::abs(u_val));
            gamma_sum += u_val - closing;
            ++count;
        }
        gamma_worst = std::max(gamma_worst, std::abs(gamma_sum / count));
    }
    ok = worst <= tol && gamma_worst <= tol;
    report(3, "integral representation N=2,3 at 5 radii", ok,
           "worst rel err " + std::to_string(worst) + ", |gamma| " +
               std::to_string(gamma_worst));
}

// 4: Pohozaev identity for N = 2
void criterion_4() {
    const double tol = 1e-5;
    riesz::QuadratureConfig cfg = acceptance_quad();
    auto chain = exact::constant_chain(2, exact::ChainMode::Corrected);
    auto f = riesz::solution_power_density(2);
    auto sol = radial::normalized_solution(2);
    const Real a = sol.a.value(cfg.precision);
    const auto du = radial::derivative(radial::RadialExpr::sqrt_one_plus_r2());
    double worst = 0;
    for (double r : {0.5, 1.0, 2.0}) {
        double measured = (chain.c[0].to_real(cfg.precision) *
                           riesz::pohozaev_integral(f, r, 3, cfg).value)
                              .to_double();
        double expected = r * (a * radial::evaluate(du, r, cfg.precision)).to_double();
        worst = std::max(worst, std::abs(measured - expected) / std::abs(expected));
    }
    report(4, "Pohozaev identity N=2 at r=0.5,1,2", worst <= tol,
           "worst rel err " + std::to_string(worst));
}

// 5: nested mean-value identity
void criterion_5() {
    const double tol = 1e-5;
    riesz::QuadratureConfig cfg = acceptance_quad();
    bool ok = true;
    double worst = 0;
    for (int N : {2, 3})
        for (double x : {0.0, 2.0})
            for (double r : {0.5, 1.0}) {
                auto res = riesz::nested_mean_value_check(N, x, r, cfg, tol);
                ok = ok && res.pass;
                worst = std::max(worst, res.rel_diff);
            }
    report(5, "nested mean-value identity N=2,3", ok && worst <= tol,
           "worst rel err " + std::to_string(worst));
}

// 6: lemma sign/limit suite
void criterion_6() {
    auto t0 = Clock::now();
    bool ok = true;
    for (int N = 2; N <= 6; ++N) {
        verify::SuiteConfig cfg;
        cfg.N = N;
        verify::VerificationReport rep = verify::run_suite(verify::Suite::Symbolic, cfg);
        ok = ok && rep.all_passed();
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    report(6, "lemma sign/limit suite N=2..6", ok, std::to_string(dt) + " s");
}

// 7: ODE reproduction of the exact solution
void criterion_7() {
    bool ok = true;
    double worst = 0;
    ode::OdeSystem sys{2, ode::EquationSign::PlusNegativePower};
    std::vector<double> init;
    for (const Real& v : radial::initial_data(2, 96)) init.push_back(v.to_double());
    const double a = init[0];
    const auto u = radial::RadialExpr::sqrt_one_plus_r2();
    for (double r : {1.0, 5.0, 25.0, 50.0}) {
        ode::Trajectory t = ode::integrate(sys, init, r, 1e-12);
        for (int k = 0; k < 2; ++k) {
            double expected =
                a * radial::evaluate(radial::polylaplacian(u, 3, k), r, 96).to_double();
            worst = std::max(worst,
                             std::abs(t.states.back()[2 * k] - expected) / std::abs(expected));
        }
    }
    ok = worst <= 1e-8;
    ode::Trajectory t = ode::integrate(sys, init, 50.0, 1e-12);
    ode::Fate fate = ode::classify_trajectory(t, 10.0);
    const double alpha_ref = std::pow(15.0, -1.0 / 8.0);
    ok = ok && fate.kind == ode::FateKind::LinearGrowth &&
         std::abs(fate.value - alpha_ref) / alpha_ref <= 1e-3;
    report(7, "ODE reproduction N=2 and LinearGrowth(alpha)", ok,
           "worst rel err " + std::to_string(worst) + ", alpha " + std::to_string(fate.value));
}

// 8: non-existence exploration evidence
void criterion_8() {
    ode::OdeSystem sys{2, ode::EquationSign::MinusNegativePower};
    auto grid = ode::documented_minus_grid(2);
    const auto& golden_grid = golden::golden_table().fates.front();
    bool ok = golden_grid.id == "n2-minus-documented" &&
              grid.size() == golden_grid.points.size();
    for (double tol : {golden_grid.tol_coarse, golden_grid.tol_fine}) {
        auto pts = ode::shoot_grid(sys, grid, golden_grid.r_max, tol, 10.0);
        for (size_t i = 0; i < pts.size() && ok; ++i) {
            ok = !pts[i].failed &&
                 ode::fate_kind_name(pts[i].fate.kind) == golden_grid.points[i].kind &&
                 pts[i].fate.signs_constant == golden_grid.points[i].signs_constant &&
                 !(pts[i].fate.kind == ode::FateKind::LinearGrowth &&
                   pts[i].fate.signs_constant);
        }
    }
    report(8, "sigma=-1 scan: no sign-constant linear growth, golden fates", ok,
           "10-point grid at two tolerances");
}

// 9: Jensen inequality on random discrete instances
void criterion_9() {
    std::mt19937_64 rng(987654321);
    std::uniform_int_distribution<int> size_dist(2, 24);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int m = size_dist(rng);
        const long q = trial % 2 == 0 ? 1 : 7;
        std::vector<double> w(m), phi(m);
        double wsum = 0;
        for (int i = 0; i < m; ++i) {
            w[i] = unit(rng) + 1e-9;
            wsum += w[i];
        }
        double mean = 0, mean_pow = 0;
        for (int i = 0; i < m; ++i) {
            phi[i] = std::exp(std::log(0.05) + unit(rng) * std::log(400.0));
            mean += w[i] / wsum * phi[i];
            mean_pow += w[i] / wsum * std::pow(phi[i], -(double)q);
        }
        if (std::pow(mean, -(double)q) > mean_pow * (1 + 1e-12)) ++violations;
    }
    report(9, "Jensen inequality, 200 random instances", violations == 0,
           std::to_string(violations) + " violations");
}

// 10: byte-identical reports across consecutive CLI runs
void criterion_10() {
    const char* cli = std::getenv("POLYHARM_CLI");
    if (!cli) {
        report(10, "determinism of run --suite all --n 2", false,
               "POLYHARM_CLI not set; run through ctest");
        return;
    }
    auto capture = [&](const std::string& path) {
        std::string cmd = std::string(cli) + " run --suite all --n 2 --out " + path;
        int rc = std::system(cmd.c_str());
        (void)rc;
        FILE* fp = std::fopen(path.c_str(), "rb");
        std::string bytes;
        if (fp) {
            char buf[8192];
            size_t n;
            while ((n = std::fread(buf, 1, sizeof buf, fp)) > 0) bytes.append(buf, n);
            std::fclose(fp);
        }
        return bytes;
    };
    std::string b1 = capture("/tmp/polyharm_accept_run1.json");
    std::string b2 = capture("/tmp/polyharm_accept_run2.json");
    report(10, "determinism of run --suite all --n 2", !b1.empty() && b1 == b2,
           std::to_string(b1.size()) + " bytes each");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%s\n", g_failures == 0 ? "acceptance: all criteria passed"
                                        : "acceptance: FAILURES present");
    return g_failures == 0 ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyharm/nested_mean.hpp"
#include "polyharm/ode.hpp"
#include "polyharm/potential.hpp"

// The OpenMP kernels must agree bit-for-bit with the serial reference:
// panel evaluations are independent and the reduction order is fixed, so
// thread count must not influence a single output bit.

using namespace polyharm;
using namespace polyharm::riesz;

TEST_CASE("potential: serial reference equals the OpenMP kernel exactly") {
    for (int N : {2, 3}) {
        const int n = 2 * N - 1;
        RadialDensity f = solution_power_density(N);
        for (double r : {0.0, 1.0, 5.0}) {
            for (const Rational& beta : {Rational(1), Rational(-1)}) {
                QuadratureConfig serial;
                serial.exec = Execution::Serial;
                QuadratureConfig parallel;
                parallel.exec = Execution::OpenMP;
                PotentialValue a = potential(f, beta, r, n, serial);
                PotentialValue b = potential(f, beta, r, n, parallel);
                CHECK(a.value == b.value); // exact MPFR equality
                CHECK(a.error_estimate == b.error_estimate);
                CHECK(a.evaluations == b.evaluations);
            }
        }
    }
}

TEST_CASE("pohozaev: serial reference equals the OpenMP kernel exactly") {
    RadialDensity f = solution_power_density(2);
    QuadratureConfig serial;
    serial.exec = Execution::Serial;
    QuadratureConfig parallel;
    parallel.exec = Execution::OpenMP;
    CHECK(pohozaev_integral(f, 1.5, 3, serial).value ==
          pohozaev_integral(f, 1.5, 3, parallel).value);
}

TEST_CASE("shoot grid: serial reference equals the OpenMP kernel exactly") {
    ode::OdeSystem sys{2, ode::EquationSign::MinusNegativePower};
    auto grid = ode::documented_minus_grid(2);
    auto serial = ode::shoot_grid(sys, grid, 50.0, 1e-9, 10.0, Execution::Serial);
    auto parallel = ode::shoot_grid(sys, grid, 50.0, 1e-9, 10.0, Execution::OpenMP);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].fate.kind == parallel[i].fate.kind);
        CHECK(serial[i].fate.value == parallel[i].fate.value); // bitwise double equality
        CHECK(serial[i].fate.signs_constant == parallel[i].fate.signs_constant);
    }
}

TEST_CASE("nested mean value: serial reference equals the OpenMP kernel exactly") {
    QuadratureConfig serial;
    serial.exec = Execution::Serial;
    QuadratureConfig parallel;
    parallel.exec = Execution::OpenMP;
    auto a = nested_mean_value_check(2, 0.0, 0.5, serial, 1e-5);
    auto b = nested_mean_value_check(2, 0.0, 0.5, parallel, 1e-5);
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK(a.order_error == b.order_error);
}

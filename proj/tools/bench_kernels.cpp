// Benchmark of the OpenMP kernels against the serial reference paths.
// Also double-checks that both produce bit-identical results, since the
// parallel code is only allowed to change the schedule, never the bits.
#include <chrono>
#include <cstdio>
#include <omp.h>

#include "polyharm/nested_mean.hpp"
#include "polyharm/ode.hpp"
#include "polyharm/potential.hpp"

using namespace polyharm;
using namespace polyharm::riesz;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = Clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());
    std::printf("%-34s %12s %12s %8s %s\n", "kernel", "serial [s]", "openmp [s]", "speedup",
                "bitwise");

    {
        RadialDensity f = solution_power_density(3);
        QuadratureConfig serial;
        serial.exec = Execution::Serial;
        QuadratureConfig parallel;
        parallel.exec = Execution::OpenMP;
        Real vs(serial.precision), vp(parallel.precision);
        double ts = time_best_of(3, [&] { vs = potential(f, Rational(-3), 1.0, 5, serial).value; });
        double tp = time_best_of(3, [&] { vp = potential(f, Rational(-3), 1.0, 5, parallel).value; });
        std::printf("%-34s %12.4f %12.4f %7.2fx %s\n", "potential N=3 beta=-3 r=1", ts, tp,
                    ts / tp, vs == vp ? "equal" : "DIFFER");
    }
    {
        RadialDensity f = solution_power_density(2);
        QuadratureConfig serial;
        serial.exec = Execution::Serial;
        QuadratureConfig parallel;
        parallel.exec = Execution::OpenMP;
        Real vs(serial.precision), vp(parallel.precision);
        double ts = time_best_of(3, [&] { vs = pohozaev_integral(f, 2.0, 3, serial).value; });
        double tp = time_best_of(3, [&] { vp = pohozaev_integral(f, 2.0, 3, parallel).value; });
        std::printf("%-34s %12.4f %12.4f %7.2fx %s\n", "pohozaev N=2 r=2", ts, tp, ts / tp,
                    vs == vp ? "equal" : "DIFFER");
    }
    {
        QuadratureConfig serial;
        serial.exec = Execution::Serial;
        QuadratureConfig parallel;
        parallel.exec = Execution::OpenMP;
        NestedMeanResult rs, rp;
        double ts = time_best_of(3, [&] { rs = nested_mean_value_check(3, 2.0, 1.0, serial, 1e-5); });
        double tp = time_best_of(3, [&] { rp = nested_mean_value_check(3, 2.0, 1.0, parallel, 1e-5); });
        std::printf("%-34s %12.4f %12.4f %7.2fx %s\n", "nested mean value N=3", ts, tp, ts / tp,
                    rs.lhs == rp.lhs ? "equal" : "DIFFER");
    }
    {
        ode::OdeSystem sys{2, ode::EquationSign::MinusNegativePower};
        auto grid = ode::documented_minus_grid(2);
        std::vector<ode::ShootPoint> ps, pp;
        double ts = time_best_of(3, [&] {
            ps = ode::shoot_grid(sys, grid, 50.0, 1e-10, 10.0, Execution::Serial);
        });
        double tp = time_best_of(3, [&] {
            pp = ode::shoot_grid(sys, grid, 50.0, 1e-10, 10.0, Execution::OpenMP);
        });
        bool eq = ps.size() == pp.size();
        for (size_t i = 0; eq && i < ps.size(); ++i)
            eq = ps[i].fate.kind == pp[i].fate.kind && ps[i].fate.value == pp[i].fate.value;
        std::printf("%-34s %12.4f %12.4f %7.2fx %s\n", "shoot_grid N=2 sigma=-1 (10 pts)", ts,
                    tp, ts / tp, eq ? "equal" : "DIFFER");
    }
    return 0;
}

#include "polyharm/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "polyharm/radial_expr.hpp"

namespace polyharm::ode {

namespace {

using State = std::vector<double>;

// right-hand side; returns false if v_0 left the admissible region (the
// negative power is then meaningless and the step must be rejected)
bool rhs(const OdeSystem& sys, double r, const State& y, State& dy, double v0_floor) {
    const int N = sys.N;
    const double n = sys.n();
    const double v0 = y[0];
    if (v0 <= 0.5 * v0_floor) return false;
    for (int k = 0; k < N; ++k) {
        const double vp = y[2 * k + 1];
        double src;
        if (k < N - 1)
            src = -y[2 * (k + 1)];
        else
            src = sys.sigma() * std::pow(v0, -(4.0 * N - 1.0));
        dy[2 * k] = vp;
        dy[2 * k + 1] = src - (n - 1) / r * vp;
    }
    return true;
}

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

} // namespace

Trajectory integrate(const OdeSystem& sys, const std::vector<double>& init, double r_max,
                     double tol, const OdeOptions& opts) {
    const int dim = sys.dim();
    if ((int)init.size() != dim)
        throw std::domain_error("integrate: initial state must have 2N entries");
    if (tol <= 0) throw std::domain_error("integrate: tolerance must be positive");
    if (r_max < 0) throw std::domain_error("integrate: r_max must be non-negative");
    for (int k = 0; k < sys.N; ++k)
        if (init[2 * k + 1] != 0.0)
            throw std::domain_error("integrate: radial regularity requires v_k'(0) = 0");
    if (init[0] <= 0) throw std::domain_error("integrate: v_0(0) must be positive");

    Trajectory t;
    t.system = sys;
    t.grid.push_back(0.0);
    t.states.push_back(init);
    t.termination = Termination::ReachedRmax;
    if (r_max == 0) return t;

    const double n = sys.n();
    const double floor = opts.positivity_floor_factor * init[0];

    // Taylor bootstrap off r = 0: v_k(h) = v_k(0) + (h^2/2) v_k''(0) with
    // v_k''(0) = Delta v_k(0) / n.
    double h0 = std::min({std::pow(tol, opts.bootstrap_exponent), opts.h_max, r_max});
    State y(dim);
    for (int k = 0; k < sys.N; ++k) {
        double second;
        if (k < sys.N - 1)
            second = -init[2 * (k + 1)] / n;
        else
            second = sys.sigma() * std::pow(init[0], -(4.0 * sys.N - 1.0)) / n;
        y[2 * k] = init[2 * k] + 0.5 * h0 * h0 * second;
        y[2 * k + 1] = h0 * second;
    }
    double r = h0;
    t.grid.push_back(r);
    t.states.push_back(y);
    if (y[0] <= floor) {
        t.termination = Termination::PositivityLost;
        return t;
    }

    double h = h0;
    State k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), ytmp(dim), ynew(dim);
    const double atol = tol * 1e-2;

    while (r < r_max) {
        if (r_max - r <= opts.h_min_factor * std::max(r_max, 1.0)) break;
        h = std::min({h, opts.h_max, r_max - r});
        if (h < opts.h_min_factor * std::max(r, 1.0)) {
            t.termination = Termination::StepUnderflow;
            return t;
        }
        bool ok = rhs(sys, r, y, k1, floor);
        auto stage = [&](State& out, double cc, auto&&... terms) {
            // out = y + h * (sum of a_i * k_i)
            for (int i = 0; i < dim; ++i) {
                double acc = 0;
                ((acc += terms.first * terms.second[i]), ...);
                out[i] = y[i] + h * acc;
            }
            (void)cc;
        };
        using P = std::pair<double, const State&>;
        if (ok) {
            stage(ytmp, c2, P{a21, k1});
            ok = rhs(sys, r + c2 * h, ytmp, k2, floor);
        }
        if (ok) {
            stage(ytmp, c3, P{a31, k1}, P{a32, k2});
            ok = rhs(sys, r + c3 * h, ytmp, k3, floor);
        }
        if (ok) {
            stage(ytmp, c4, P{a41, k1}, P{a42, k2}, P{a43, k3});
            ok = rhs(sys, r + c4 * h, ytmp, k4, floor);
        }
        if (ok) {
            stage(ytmp, c5, P{a51, k1}, P{a52, k2}, P{a53, k3}, P{a54, k4});
            ok = rhs(sys, r + c5 * h, ytmp, k5, floor);
        }
        if (ok) {
            stage(ytmp, 1.0, P{a61, k1}, P{a62, k2}, P{a63, k3}, P{a64, k4}, P{a65, k5});
            ok = rhs(sys, r + h, ytmp, k6, floor);
        }
        if (ok) {
            stage(ynew, 1.0, P{b1, k1}, P{0.0, k2}, P{b3, k3}, P{b4, k4}, P{b5, k5}, P{b6, k6});
            ok = rhs(sys, r + h, ynew, k7, floor);
        }
        double err = 0;
        if (ok) {
            for (int i = 0; i < dim; ++i) {
                double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                e6 * k6[i] + e7 * k7[i]);
                double scale = atol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err += (e / scale) * (e / scale);
            }
            err = std::sqrt(err / dim);
            if (!std::isfinite(err)) ok = false;
        }
        if (!ok) {
            h *= 0.5;
            continue;
        }
        if (err <= 1.0) {
            r += h;
            y = ynew;
            t.grid.push_back(r);
            t.states.push_back(y);
            if (y[0] <= floor) {
                t.termination = Termination::PositivityLost;
                return t;
            }
        }
        double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return t;
}

const char* fate_kind_name(FateKind k) {
    switch (k) {
        case FateKind::LinearGrowth: return "LinearGrowth";
        case FateKind::HitsZero: return "HitsZero";
        case FateKind::SignEvent: return "SignEvent";
        case FateKind::Superlinear: return "Superlinear";
        case FateKind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Fate classify_trajectory(const Trajectory& t, double window) {
    if (t.grid.empty()) throw std::domain_error("classify_trajectory: empty trajectory");
    const int N = t.system.N;
    Fate fate;

    // global sign-constancy of v_k, k = 1..N-1 (strict zero crossings)
    int first_change_k = -1;
    double first_change_r = 0;
    for (int k = 1; k < N; ++k) {
        bool found_past_window = false;
        for (size_t i = 1; i < t.grid.size() && !found_past_window; ++i) {
            double prev = t.states[i - 1][2 * k], cur = t.states[i][2 * k];
            if (prev != 0 && cur != 0 && (prev < 0) != (cur < 0)) {
                fate.signs_constant = false;
                if (t.grid[i] > window) {
                    found_past_window = true;
                    if (first_change_k < 0 || t.grid[i] < first_change_r) {
                        first_change_k = k;
                        first_change_r = t.grid[i];
                    }
                }
            }
        }
    }

    if (t.termination == Termination::PositivityLost) {
        fate.kind = FateKind::HitsZero;
        fate.value = t.grid.back();
        fate.detail = "positivity floor reached";
        return fate;
    }
    if (first_change_k >= 0) {
        fate.kind = FateKind::SignEvent;
        fate.component = first_change_k;
        fate.value = first_change_r;
        fate.detail = "sign change of v_k past the window";
        return fate;
    }

    // trailing-window statistics of q = v_0 / r
    const double r_end = t.grid.back();
    std::vector<double> q;
    for (size_t i = 0; i < t.grid.size(); ++i) {
        if (t.grid[i] > 0 && t.grid[i] >= r_end - window) q.push_back(t.states[i][0] / t.grid[i]);
    }
    if (q.size() < 3) {
        fate.detail = "window holds fewer than 3 samples";
        return fate;
    }
    double qmin = q[0], qmax = q[0], qsum = 0;
    bool monotone_up = true;
    for (size_t i = 0; i < q.size(); ++i) {
        qmin = std::min(qmin, q[i]);
        qmax = std::max(qmax, q[i]);
        qsum += q[i];
        if (i > 0 && q[i] < q[i - 1]) monotone_up = false;
    }
    const double mean = qsum / q.size();
    if (mean != 0 && (qmax - qmin) / std::abs(mean) < kOscillationThreshold) {
        fate.kind = FateKind::LinearGrowth;
        fate.value = mean;
        std::ostringstream os;
        os << "oscillation " << (qmax - qmin) / std::abs(mean);
        fate.detail = os.str();
        return fate;
    }
    if (monotone_up && q.front() > 0 && q.back() > (1.0 + kGrowthThreshold) * q.front()) {
        fate.kind = FateKind::Superlinear;
        fate.value = q.back() / q.front();
        fate.detail = "v_0/r grew monotonically across the window";
        return fate;
    }
    fate.detail = "no detection rule fired";
    return fate;
}

std::vector<ShootPoint> shoot_grid(const OdeSystem& sys,
                                   const std::vector<std::vector<double>>& grid, double r_max,
                                   double tol, double window, riesz::Execution exec,
                                   const OdeOptions& opts) {
    std::vector<ShootPoint> out(grid.size());
    auto run_one = [&](size_t i) {
        out[i].init = grid[i];
        try {
            Trajectory t = integrate(sys, grid[i], r_max, tol, opts);
            out[i].fate = classify_trajectory(t, window);
        } catch (const std::exception& e) {
            out[i].failed = true;
            out[i].error = e.what();
        }
    };
    if (exec == riesz::Execution::OpenMP) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < (long)grid.size(); ++i) run_one(i);
    } else {
        for (size_t i = 0; i < grid.size(); ++i) run_one(i);
    }
    return out;
}

std::vector<std::vector<double>> documented_minus_grid(int N) {
    if (N != 2) throw std::domain_error("documented_minus_grid: only N = 2 is tabulated");
    std::vector<std::vector<double>> grid;
    for (int i = 0; i < 10; ++i) {
        double v1 = -5.0 + 0.5 * i; // -5.0 .. -0.5
        grid.push_back({1.0, 0.0, v1, 0.0});
    }
    return grid;
}

std::vector<std::vector<double>> documented_plus_perturbation_grid(int N) {
    if (N != 2) throw std::domain_error("documented_plus_perturbation_grid: only N = 2");
    auto init = radial::initial_data(2, 96);
    const double a = init[0].to_double();
    const double v1 = init[2].to_double(); // -3a
    std::vector<std::vector<double>> grid;
    for (double f : {0.90, 0.95, 1.0, 1.05, 1.10}) grid.push_back({a, 0.0, v1 * f, 0.0});
    return grid;
}

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream os;
    os << "r";
    for (int k = 0; k < t.system.N; ++k) os << ",v" << k << ",v" << k << "p";
    os << "\n";
    char buf[32];
    for (size_t i = 0; i < t.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", t.grid[i]);
        os << buf;
        for (double v : t.states[i]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << "," << buf;
        }
        os << "\n";
    }
    return os.str();
}

double mass_identity_residual(const Trajectory& t, int k) {
    const int N = t.system.N;
    if (k < 0 || k >= N - 1)
        throw std::domain_error("mass_identity_residual: need 0 <= k <= N-2");
    const double p = 2.0 * N - 2.0;
    double integral = 0, worst = 0, scale = 1e-30;
    for (size_t i = 1; i < t.grid.size(); ++i) {
        const double r0 = t.grid[i - 1], r1 = t.grid[i];
        const double f0 = std::pow(r0, p) * t.states[i - 1][2 * (k + 1)];
        const double f1 = std::pow(r1, p) * t.states[i][2 * (k + 1)];
        integral += 0.5 * (r1 - r0) * (f0 + f1);
        const double lhs = std::pow(r1, p) * t.states[i][2 * k + 1];
        worst = std::max(worst, std::abs(lhs + integral));
        scale = std::max(scale, std::abs(lhs));
    }
    return worst / scale;
}

} // namespace polyharm::ode

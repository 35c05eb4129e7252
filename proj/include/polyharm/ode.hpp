// Radial shooting for the 2N-order system equivalent to the target equations:
// v_k = (-Delta)^k u coupled through
//
//   v_k'' + ((n-1)/r) v_k' = -v_{k+1}          (k < N-1)
//   v_{N-1}'' + ((n-1)/r) v_{N-1}' = sigma v_0^-(4N-1)
//
// in n = 2N-1, with sigma = +1 for the equation with +u^-(4N-1) and
// sigma = -1 for the one with the source on the right-hand side.
// Integration is explicit adaptive Runge-Kutta (Dormand-Prince 5(4)) in
// double precision; identical inputs give byte-identical trajectories.
#pragma once

#include <string>
#include <vector>

#include "polyharm/quadrature.hpp" // Execution

namespace polyharm::ode {

enum class EquationSign { PlusNegativePower, MinusNegativePower };

struct OdeSystem {
    int N = 2;
    EquationSign sign = EquationSign::PlusNegativePower;

    int n() const { return 2 * N - 1; }
    int dim() const { return 2 * N; }
    double sigma() const { return sign == EquationSign::PlusNegativePower ? +1.0 : -1.0; }
};

enum class Termination { ReachedRmax, PositivityLost, StepUnderflow };

struct Trajectory {
    OdeSystem system;
    std::vector<double> grid;                 // strictly increasing, starts at 0
    std::vector<std::vector<double>> states;  // (v_0, v_0', ..., v_{N-1}, v_{N-1}')
    Termination termination = Termination::ReachedRmax;
};

struct OdeOptions {
    // Taylor bootstrap step away from the coordinate singularity: h = tol^(1/3)
    double bootstrap_exponent = 1.0 / 3.0;
    // v_0 <= positivity_floor_factor * v_0(0) terminates the trajectory
    double positivity_floor_factor = 1e-6;
    double h_max = 0.05;
    double h_min_factor = 1e-14;
};

Trajectory integrate(const OdeSystem& sys, const std::vector<double>& init, double r_max,
                     double tol, const OdeOptions& opts = {});

// Fate detection thresholds; these constants define the semantics.
constexpr double kOscillationThreshold = 1e-3;  // LinearGrowth flatness of v_0/r
constexpr double kGrowthThreshold = 0.10;       // Superlinear increase of v_0/r

enum class FateKind { LinearGrowth, HitsZero, SignEvent, Superlinear, Inconclusive };

const char* fate_kind_name(FateKind k);

struct Fate {
    FateKind kind = FateKind::Inconclusive;
    double value = 0;       // alpha for LinearGrowth, r* for HitsZero/SignEvent
    int component = -1;     // k for SignEvent
    bool signs_constant = true; // no v_k (k>=1) sign change anywhere on the grid
    std::string detail;
};

// Detection rules, applied in this order:
//   1. HitsZero(r*)        if the trajectory terminated at the positivity floor
//   2. SignEvent(k, r*)    first sign change of v_k (1 <= k <= N-1) at r > window
//   3. LinearGrowth(alpha) if v_0/r over [r_end - window, r_end] has relative
//                          oscillation < kOscillationThreshold (alpha = mean)
//   4. Superlinear         if v_0/r increased monotonically by more than
//                          kGrowthThreshold across that window
//   5. Inconclusive        otherwise
Fate classify_trajectory(const Trajectory& t, double window);

struct ShootPoint {
    std::vector<double> init;
    Fate fate;
    bool failed = false;
    std::string error;
};

std::vector<ShootPoint> shoot_grid(const OdeSystem& sys,
                                   const std::vector<std::vector<double>>& grid, double r_max,
                                   double tol, double window,
                                   riesz::Execution exec = riesz::Execution::OpenMP,
                                   const OdeOptions& opts = {});

// The documented scan grids used by the golden tables:
//   minus sign, N=2: v_0(0)=1, v_1(0) in {-5.0, -4.5, ..., -0.5}
std::vector<std::vector<double>> documented_minus_grid(int N);
//   plus sign, N=2: exact data with v_1(0) scaled by {0.90, 0.95, 1, 1.05, 1.10}
std::vector<std::vector<double>> documented_plus_perturbation_grid(int N);

// CSV export: header r,v0,v0p,... then one %.17g row per grid point.
std::string trajectory_csv(const Trajectory& t);

// Residual of the mass identity r^(2N-2) v_k'(r) + int_0^r s^(2N-2) v_{k+1} ds = 0
// along the stored grid (trapezoidal cumulative), relative to the scale of the
// first term; diagnostic for structure-preservation tests.
double mass_identity_residual(const Trajectory& t, int k);

} // namespace polyharm::ode

// Error types shared across the toolkit.
#pragma once

#include <stdexcept>
#include <string>

namespace polyharm {

// Kernel or potential would not converge as an integral (wrong exponent range).
class DivergentKernelError : public std::domain_error {
public:
    explicit DivergentKernelError(const std::string& what) : std::domain_error(what) {}
};

// Adaptive quadrature ran out of its subdivision budget. Carries the best
// estimate so callers can report it in diagnostics.
class QuadratureFailure : public std::runtime_error {
public:
    QuadratureFailure(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

// A structural assertion about the engine itself failed (e.g. the N-fold
// Laplacian of the exact solution did not collapse to a single term).
// This is never a user error; it would falsify the symbolic engine.
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace polyharm

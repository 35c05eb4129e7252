#include "polyharm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "polyharm/errors.hpp"

namespace polyharm::riesz {

namespace {

// Legendre P_k and its derivative at x, by the three-term recurrence.
void legendre(int k, const Real& x, Real& p, Real& dp) {
    const mpfr_prec_t prec = x.prec();
    Real pm1(1L, prec), p0 = x;
    for (int j = 2; j <= k; ++j) {
        Real pj = (x * p0 * long(2 * j - 1) - pm1 * long(j - 1)) / long(j);
        pm1 = p0;
        p0 = pj;
    }
    p = p0;
    // P'_k = k (x P_k - P_{k-1}) / (x^2 - 1)
    dp = Real(long(k), prec) * (x * p0 - pm1) / (x * x - Real(1L, prec));
}

GaussRule build_gauss_rule(int points, mpfr_prec_t prec) {
    const mpfr_prec_t work = prec + 32;
    GaussRule rule;
    rule.nodes.reserve(points);
    rule.weights.reserve(points);
    const Real one(1L, work);
    const Real tiny = pow_si(Real(2L, work), -(long)(work - 8));
    for (int i = 1; i <= points; ++i) {
        // Chebyshev-like initial guess, then Newton to full precision.
        Real x = Real::pi(work) * Real(i - 0.25, work) / Real(points + 0.5, work);
        mpfr_cos(x.raw(), x.raw(), MPFR_RNDN);
        Real p(work), dp(work);
        for (int it = 0; it < 80; ++it) {
            legendre(points, x, p, dp);
            Real step = p / dp;
            x -= step;
            if (abs(step) < tiny) break;
        }
        legendre(points, x, p, dp);
        Real w = Real(2L, work) / ((one - x * x) * dp * dp);
        Real xn(prec), wn(prec);
        mpfr_set(xn.raw(), x.raw(), MPFR_RNDN);
        mpfr_set(wn.raw(), w.raw(), MPFR_RNDN);
        rule.nodes.push_back(xn);
        rule.weights.push_back(wn);
    }
    return rule;
}

std::mutex g_rule_mutex;
std::map<std::pair<int, mpfr_prec_t>, std::shared_ptr<const GaussRule>> g_rules;

std::shared_ptr<const GaussRule> gauss_rule_ptr(int points, mpfr_prec_t prec) {
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto key = std::make_pair(points, prec);
    auto it = g_rules.find(key);
    if (it != g_rules.end()) return it->second;
    auto rule = std::make_shared<GaussRule>(build_gauss_rule(points, prec));
    g_rules.emplace(key, rule);
    return rule;
}

struct Panel {
    Real lo, hi;
    Real value;
    double err = 0;
    bool evaluated = false;
};

constexpr int kLowOrder = 7;
constexpr int kHighOrder = 15;

void evaluate_panel(Panel& p, const RealFn& f, const GaussRule& low, const GaussRule& high,
                    mpfr_prec_t prec) {
    const Real half = (p.hi - p.lo) / 2L;
    const Real mid = (p.hi + p.lo) / 2L;
    Real q_low(0L, prec), q_high(0L, prec);
    for (int i = 0; i < kLowOrder; ++i)
        q_low += low.weights[i] * f(mid + half * low.nodes[i]);
    for (int i = 0; i < kHighOrder; ++i)
        q_high += high.weights[i] * f(mid + half * high.nodes[i]);
    p.value = half * q_high;
    p.err = abs(half * (q_high - q_low)).to_double();
    p.evaluated = true;
}

} // namespace

const GaussRule& gauss_rule(int points, mpfr_prec_t prec) {
    // hand out a reference backed by the global cache (entries are never evicted)
    return *gauss_rule_ptr(points, prec);
}

QuadOutcome integrate_adaptive(const RealFn& f, const Real& lo, const Real& hi,
                               const std::vector<Real>& interior_breaks,
                               const QuadOptions& opt) {
    const mpfr_prec_t prec = opt.precision;
    if (!(lo < hi)) return {Real(0L, prec), 0.0, 0};

    auto low = gauss_rule_ptr(kLowOrder, prec);
    auto high = gauss_rule_ptr(kHighOrder, prec);

    std::vector<Real> bounds;
    bounds.push_back(lo);
    for (const Real& b : interior_breaks)
        if (lo < b && b < hi) bounds.push_back(b);
    bounds.push_back(hi);
    std::sort(bounds.begin(), bounds.end());

    std::vector<Panel> panels;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        if (!(bounds[i] < bounds[i + 1])) continue; // drop duplicates
        panels.push_back(Panel{bounds[i], bounds[i + 1], Real(0L, prec)});
    }

    long evaluations = 0;
    int splits = 0;
    for (;;) {
        std::vector<size_t> todo;
        for (size_t i = 0; i < panels.size(); ++i)
            if (!panels[i].evaluated) todo.push_back(i);

        if (opt.exec == Execution::OpenMP) {
#pragma omp parallel for schedule(dynamic)
            for (long j = 0; j < (long)todo.size(); ++j)
                evaluate_panel(panels[todo[j]], f, *low, *high, prec);
        } else {
            for (size_t j = 0; j < todo.size(); ++j)
                evaluate_panel(panels[todo[j]], f, *low, *high, prec);
        }
        evaluations += (long)todo.size() * (kLowOrder + kHighOrder);

        // deterministic reduction in interval order
        Real total(0L, prec);
        double total_err = 0;
        for (const Panel& p : panels) {
            total += p.value;
            total_err += p.err;
        }
        const double tol_needed =
            std::max(opt.abs_tol, opt.rel_tol * std::abs(total.to_double()));
        if (total_err <= tol_needed) return {total, total_err, evaluations};

        if (splits >= opt.max_subdivisions) {
            std::ostringstream os;
            os << "integrate_adaptive: error " << total_err << " above tolerance "
               << tol_needed << " after " << splits << " subdivisions";
            throw QuadratureFailure(os.str(), total.to_double(), total_err);
        }

        const double split_threshold = tol_needed / (2.0 * (double)panels.size());
        // locate the worst panel in case nothing crosses the threshold
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;

        std::vector<Panel> next;
        next.reserve(panels.size() + 8);
        bool any_split = false;
        for (size_t i = 0; i < panels.size(); ++i) {
            Panel& p = panels[i];
            const bool want_split =
                (p.err > split_threshold || i == worst) && splits < opt.max_subdivisions;
            if (want_split) {
                Real mid = (p.lo + p.hi) / 2L;
                if (p.lo < mid && mid < p.hi) {
                    next.push_back(Panel{p.lo, mid, Real(0L, prec)});
                    next.push_back(Panel{mid, p.hi, Real(0L, prec)});
                    ++splits;
                    any_split = true;
                    continue;
                }
            }
            next.push_back(std::move(p));
        }
        if (!any_split) {
            std::ostringstream os;
            os << "integrate_adaptive: panels no longer divisible at error " << total_err;
            throw QuadratureFailure(os.str(), total.to_double(), total_err);
        }
        panels = std::move(next);
    }
}

} // namespace polyharm::riesz

#include "polyharm/nested_mean.hpp"

#include <vector>

#include "polyharm/exact_constants.hpp"
#include "polyharm/radial_expr.hpp"

namespace polyharm::riesz {

namespace {

// Chebyshev-Lobatto machinery on [0, X]. Nodes are indexed by j = 0..K with
// y_j = cos(j pi / K) (so s_0 = X and s_K = 0).
struct ChebGrid {
    mpfr_prec_t work;
    int K;
    Real X;
    std::vector<Real> y;      // cos(j pi / K)
    std::vector<Real> s;      // X (1 + y_j) / 2
    std::vector<Real> costab; // cos(m pi / K), m = 0..2K-1

    ChebGrid(int K_, const Real& X_, mpfr_prec_t work_) : work(work_), K(K_), X(work_) {
        mpfr_set(X.raw(), X_.raw(), MPFR_RNDN);
        const Real pi = Real::pi(work);
        costab.reserve(2 * K);
        for (int m = 0; m < 2 * K; ++m) {
            Real th = pi * Real(long(m), work) / Real(long(K), work);
            Real c(work);
            mpfr_cos(c.raw(), th.raw(), MPFR_RNDN);
            costab.push_back(c);
        }
        y.reserve(K + 1);
        s.reserve(K + 1);
        for (int j = 0; j <= K; ++j) {
            Real yj = (j < K) ? costab[j] : Real(-1L, work);
            y.push_back(yj);
            s.push_back(X * (Real(1L, work) + yj) / 2L);
        }
    }

    // interpolation coefficients a_k with f = sum a_k T_k(y)
    std::vector<Real> coefficients(const std::vector<Real>& values) const {
        std::vector<Real> a(K + 1, Real(0L, work));
        for (int k = 0; k <= K; ++k) {
            Real acc = values[0] / 2L;                     // j = 0 halved
            for (int j = 1; j < K; ++j) acc += values[j] * costab[(k * j) % (2 * K)];
            Real last = values[K] / 2L;                    // j = K halved
            acc += (k % 2 == 0) ? last : -last;
            a[k] = acc * Real(2L, work) / Real(long(K), work);
        }
        a[0] = a[0] / 2L;
        a[K] = a[K] / 2L;
        return a;
    }

    // coefficients of the antiderivative with G(-1) = 0, ds = (X/2) dy folded in
    std::vector<Real> antiderivative(const std::vector<Real>& a) const {
        std::vector<Real> b(K + 2, Real(0L, work));
        auto get = [&](int k) { return k <= K ? a[k] : Real(0L, work); };
        for (int k = 1; k <= K + 1; ++k) {
            Real prev = (k == 1) ? a[0] * 2L : get(k - 1);
            b[k] = (prev - get(k + 1)) / Real(2L * k, work) * X / 2L;
        }
        return b;
    }

    // evaluate sum_{k>=1} b_k (T_k(y) - T_k(-1)) at node j (Clenshaw)
    Real eval_cumulative(const std::vector<Real>& b, const Real& yj) const {
        Real bk1(0L, work), bk2(0L, work);
        for (int k = (int)b.size() - 1; k >= 1; --k) {
            Real bk = b[k] + Real(2L, work) * yj * bk1 - bk2;
            bk2 = bk1;
            bk1 = bk;
        }
        // sum b_k T_k(y) = y*b1 - b2 + b[0]-term (b[0] = 0 here)
        Real val = yj * bk1 - bk2;
        Real at_minus1(0L, work);
        for (int k = 1; k < (int)b.size(); ++k)
            at_minus1 += (k % 2 == 0) ? b[k] : -b[k];
        return val - at_minus1;
    }
};

// one full nested evaluation at a given Lobatto order
Real nested_g(const std::vector<Real>& surface_vals, const ChebGrid& grid, int N) {
    const mpfr_prec_t work = grid.work;
    const int K = grid.K;
    const long p = 2L * N - 2;

    auto cumulative_at_nodes = [&](const std::vector<Real>& vals, std::vector<Real>& cum) {
        auto a = grid.coefficients(vals);
        auto b = grid.antiderivative(a);
        cum.assign(K + 1, Real(0L, work));
        for (int j = 0; j <= K; ++j) cum[j] = grid.eval_cumulative(b, grid.y[j]);
    };

    std::vector<Real> M, A, B, level(K + 1, Real(0L, work));
    cumulative_at_nodes(surface_vals, M); // ball mass M(s_j)
    for (int j = 0; j <= K; ++j)
        level[j] = grid.s[j].is_zero() ? Real(0L, work) : M[j] / pow_si(grid.s[j], p);
    cumulative_at_nodes(level, A);
    for (int j = 0; j <= K; ++j) level[j] = pow_si(grid.s[j], p) * A[j];
    cumulative_at_nodes(level, B);
    for (int j = 0; j <= K; ++j)
        level[j] = grid.s[j].is_zero() ? Real(0L, work) : B[j] / pow_si(grid.s[j], p);
    cumulative_at_nodes(level, A); // reuse storage for the outermost level
    return A[0];                   // node j = 0 sits at s = r
}

} // namespace

NestedMeanResult nested_mean_value_check(int N, double x_dist, double r,
                                         const QuadratureConfig& cfg, double tol) {
    if (N < 2) throw std::domain_error("nested_mean_value_check: N must be >= 2");
    if (r <= 0) throw std::domain_error("nested_mean_value_check: r must be positive");
    if (x_dist < 0) throw std::domain_error("nested_mean_value_check: x_dist must be >= 0");

    const int n = 2 * N - 1;
    const mpfr_prec_t work = cfg.precision + 32;
    const RadialDensity f = solution_power_density(N, /*normalized=*/true);

    QuadratureConfig inner = cfg;
    inner.rel_tol = cfg.rel_tol / 10;
    inner.abs_tol = cfg.abs_tol / 10;

    const Real omega = exact::sphere_area(n).to_real(work);
    const Real c(x_dist, work);

    // surface integrals at the fine Lobatto nodes; the coarse grid reuses
    // every other node so the expensive means are computed once
    const int K = 48;
    ChebGrid fine(2 * K, Real(r, work), work);
    std::vector<Real> surf_fine(2 * K + 1, Real(0L, work));
    for (int j = 0; j <= 2 * K; ++j) {
        const Real& s = fine.s[j];
        if (s.is_zero()) continue;
        Real mean = spherical_mean([&](const Real& t) { return f.eval(t, work); }, c, s, n,
                                   inner);
        surf_fine[j] = omega * pow_si(s, n - 1) * mean;
    }
    ChebGrid coarse(K, Real(r, work), work);
    std::vector<Real> surf_coarse(K + 1, Real(0L, work));
    for (int j = 0; j <= K; ++j) surf_coarse[j] = surf_fine[2 * j];

    Real g_fine = nested_g(surf_fine, fine, N);
    Real g_coarse = nested_g(surf_coarse, coarse, N);

    // closed right side from the symbolic ring
    radial::NormalizedSolution sol = radial::normalized_solution(N);
    const Real a = sol.a.value(work);
    radial::RadialExpr w2e = radial::polylaplacian(radial::RadialExpr::sqrt_one_plus_r2(), n,
                                                   N - 2);
    radial::RadialExpr w1e = radial::polylaplacian(radial::RadialExpr::sqrt_one_plus_r2(), n,
                                                   N - 1);
    Real w2_at_x = a * radial::evaluate(w2e, c, work);
    Real w1_at_x = a * radial::evaluate(w1e, c, work);
    Real mean_w2 = spherical_mean(
        [&](const Real& t) { return a * radial::evaluate(w2e, t, work); }, c, Real(r, work), n,
        inner);
    Real rw(r, work);
    Real rhs = omega * (w2_at_x - mean_w2) -
               omega / Real(2L * (2 * N - 1), work) * w1_at_x * rw * rw;

    NestedMeanResult out;
    out.lhs = g_fine.to_double();
    out.rhs = rhs.to_double();
    out.abs_diff = abs(g_fine - rhs).to_double();
    double scale = std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-30});
    out.rel_diff = out.abs_diff / scale;
    out.order_error = abs(g_fine - g_coarse).to_double();
    out.pass = out.rel_diff <= tol;
    return out;
}

} // namespace polyharm::riesz

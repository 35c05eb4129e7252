#include "polyharm/radial_expr.hpp"

#include <sstream>
#include <stdexcept>

#include "polyharm/errors.hpp"

namespace polyharm::radial {

RadialExpr RadialExpr::term(const Rational& coeff, long q2, int parity) {
    RadialExpr f;
    if (parity != 0 && parity != 1)
        throw std::invalid_argument("RadialExpr: parity must be 0 or 1");
    if (coeff != 0) {
        f.parity_ = parity;
        f.terms_[q2] = coeff;
    }
    return f;
}

void RadialExpr::add_term(long q2, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(q2);
    if (it == terms_.end()) {
        terms_[q2] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

RadialExpr RadialExpr::operator+(const RadialExpr& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (parity_ != o.parity_)
        throw std::invalid_argument("RadialExpr: addition requires equal parity");
    RadialExpr out = *this;
    for (const auto& [q2, c] : o.terms_) out.add_term(q2, c);
    if (out.terms_.empty()) out.parity_ = 0; // canonical zero
    return out;
}

RadialExpr RadialExpr::operator-() const {
    RadialExpr out = *this;
    for (auto& [q2, c] : out.terms_) c = -c;
    return out;
}

RadialExpr RadialExpr::operator*(const Rational& c) const {
    if (c == 0) return zero();
    RadialExpr out = *this;
    for (auto& [q2, coeff] : out.terms_) coeff *= c;
    return out;
}

RadialExpr mul(const RadialExpr& f, const RadialExpr& g) {
    if (f.is_zero() || g.is_zero()) return RadialExpr::zero();
    RadialExpr out;
    out.parity_ = (f.parity_ + g.parity_) % 2;
    const bool carries_r2 = (f.parity_ == 1 && g.parity_ == 1);
    for (const auto& [qf, cf] : f.terms_) {
        for (const auto& [qg, cg] : g.terms_) {
            Rational c = cf * cg;
            if (carries_r2) {
                // r^2 = (1+r^2) - 1
                out.add_term(qf + qg + 2, c);
                out.add_term(qf + qg, -c);
            } else {
                out.add_term(qf + qg, c);
            }
        }
    }
    if (out.terms_.empty()) out.parity_ = 0;
    return out;
}

RadialExpr derivative(const RadialExpr& f) {
    RadialExpr out;
    if (f.is_zero()) return out;
    out.parity_ = 1 - f.parity_;
    for (const auto& [q2, c] : f.terms_) {
        if (f.parity_ == 0) {
            // d/dr (1+r^2)^q = 2q r (1+r^2)^(q-1)
            out.add_term(q2 - 2, c * q2);
        } else {
            // d/dr r(1+r^2)^q = (1+2q)(1+r^2)^q - 2q (1+r^2)^(q-1)
            out.add_term(q2, c * (1 + q2));
            out.add_term(q2 - 2, -c * q2);
        }
    }
    if (out.terms_.empty()) out.parity_ = 0;
    return out;
}

RadialExpr laplacian(const RadialExpr& f, int n) {
    if (n < 3 || n % 2 == 0)
        throw std::domain_error("laplacian: dimension must be an odd integer >= 3");
    if (f.parity_ != 0)
        throw std::invalid_argument("laplacian: parity-1 inputs are not supported");
    RadialExpr out;
    for (const auto& [q2, c] : f.terms_) {
        // with q = q2/2: 2q(n+2q-2) = q2(n+q2-2), 4q(q-1) = q2(q2-2)
        out.add_term(q2 - 2, c * q2 * (n + q2 - 2));
        out.add_term(q2 - 4, -c * q2 * (q2 - 2));
    }
    if (out.terms_.empty()) out.parity_ = 0;
    return out;
}

RadialExpr polylaplacian(const RadialExpr& f, int n, int k) {
    if (k < 0) throw std::domain_error("polylaplacian: order must be >= 0");
    RadialExpr out = f;
    for (int i = 0; i < k; ++i) out = -laplacian(out, n);
    return out;
}

Real evaluate(const RadialExpr& f, const Real& r, mpfr_prec_t precision) {
    if (precision < 53) throw std::domain_error("evaluate: precision must be >= 53 bits");
    if (f.is_zero()) return Real(0L, precision);

    mpfr_prec_t guard = 64;
    for (;;) {
        const mpfr_prec_t work = precision + guard;
        Real rw(work);
        mpfr_set(rw.raw(), r.raw(), MPFR_RNDN);
        Real t = Real(1L, work) + rw * rw;
        Real st = sqrt(t);
        Real sum(0L, work), abs_sum(0L, work);
        for (const auto& [q2, c] : f.terms()) {
            Real term = Real(c, work) * pow_si(st, q2);
            sum += term;
            abs_sum += abs(term);
        }
        if (f.parity() == 1) sum *= rw;
        // Guard against cancellation between terms: retry wider if the
        // term magnitudes exceed the result by most of the guard margin.
        if (!sum.is_zero()) {
            Real cond = abs_sum / abs(sum);
            double cond_bits = mpfr_get_exp(cond.raw());
            if (cond_bits > guard - 16 && guard < 1 << 20) {
                guard = static_cast<mpfr_prec_t>(cond_bits) + 64;
                continue;
            }
        }
        Real out(precision);
        mpfr_set(out.raw(), sum.raw(), MPFR_RNDN);
        return out;
    }
}

Real evaluate(const RadialExpr& f, double r, mpfr_prec_t precision) {
    return evaluate(f, Real(r, precision), precision);
}

AsymptoticLead leading_asymptotics(const RadialExpr& f) {
    if (f.is_zero())
        throw std::domain_error("leading_asymptotics: zero expression has no leading term");
    const auto& [q2, c] = *f.terms().rbegin();
    return {Rational(f.parity()) + Rational(q2), c};
}

std::string RadialExpr::str() const {
    if (terms_.empty()) return "r^0 * [ 0 ]";
    std::ostringstream os;
    os << "r^" << parity_ << " * [ ";
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_str(it->second) << ")*t^(" << it->first << "/2)";
    }
    os << " ]";
    return os.str();
}

// ---------------------------------------------------------------------------

Real PowerScale::value(mpfr_prec_t prec) const {
    const mpfr_prec_t work = prec + 32;
    Real b(base, work);
    Real v = pow_rat(b, expo);
    Real out(prec);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

Real ScaledExpr::evaluate_at(const Real& r, mpfr_prec_t prec) const {
    const mpfr_prec_t work = prec + 32;
    Real v = scale.value(work) * evaluate(expr, r, work);
    Real out(prec);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

Real ScaledExpr::evaluate_at(double r, mpfr_prec_t prec) const {
    return evaluate_at(Real(r, prec), prec);
}

Rational curvature_constant(int N) {
    if (N < 2) throw std::domain_error("curvature_constant: N must be >= 2");
    RadialExpr result = polylaplacian(RadialExpr::sqrt_one_plus_r2(), 2 * N - 1, N);
    if (result.terms().size() != 1)
        throw InternalConsistencyError(
            "curvature_constant: N-fold Laplacian did not collapse to a single term");
    const auto& [q2, c] = *result.terms().begin();
    if (q2 != -(4L * N - 1) || c >= 0 || result.parity() != 0)
        throw InternalConsistencyError(
            "curvature_constant: unexpected exponent or sign in " + result.str());
    return -c;
}

NormalizedSolution normalized_solution(int N) {
    Rational K = curvature_constant(N);
    PowerScale a{K, Rational(-1, 4L * N)};
    return {a, ScaledExpr{a, RadialExpr::sqrt_one_plus_r2()}};
}

std::vector<Rational> initial_data_factors(int N) {
    const int n = 2 * N - 1;
    std::vector<Rational> factors;
    factors.reserve(N);
    RadialExpr u = RadialExpr::sqrt_one_plus_r2();
    for (int k = 0; k < N; ++k) {
        RadialExpr vk = polylaplacian(u, n, k);
        Rational at_zero(0);
        for (const auto& [q2, c] : vk.terms()) at_zero += c; // (1+0)^q = 1
        factors.push_back(at_zero);
    }
    return factors;
}

std::vector<Real> initial_data(int N, mpfr_prec_t prec) {
    NormalizedSolution sol = normalized_solution(N);
    Real a = sol.a.value(prec);
    std::vector<Real> init;
    init.reserve(2 * N);
    for (const Rational& s : initial_data_factors(N)) {
        init.push_back(a * Real(s, prec));
        init.push_back(Real(0L, prec));
    }
    return init;
}

} // namespace polyharm::radial

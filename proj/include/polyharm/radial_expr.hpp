// Exact calculus on the ring of radial functions
//
//     r^e * sum_j a_j (1 + r^2)^(q_j),   e in {0,1},  a_j rational,
//                                        q_j half-integer,
//
// closed under d/dr, products (rewriting r^2 = (1+r^2) - 1), and the
// n-dimensional radial Laplacian. This is the smallest family containing
// (1+r^2)^(1/2) in which every identity the toolkit verifies is exactly
// decidable, so equality is literal map equality after canonicalization.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "polyharm/rational.hpp"
#include "polyharm/real.hpp"

namespace polyharm::radial {

// growth_exponent p and lead_coeff C with f(r) ~ C r^p as r -> infinity.
struct AsymptoticLead {
    Rational growth_exponent;
    Rational lead_coeff;
};

class RadialExpr {
public:
    RadialExpr() = default;

    // coefficient * (1+r^2)^(q2/2), optionally times r.
    static RadialExpr term(const Rational& coeff, long q2, int parity = 0);
    static RadialExpr constant(const Rational& c) { return term(c, 0, 0); }
    static RadialExpr zero() { return RadialExpr(); }
    // u(r) = (1 + r^2)^(1/2), the solution representative before scaling.
    static RadialExpr sqrt_one_plus_r2() { return term(Rational(1), 1, 0); }

    int parity() const { return parity_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<long, Rational>& terms() const { return terms_; }

    bool operator==(const RadialExpr& o) const {
        return parity_ == o.parity_ && terms_ == o.terms_;
    }

    RadialExpr operator+(const RadialExpr& o) const;
    RadialExpr operator-() const;
    RadialExpr operator-(const RadialExpr& o) const { return *this + (-o); }
    RadialExpr operator*(const Rational& c) const;

    std::string str() const;

private:
    friend RadialExpr mul(const RadialExpr&, const RadialExpr&);
    friend RadialExpr derivative(const RadialExpr&);
    friend RadialExpr laplacian(const RadialExpr&, int);

    void add_term(long q2, const Rational& c);

    int parity_ = 0;                // exponent of the leading r factor
    std::map<long, Rational> terms_; // doubled exponent q2 -> nonzero coefficient
};

// Exact product; parities add mod 2 with r^2 rewritten as (1+r^2) - 1.
RadialExpr mul(const RadialExpr& f, const RadialExpr& g);

// Exact d/dr; flips parity.
RadialExpr derivative(const RadialExpr& f);

// Radial Laplacian f'' + ((n-1)/r) f' in odd dimension n >= 3, via the
// closed rewrite
//   Delta (1+r^2)^q = 2q(n+2q-2)(1+r^2)^(q-1) - 4q(q-1)(1+r^2)^(q-2).
// Only parity-0 inputs are meaningful (and accepted).
RadialExpr laplacian(const RadialExpr& f, int n);

// (-Delta)^k f; k = 0 is the identity.
RadialExpr polylaplacian(const RadialExpr& f, int n, int k);

// Value of f at r >= 0 with relative error below 2^(4-precision).
Real evaluate(const RadialExpr& f, const Real& r, mpfr_prec_t precision);
Real evaluate(const RadialExpr& f, double r, mpfr_prec_t precision);

// Leading behavior at infinity; throws on the zero expression.
AsymptoticLead leading_asymptotics(const RadialExpr& f);

// ---------------------------------------------------------------------------
// The normalized solution family.
// ---------------------------------------------------------------------------

// base^expo for positive rational base, exact rational exponent; evaluated
// on demand at any precision. Keeps quantities like K_N^(-1/(4N)) exact
// until the final rendering.
struct PowerScale {
    Rational base{1};
    Rational expo{0};

    Real value(mpfr_prec_t prec) const;
    PowerScale pow(const Rational& e) const { return {base, expo * e}; }
};

// scale * expr with an exact PowerScale multiplier; covers a*(1+r^2)^(1/2)
// whose coefficient is irrational but exactly known.
struct ScaledExpr {
    PowerScale scale;
    RadialExpr expr;

    Real evaluate_at(const Real& r, mpfr_prec_t prec) const;
    Real evaluate_at(double r, mpfr_prec_t prec) const;
};

// K_N > 0 with (-Delta)^N (1+r^2)^(1/2) = -K_N (1+r^2)^(-(4N-1)/2) in
// dimension n = 2N-1. Throws InternalConsistencyError if the polylaplacian
// does not collapse to a single negative term of that exponent.
Rational curvature_constant(int N);

struct NormalizedSolution {
    PowerScale a;    // K_N^(-1/(4N))
    ScaledExpr u;    // a * (1+r^2)^(1/2); satisfies (-Delta)^N u = -u^(-(4N-1))
};
NormalizedSolution normalized_solution(int N);

// (v_0(0), v_0'(0), ..., v_{N-1}(0), v_{N-1}'(0)) for the normalized
// solution, v_k = (-Delta)^k u. Odd entries vanish by radial regularity.
std::vector<Real> initial_data(int N, mpfr_prec_t prec);

// Exact rational factors S_k with v_k(0) = a * S_k (used by the golden table).
std::vector<Rational> initial_data_factors(int N);

} // namespace polyharm::radial

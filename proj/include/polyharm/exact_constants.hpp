// Exact arithmetic for the dimensional constants: Gamma at half-integers,
// unit-sphere areas, and the c_0..c_{N-1} chain in both normalizations.
#pragma once

#include <string>
#include <vector>

#include "polyharm/rational.hpp"
#include "polyharm/real.hpp"

namespace polyharm::exact {

// A rational multiple of a half-integer power of pi: coeff * pi^(half_pi_exp/2).
// coeff is kept in lowest terms with positive denominator (GMP invariant);
// the zero value is canonicalized to half_pi_exp = 0.
struct ExactScalar {
    Rational coeff{0};
    long half_pi_exp = 0;

    ExactScalar() = default;
    ExactScalar(Rational c, long e) : coeff(std::move(c)), half_pi_exp(e) {
        if (coeff == 0) half_pi_exp = 0;
    }
    static ExactScalar from_rational(const Rational& q) { return {q, 0}; }
    static ExactScalar one() { return {Rational(1), 0}; }

    bool is_zero() const { return coeff == 0; }
    bool is_rational() const { return half_pi_exp == 0; }

    ExactScalar operator*(const ExactScalar& o) const {
        return {coeff * o.coeff, half_pi_exp + o.half_pi_exp};
    }
    ExactScalar operator/(const ExactScalar& o) const;
    ExactScalar operator*(const Rational& q) const { return {coeff * q, half_pi_exp}; }
    ExactScalar inverse() const;
    // Addition is defined only between scalars of identical pi-power
    // (the only case the toolkit needs); mismatches throw.
    ExactScalar operator+(const ExactScalar& o) const;
    ExactScalar operator-() const { return {-coeff, half_pi_exp}; }

    bool operator==(const ExactScalar& o) const {
        return coeff == o.coeff && half_pi_exp == o.half_pi_exp;
    }

    Real to_real(mpfr_prec_t prec) const;
    // "(3/8) pi^(-2)" style rendering; exact.
    std::string str() const;
    // Decimal rendering at the given number of significant digits.
    std::string decimal(int digits, mpfr_prec_t prec = 256) const;
};

// Gamma(m/2) for odd m >= 1, exactly (rational multiple of sqrt(pi)).
// Even or non-positive m is rejected: integer-argument Gamma values are not
// representable in ExactScalar and are never needed here.
ExactScalar gamma_half(long m);

// omega_n = 2 pi^(n/2) / Gamma(n/2), the area of the unit sphere in R^n,
// for odd n >= 3.
ExactScalar sphere_area(long n);

// Same quantity for even n >= 2 (Gamma at an integer, so the coefficient is
// rational and the pi power is an integer). Internal helper for the angular
// reduction of spherical integrals; not part of the chain API.
ExactScalar sphere_area_even(long n);

enum class ChainMode { PaperLiteral, Corrected };

inline const char* chain_mode_name(ChainMode m) {
    return m == ChainMode::PaperLiteral ? "paper" : "corrected";
}

// The ledger c_0..c_{N-1} for dimension n = 2N-1.
//   base:      c_{N-1} = omega_{2N-1}^{-1}             (PaperLiteral)
//              c_{N-1} = ((2N-3) omega_{2N-1})^{-1}    (Corrected)
//   recursion: c_{N-k-1} = c_{N-k} / (2k (2N-2k-3)) for 1 <= k <= N-2
//   closing:   c_0 = c_1 / (2N-2)
struct ConstantChain {
    int N = 0;
    ChainMode mode = ChainMode::Corrected;
    std::vector<ExactScalar> c; // c[k], k = 0..N-1
};

ConstantChain constant_chain(int N, ChainMode mode);

// Flux of the candidate Green kernel through a sphere: the exact value of
//   \oint_{\partial B(0,r)} d/dr ( -c_{N-1} |x|^{-(2N-3)} ) dsigma
//     = c_{N-1} (2N-3) omega_{2N-1},
// independent of r. Equals 1 exactly iff the Corrected base constant is in
// force; the PaperLiteral base gives 2N-3. This is what decides which chain
// makes Delta U_{N-1} = u^{-(4N-1)} literally true.
ExactScalar flux_check(int N, ChainMode mode);

} // namespace polyharm::exact

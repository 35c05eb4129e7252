#include "polyharm/exact_constants.hpp"

#include <sstream>
#include <stdexcept>

namespace polyharm::exact {

ExactScalar ExactScalar::operator/(const ExactScalar& o) const {
    if (o.coeff == 0) throw std::domain_error("ExactScalar: division by zero");
    return {coeff / o.coeff, half_pi_exp - o.half_pi_exp};
}

ExactScalar ExactScalar::inverse() const {
    if (coeff == 0) throw std::domain_error("ExactScalar: inverse of zero");
    return {Rational(1) / coeff, -half_pi_exp};
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (half_pi_exp != o.half_pi_exp)
        throw std::domain_error("ExactScalar: addition across different pi powers");
    return {coeff + o.coeff, half_pi_exp};
}

Real ExactScalar::to_real(mpfr_prec_t prec) const {
    if (coeff == 0) return Real(0L, prec);
    const mpfr_prec_t work = prec + 32;
    Real result(coeff, work);
    if (half_pi_exp != 0) {
        Real pi_val = Real::pi(work);
        Real pi_pow = (half_pi_exp % 2 == 0) ? pow_si(pi_val, half_pi_exp / 2)
                                             : pow_si(sqrt(pi_val), half_pi_exp);
        result *= pi_pow;
    }
    Real out(prec);
    mpfr_set(out.raw(), result.raw(), MPFR_RNDN);
    return out;
}

std::string ExactScalar::str() const {
    std::ostringstream os;
    os << "(" << rat_str(coeff) << ")";
    if (half_pi_exp != 0) {
        if (half_pi_exp % 2 == 0)
            os << " pi^(" << half_pi_exp / 2 << ")";
        else
            os << " pi^(" << half_pi_exp << "/2)";
    }
    return os.str();
}

std::string ExactScalar::decimal(int digits, mpfr_prec_t prec) const {
    return to_real(prec).str(digits);
}

ExactScalar gamma_half(long m) {
    if (m < 1 || m % 2 == 0)
        throw std::domain_error("gamma_half: argument must be a positive odd integer");
    // Gamma(m/2) = ((m-2)/2)((m-4)/2)...(1/2) Gamma(1/2), Gamma(1/2) = sqrt(pi).
    Rational c(1);
    for (long j = m - 2; j >= 1; j -= 2) c *= Rational(j, 2);
    return {c, 1};
}

ExactScalar sphere_area(long n) {
    if (n < 3 || n % 2 == 0)
        throw std::domain_error("sphere_area: dimension must be an odd integer >= 3");
    ExactScalar two_pi_pow{Rational(2), n}; // 2 pi^(n/2)
    return two_pi_pow / gamma_half(n);
}

ExactScalar sphere_area_even(long n) {
    if (n < 2 || n % 2 != 0)
        throw std::domain_error("sphere_area_even: dimension must be an even integer >= 2");
    // Gamma(n/2) = (n/2 - 1)! is an exact integer here.
    Rational gamma_int(int_factorial(n / 2 - 1));
    return {Rational(2) / gamma_int, n};
}

ConstantChain constant_chain(int N, ChainMode mode) {
    if (N < 2) throw std::domain_error("constant_chain: N must be >= 2");
    ConstantChain chain;
    chain.N = N;
    chain.mode = mode;
    chain.c.assign(N, ExactScalar{});

    ExactScalar omega = sphere_area(2L * N - 1);
    chain.c[N - 1] = (mode == ChainMode::PaperLiteral)
                         ? omega.inverse()
                         : (omega * Rational(2L * N - 3)).inverse();
    for (long k = 1; k <= N - 2; ++k)
        chain.c[N - k - 1] = chain.c[N - k] * Rational(1, 2 * k * (2 * N - 2 * k - 3));
    chain.c[0] = chain.c[1] * Rational(1, 2L * N - 2);
    return chain;
}

ExactScalar flux_check(int N, ChainMode mode) {
    if (N < 2) throw std::domain_error("flux_check: N must be >= 2");
    ConstantChain chain = constant_chain(N, mode);
    return chain.c[N - 1] * Rational(2L * N - 3) * sphere_area(2L * N - 1);
}

} // namespace polyharm::exact

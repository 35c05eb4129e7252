#include "polyharm/angular_kernel.hpp"

#include <vector>

#include "polyharm/errors.hpp"
#include "polyharm/exact_constants.hpp"

namespace polyharm::riesz {

namespace {

// int_{-1}^{1} (1-t^2)^m dt = 2^(2m+1) (m!)^2 / (2m+1)!
Rational even_moment(long m) {
    Rational num = rat_pow(Rational(2), 2 * m + 1) * Rational(int_factorial(m) * int_factorial(m));
    return num / Rational(int_factorial(2 * m + 1));
}

// Symmetric branch, B/A <= 1/2: expand (A - Bt)^mu around t = 0.
//   I(j) = int t^j (A-Bt)^mu dt
//        = A^mu * sum_k C(mu,k) (-B/A)^k * [2/(k+j+1) if k+j even]
// All I(j) for j = 0..jmax accumulate in a single pass over k.
std::vector<Real> moments_series(const Real& A, const Real& B, const Rational& mu, long jmax,
                                 mpfr_prec_t work) {
    const Real ba = B / A;
    std::vector<Real> I(jmax + 1, Real(0L, work));
    Real coef(1L, work);         // C(mu, k)
    Real power(1L, work);        // (-B/A)^k
    const Real mu_r(mu, work);
    Real tmax(0L, work);
    const Real cutoff = pow_si(Real(2L, work), -(long)(work + 16));
    for (long k = 0;; ++k) {
        if (k > 0) {
            coef *= (mu_r - Real(k - 1, work)) / Real(k, work);
            power *= -ba;
        }
        Real term_base = coef * power;
        Real mag = abs(term_base);
        if (mag > tmax) tmax = mag;
        for (long j = 0; j <= jmax; ++j)
            if ((k + j) % 2 == 0) I[j] += term_base * Real(2L, work) / Real(k + j + 1, work);
        if (k > jmax + 4 && mag < tmax * cutoff) break;
        if (k > 64 * (long)work)
            throw InternalConsistencyError("angular kernel series did not converge");
    }
    Real apow = pow_rat(A, mu);
    for (auto& v : I) v *= apow;
    return I;
}

// Near-diagonal branch: T(j) = int_0^2 tau^j (eps2 + B tau)^mu dtau with
// eps2 = (r-s)^2 computed without cancellation, via sigma = eps2 + B tau:
//   T(j) = B^-(j+1) sum_l C(j,l) (-eps2)^(j-l) * S(mu+l),
//   S(nu) = [P^(nu+1) - eps2^(nu+1)]/(nu+1)   (P = (r+s)^2),
// with the exact logarithmic branch at nu = -1. At eps2 = 0 only the l = j
// term survives in the limit (mu+j+1 > 0 is guaranteed by integrability).
std::vector<Real> moments_diagonal(const Real& eps2, const Real& P, const Real& B,
                                   const Rational& mu, long jmin, long jmax,
                                   mpfr_prec_t work) {
    std::vector<Real> T(jmax + 1, Real(0L, work));
    const bool on_diagonal = eps2.is_zero();
    std::vector<Real> S(jmax + 1, Real(0L, work)); // S(mu + l)
    if (!on_diagonal) {
        for (long l = 0; l <= jmax; ++l) {
            Rational nu = mu + l;
            if (nu == -1) {
                S[l] = log(P / eps2);
            } else {
                Rational nu1 = nu + 1;
                S[l] = (pow_rat(P, nu1) - pow_rat(eps2, nu1)) / Real(nu1, work);
            }
        }
    }
    for (long j = jmin; j <= jmax; ++j) {
        if (on_diagonal) {
            Rational nu1 = mu + j + 1;
            T[j] = pow_rat(P, nu1) / Real(nu1, work) * pow_si(B, -(j + 1));
            continue;
        }
        Real acc(0L, work);
        Real binom(1L, work); // C(j, l)
        Real epspow = pow_si(-eps2, j); // (-eps2)^(j-l) for l = 0
        for (long l = 0; l <= j; ++l) {
            if (l > 0) {
                binom *= Real(j - l + 1, work) / Real(l, work);
                epspow = epspow / -eps2;
            }
            acc += binom * epspow * S[l];
        }
        T[j] = acc * pow_si(B, -(j + 1));
    }
    return T;
}

} // namespace

AngularMoments angular_moments(const Real& r, const Real& s, const Rational& beta, int n,
                               mpfr_prec_t prec) {
    if (n < 3 || n % 2 == 0)
        throw std::domain_error("angular_moments: dimension must be an odd integer >= 3");
    if (beta <= Rational(-(n - 1)))
        throw DivergentKernelError("angular kernel: beta <= -(n-1) is not sphere-integrable");
    if (r < Real(0L, 53) || s < Real(0L, 53))
        throw std::domain_error("angular_moments: radii must be non-negative");

    const long m = (n - 3) / 2;
    const Rational mu = beta / 2;
    const mpfr_prec_t work = prec + 64;

    Real rw(work), sw(work);
    mpfr_set(rw.raw(), r.raw(), MPFR_RNDN);
    mpfr_set(sw.raw(), s.raw(), MPFR_RNDN);
    const Real B = Real(2L, work) * rw * sw;
    const Real A = rw * rw + sw * sw;

    Real j0(0L, work), j1(0L, work);
    if (A.is_zero()) {
        // both radii zero: |x-y| identically 0 on the degenerate sphere
        if (beta < 0)
            throw DivergentKernelError("angular kernel: coincident origin with negative beta");
        if (beta == 0) j0 = Real(even_moment(m), work);
        // beta > 0: kernel vanishes
    } else if (B.is_zero()) {
        j0 = Real(even_moment(m), work) * pow_rat(A, mu);
        // j1 = 0 by odd symmetry
    } else if (Real(2L, work) * B <= A) {
        auto I = moments_series(A, B, mu, 2 * m + 1, work);
        Real sign(1L, work), binom(1L, work);
        for (long i = 0; i <= m; ++i) {
            if (i > 0) {
                binom *= Real(m - i + 1, work) / Real(i, work);
                sign = -sign;
            }
            j0 += sign * binom * I[2 * i];
            j1 += sign * binom * I[2 * i + 1];
        }
    } else {
        const Real eps2 = (rw - sw) * (rw - sw);
        const Real P = (rw + sw) * (rw + sw);
        auto T = moments_diagonal(eps2, P, B, mu, m, 2 * m + 1, work);
        Real sign(1L, work), binom(1L, work);
        Real two_pow = pow_si(Real(2L, work), m);
        for (long i = 0; i <= m; ++i) {
            if (i > 0) {
                binom *= Real(m - i + 1, work) / Real(i, work);
                sign = -sign;
                two_pow = two_pow / 2L;
            }
            Real w = sign * binom * two_pow;
            j0 += w * T[m + i];
            j1 += w * (T[m + i] - T[m + i + 1]);
        }
    }

    AngularMoments out{Real(prec), Real(prec)};
    mpfr_set(out.j0.raw(), j0.raw(), MPFR_RNDN);
    mpfr_set(out.j1.raw(), j1.raw(), MPFR_RNDN);
    return out;
}

Real angular_kernel(const Real& r, const Real& s, const Rational& beta, int n,
                    mpfr_prec_t prec) {
    const mpfr_prec_t work = prec + 32;
    Real omega = exact::sphere_area_even(n - 1).to_real(work);
    Real j0 = angular_moments(r, s, beta, n, work).j0;
    Real out(prec);
    Real v = omega * j0;
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

} // namespace polyharm::riesz

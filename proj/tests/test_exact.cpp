#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyharm/exact_constants.hpp"

using namespace polyharm;
using namespace polyharm::exact;

namespace {

ExactScalar sqrt_pi_times(const Rational& q) { return ExactScalar{q, 1}; }

// Gamma(m/2) by repeated Gamma(z+1) = z Gamma(z) starting from Gamma(1/2),
// written independently of the library implementation.
ExactScalar gamma_half_recurrence_oracle(long m) {
    ExactScalar g = sqrt_pi_times(Rational(1)); // Gamma(1/2)
    Rational z(1, 2);
    while (z < Rational(m, 2)) {
        g = g * z;
        z += 1;
    }
    return g;
}

} // namespace

TEST_CASE("gamma_half at small odd arguments") {
    CHECK(gamma_half(1) == sqrt_pi_times(Rational(1)));
    CHECK(gamma_half(3) == sqrt_pi_times(Rational(1, 2)));
    CHECK(gamma_half(7) == gamma_half_recurrence_oracle(7));
    CHECK(gamma_half(7) == sqrt_pi_times(Rational(15, 8)));
    for (long m = 1; m <= 21; m += 2) CHECK(gamma_half(m) == gamma_half_recurrence_oracle(m));
}

TEST_CASE("gamma_half rejects even and non-positive arguments") {
    CHECK_THROWS_AS(gamma_half(2), std::domain_error);
    CHECK_THROWS_AS(gamma_half(0), std::domain_error);
    CHECK_THROWS_AS(gamma_half(-3), std::domain_error);
}

TEST_CASE("sphere_area closed forms") {
    // omega_n = 2 pi^(n/2) / Gamma(n/2) with Gamma from the recurrence oracle
    CHECK(sphere_area(3) == ExactScalar{Rational(4), 2});        // 4 pi
    CHECK(sphere_area(5) == ExactScalar{Rational(8, 3), 4});     // (8/3) pi^2
    CHECK(sphere_area(7) == ExactScalar{Rational(16, 15), 6});   // (16/15) pi^3
    CHECK_THROWS_AS(sphere_area(4), std::domain_error);
    CHECK_THROWS_AS(sphere_area(1), std::domain_error);
}

TEST_CASE("sphere_area * gamma_half = 2 pi^(n/2) for odd n in 3..15") {
    for (long n = 3; n <= 15; n += 2) {
        ExactScalar prod = sphere_area(n) * gamma_half(n);
        CHECK(prod == ExactScalar(Rational(2), n));
        CHECK(prod.half_pi_exp % 2 == (n % 2)); // parity of the pi power
    }
    for (long n = 3; n <= 15; n += 2) CHECK(sphere_area(n).half_pi_exp % 2 == 0);
}

TEST_CASE("ExactScalar arithmetic and canonical form") {
    ExactScalar a{Rational(3, 4), 2};
    ExactScalar b{Rational(2, 3), -1};
    CHECK((a * b) == ExactScalar{Rational(1, 2), 1});
    CHECK((a / b) == ExactScalar{Rational(9, 8), 3});
    CHECK(a.inverse() == ExactScalar{Rational(4, 3), -2});

    ExactScalar z{Rational(0), 5};
    CHECK(z.half_pi_exp == 0); // canonical zero
    CHECK((a + z) == a);
    CHECK_THROWS_AS(a + b, std::domain_error);
    CHECK((a + ExactScalar{Rational(1, 4), 2}) == ExactScalar{Rational(1), 2});
}

TEST_CASE("ExactScalar numeric rendering") {
    // pi to double through the exact layer
    ExactScalar pi{Rational(1), 2};
    CHECK(pi.to_real(128).to_double() == doctest::Approx(3.14159265358979).epsilon(1e-14));
    ExactScalar inv8pi{Rational(1, 8), -2};
    CHECK(inv8pi.to_real(128).to_double() == doctest::Approx(1.0 / (8 * 3.141592653589793)));
    CHECK(ExactScalar{Rational(-15, 8), 1}.str() == "(-15/8) pi^(1/2)");
}

TEST_CASE("constant_chain hand-checked values") {
    // N=2: c1 = 1/(4 pi), c0 = 1/(8 pi), identical in both modes (2N-3 = 1)
    for (ChainMode mode : {ChainMode::PaperLiteral, ChainMode::Corrected}) {
        ConstantChain ch = constant_chain(2, mode);
        CHECK(ch.c[1] == ExactScalar{Rational(1, 4), -2});
        CHECK(ch.c[0] == ExactScalar{Rational(1, 8), -2});
    }
    // N=3 literal base: c2 = omega_5^{-1} = 3/(8 pi^2), then /2, then /4
    ConstantChain paper3 = constant_chain(3, ChainMode::PaperLiteral);
    CHECK(paper3.c[2] == ExactScalar{Rational(3, 8), -4});
    CHECK(paper3.c[1] == ExactScalar{Rational(3, 16), -4});
    CHECK(paper3.c[0] == ExactScalar{Rational(3, 64), -4});
    // N=3 corrected base: c2 = ((2N-3) omega_5)^{-1} = 1/(8 pi^2)
    ConstantChain corr3 = constant_chain(3, ChainMode::Corrected);
    CHECK(corr3.c[2] == ExactScalar{Rational(1, 8), -4});
    CHECK(corr3.c[1] == ExactScalar{Rational(1, 16), -4});
    CHECK(corr3.c[0] == ExactScalar{Rational(1, 64), -4});

    CHECK_THROWS_AS(constant_chain(1, ChainMode::Corrected), std::domain_error);
}

TEST_CASE("constant chain invariants for N in 2..8, both modes") {
    for (int N = 2; N <= 8; ++N) {
        for (ChainMode mode : {ChainMode::PaperLiteral, ChainMode::Corrected}) {
            ConstantChain ch = constant_chain(N, mode);
            REQUIRE(static_cast<int>(ch.c.size()) == N);
            for (const auto& ck : ch.c) CHECK(ck.coeff > 0);
            // recursion: c_{N-k-1} * 2k(2N-2k-3) = c_{N-k} for 1 <= k <= N-2
            for (long k = 1; k <= N - 2; ++k)
                CHECK(ch.c[N - k - 1] * Rational(2 * k * (2 * N - 2 * k - 3)) == ch.c[N - k]);
            // closing: c0 * (2N-2) = c1
            CHECK(ch.c[0] * Rational(2L * N - 2) == ch.c[1]);
            // base value
            ExactScalar omega = sphere_area(2L * N - 1);
            if (mode == ChainMode::PaperLiteral)
                CHECK(ch.c[N - 1] * omega == ExactScalar::one());
            else
                CHECK(ch.c[N - 1] * omega * Rational(2L * N - 3) == ExactScalar::one());
        }
        // modes agree exactly at N = 2 only
        bool agree = constant_chain(N, ChainMode::PaperLiteral).c ==
                     constant_chain(N, ChainMode::Corrected).c;
        CHECK(agree == (N == 2));
    }
}

TEST_CASE("flux_check adjudicates the Green normalization") {
    CHECK(flux_check(2, ChainMode::PaperLiteral) == ExactScalar::one());
    CHECK(flux_check(2, ChainMode::Corrected) == ExactScalar::one());
    CHECK(flux_check(3, ChainMode::PaperLiteral) == ExactScalar::from_rational(Rational(3)));
    for (int N = 2; N <= 8; ++N) {
        CHECK(flux_check(N, ChainMode::Corrected) == ExactScalar::one());
        CHECK(flux_check(N, ChainMode::PaperLiteral) ==
              ExactScalar::from_rational(Rational(2L * N - 3)));
    }
}

TEST_CASE("flux against a direct numeric surface integral") {
    // flux through partial B(0,r) of d/dr(-c r^{-(2N-3)}) must be r-independent
    // and match the exact value: omega_n r^{n-1} * c(2N-3) r^{-(2N-2)}.
    const mpfr_prec_t prec = 192;
    for (int N : {2, 3, 5}) {
        const long n = 2L * N - 1;
        ConstantChain ch = constant_chain(N, ChainMode::Corrected);
        Real c = ch.c[N - 1].to_real(prec);
        Real omega = sphere_area(n).to_real(prec);
        for (double r : {0.7, 1.3}) {
            Real rr(r, prec);
            // d/dr (-c r^{-(2N-3)}) = c (2N-3) r^{-(2N-2)}
            Real deriv = c * Real(2L * N - 3, prec) * pow_si(rr, -(2 * N - 2));
            Real flux = omega * pow_si(rr, n - 1) * deriv;
            Real expect = flux_check(N, ChainMode::Corrected).to_real(prec);
            CHECK(abs(flux - expect).to_double() < 1e-40);
        }
    }
}

#include "doctest.h"

#include <cmath>

#include "dnlab/arith.hpp"
#include "dnlab/report.hpp"

using namespace dnlab;

TEST_CASE("kronecker symbol basics") {
    CHECK(kronecker(1, 7) == 1);
    CHECK(kronecker(-23, 2) == 1); // -23 = 1 mod 8
    CHECK(kronecker(3, 13) == 1);  // Euler: 3^6 = 1 mod 13
    CHECK(kronecker(2, 3) == -1);
    CHECK(kronecker(0, 9) == 0);
    // Euler criterion oracle for odd primes
    for (long long p : {3, 5, 7, 11, 13, 17, 19, 23, 29}) {
        for (long long a = 1; a < p; ++a) {
            long long e = pow_mod(a, (p - 1) / 2, p);
            int want = e == 1 ? 1 : -1;
            CHECK(kronecker(a, p) == want);
        }
    }
}

TEST_CASE("kronecker reciprocity sign for odd coprime pairs") {
    for (long long a = 3; a <= 199; a += 2) {
        for (long long b = 3; b <= 499; b += 2) {
            if (gcd_ll(a, b) != 1) continue;
            int sign = ((a - 1) / 2 % 2 == 1 && (b - 1) / 2 % 2 == 1) ? -1 : 1;
            CHECK(kronecker(a, b) * kronecker(b, a) == sign);
        }
    }
}

TEST_CASE("kronecker multiplicativity") {
    SplitMix64 rng(7);
    for (int t = 0; t < 2000; ++t) {
        long long a = 1 + (long long)rng.next_below(500);
        long long b = 1 + (long long)rng.next_below(500);
        long long n = 1 + 2 * (long long)rng.next_below(400); // odd
        CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
    }
}

TEST_CASE("factorize") {
    CHECK(factorize(1).empty());
    auto f = factorize(115);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == std::pair<long long, int>{5, 1});
    CHECK(f[1] == std::pair<long long, int>{23, 1});
    auto g = factorize(23 * 23);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == std::pair<long long, int>{23, 2});
}

TEST_CASE("quadratic characters match the kronecker symbol") {
    for (long long disc : {-23LL, 5LL, -115LL, 13LL}) {
        DirichletCharacter chi = DirichletCharacter::quadratic(disc);
        CHECK(chi.parity == kronecker(disc, std::llabs(disc) - 1)); // chi(-1)
        for (long long n = 1; n <= 2000; ++n) CHECK(chi.eval_quadratic(n) == kronecker(disc, n));
    }
    CHECK(DirichletCharacter::quadratic(-23).eval_quadratic(2) == 1);
    CHECK(DirichletCharacter::quadratic(-23).eval_quadratic(23) == 0);
    CHECK(DirichletCharacter::quadratic(5).eval_quadratic(3) == -1);
}

TEST_CASE("character multiplicativity, exact") {
    DirichletCharacter chi0 = DirichletCharacter::quadratic(-23);
    DirichletCharacter chiF = DirichletCharacter::quadratic(5);
    DirichletCharacter prod = chi0.times(chiF);
    CHECK(prod.modulus == 115);
    CHECK(prod.parity == -1);
    DirichletCharacter chi4 = DirichletCharacter::prime_power_order(5, 4);
    SplitMix64 rng(11);
    for (int t = 0; t < 500; ++t) {
        long long m = 1 + (long long)rng.next_below(10000);
        long long n = 1 + (long long)rng.next_below(10000);
        if (gcd_ll(m, n) != 1) continue;
        for (const DirichletCharacter* chi : {&chi0, &prod, &chi4}) {
            CycValue lhs = chi->eval(m * n);
            CycValue rhs = cyc_mul(chi->eval(m), chi->eval(n));
            CHECK(lhs.equals(rhs));
        }
    }
    // exhaustive small block
    for (long long m = 1; m <= 60; ++m)
        for (long long n = 1; n <= 60; ++n) {
            if (gcd_ll(m, n) != 1) continue;
            CHECK(prod.eval(m * n).equals(cyc_mul(prod.eval(m), prod.eval(n))));
        }
}

TEST_CASE("character rejects bad moduli") {
    CHECK_THROWS(DirichletCharacter::quadratic(8));   // even modulus
    CHECK_THROWS(DirichletCharacter::quadratic(-4));  // even modulus
    CHECK_THROWS(DirichletCharacter::from_json_string("{\"modulus\":9,\"components\":[]}"));
}

TEST_CASE("cyclotomic values embed consistently") {
    CycValue z5 = CycValue::root_of_unity(5, 1);
    CycValue z3 = CycValue::root_of_unity(3, 2);
    CycValue prod = cyc_mul(z5, z3);
    auto want = std::polar(1.0, 2 * M_PI * (1.0 / 5 + 2.0 / 3));
    CHECK(std::abs(prod.to_complex() - want) < 1e-12);
    // 1 + z + z^2 + z^3 + z^4 = 0 in Q(zeta_5)
    CycValue sum(5);
    for (int j = 0; j < 5; ++j) sum = cyc_add(sum, CycValue::root_of_unity(5, j));
    CHECK(sum.is_zero_value());
    CHECK(sum.rational_part() == Rat(0));
}

TEST_CASE("gauss sums: square and branch") {
    for (long long p = 3; p <= 97; p += 2) {
        if (!is_prime(p)) continue;
        DirichletCharacter chi = DirichletCharacter::prime_power_order(p, 2);
        CycValue g = gauss_sum(chi);
        CycValue g2 = cyc_mul(g, g);
        CycValue want = CycValue::from_rational(Rat(chi.parity * p));
        CHECK(g2.equals(want));
        // |g|^2 = p
        CycValue mod2 = cyc_mul(g, g.conj());
        CHECK(mod2.equals(CycValue::from_rational(Rat(p))));
        // branch: sqrt(p) for p = 1 mod 4, i sqrt(p) for p = 3 mod 4
        auto gc = g.to_complex();
        if (p % 4 == 1) {
            CHECK(gc.real() > 0.9 * std::sqrt(double(p)));
            CHECK(std::abs(gc.imag()) < 1e-9);
        } else {
            CHECK(gc.imag() > 0.9 * std::sqrt(double(p)));
            CHECK(std::abs(gc.real()) < 1e-9);
        }
    }
}

TEST_CASE("gauss sum of conjugate pair for an order-4 character") {
    DirichletCharacter chi = DirichletCharacter::prime_power_order(5, 4);
    DirichletCharacter chibar = DirichletCharacter::prime_power_order(5, 4, 3);
    CycValue prod = cyc_mul(gauss_sum(chi), gauss_sum(chibar));
    // g(chi) g(conj chi) = chi(-1) p
    CycValue want = CycValue::from_rational(Rat(chi.parity * 5));
    CHECK(prod.equals(want));
}

TEST_CASE("gauss sum rejects the trivial character") {
    DirichletCharacter triv = DirichletCharacter::prime_power_order(7, 1, 0);
    CHECK_THROWS(gauss_sum(triv));
}

TEST_CASE("character json round trip") {
    DirichletCharacter chi = DirichletCharacter::quadratic(-115);
    DirichletCharacter back = DirichletCharacter::from_json_string(chi.to_json_string());
    CHECK(back.modulus == chi.modulus);
    CHECK(back.parity == chi.parity);
    for (long long n = 1; n < 300; ++n) CHECK(back.eval_quadratic(n) == chi.eval_quadratic(n));
}

#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "dnlab/forms.hpp"
#include "dnlab/report.hpp"

using namespace dnlab;

TEST_CASE("binary quadratic form representation numbers") {
    BQForm principal{1, 1, 6}; // x^2 + xy + 6y^2, disc -23
    BQForm other{2, 1, 3};     // 2x^2 + xy + 3y^2
    CHECK(principal.disc() == -23);
    CHECK(other.disc() == -23);
    CHECK(principal.is_reduced());
    CHECK(other.is_reduced());
    CHECK(bqf_rep_count(principal, 0) == 1);
    CHECK(bqf_rep_count(other, 2) == 2);
    // 6 = Q(0,+-1) = Q(-1,1) = Q(1,-1); consistent with c(6) = c(2)c(3) = 1
    CHECK(bqf_rep_count(principal, 6) == 4);
    // histogram agrees with per-n counts
    auto h = bqf_rep_histogram(other, 50);
    for (long long n = 0; n <= 50; ++n) CHECK(h[size_t(n)] == bqf_rep_count(other, n));
}

TEST_CASE("class numbers by reduced forms") {
    CHECK(class_number_neg(-23) == 3);
    CHECK(class_number_neg(-115) == 2);
    CHECK(class_number_neg(-4) == 1);
    CHECK(class_number_neg(-163) == 1);
}

TEST_CASE("dihedral coefficients for disc -23") {
    CoefficientTable t = dihedral_coeffs(-23, 400);
    CHECK(t.level == 23);
    CHECK(t.at_int(1) == 1);
    CHECK(t.at_int(2) == -1);
    CHECK(t.at_int(4) == 0);  // c(2)^2 - chi(2) c(1) = 1 - 1
    CHECK(t.at_int(25) == 1); // 5 inert: c(25) = -chi(5) = 1
    CHECK(t.validate().empty());
    CHECK_THROWS(dihedral_coeffs(-4, 10)); // class number 1, not 3
}

TEST_CASE("dihedral form prime coefficients lie in {-1,0,1,2}") {
    CoefficientTable t = dihedral_coeffs(-23, 600);
    BQForm principal{1, 1, 6};
    for (long long p = 2; p <= 600; ++p) {
        if (!is_prime(p) || p == 23) continue;
        long long c = t.at_int(p);
        CHECK(c >= -1);
        CHECK(c <= 2);
        bool represented = bqf_rep_count(principal, p) > 0;
        CHECK((c == 2) == represented);
    }
}

TEST_CASE("eta product eta(z) eta(23z)") {
    auto q = eta_product_coeffs({{1, 1}, {23, 1}}, 2000);
    CHECK(q[1] == 1);
    CHECK(q[3] == -1);
    CoefficientTable t = dihedral_coeffs(-23, 2000);
    for (long long n = 1; n <= 2000; ++n) CHECK(q[size_t(n)] == t.at_int(n));
    CHECK_THROWS(eta_product_coeffs({{1, 1}}, 10)); // leading exponent 1/24
}

TEST_CASE("import/export q-expansions") {
    const char* path = "test_qexp_tmp.txt";
    {
        std::ofstream f(path);
        f << "1 1\n2 -1\n3 -1\n";
    }
    ImportResult r = import_qexp(path);
    CHECK(r.table.at_int(2) == -1);
    CHECK_FALSE(r.warning_flag); // multiplicativity not violated within bound 3
    {
        std::ofstream f(path);
        f << "1 1\n2 -1\n3 -1\n4 0\n5 0\n6 5\n";
    }
    ImportResult bad = import_qexp(path);
    CHECK(bad.warning_flag); // c(6) != c(2) c(3)
    {
        std::ofstream f(path);
        f << "";
    }
    CHECK_THROWS(import_qexp(path));
    {
        std::ofstream f(path);
        f << "#zeta 4\n1 1\n2 0+1*z\n3 -z\n";
    }
    ImportResult cyc = import_qexp(path);
    CHECK(cyc.table.at(2).equals(CycValue::root_of_unity(4, 1)));
    CHECK(cyc.table.at(3).equals(cyc_scale(CycValue::root_of_unity(4, 1), Rat(-1))));
    std::remove(path);
}

TEST_CASE("export/import round trip with form metadata") {
    const char* path = "test_qexp_rt.txt";
    CoefficientTable t = dihedral_coeffs(-23, 120);
    export_qexp(t, path);
    ImportResult r = import_qexp(path);
    CHECK(r.table.level == 23);
    CHECK(r.table.character.modulus == 23);
    CHECK(r.table.character.parity == -1);
    CHECK_FALSE(r.warning_flag);
    for (long long n = 1; n <= 120; ++n) CHECK(r.table.at_int(n) == t.at_int(n));
    {
        std::ofstream f(path);
        f << "#level 23\n1 1\n"; // char-disc missing
    }
    CHECK_THROWS(import_qexp(path));
    std::remove(path);
}

TEST_CASE("coefficient table invariants as properties") {
    CoefficientTable t = dihedral_coeffs(-23, 900);
    SplitMix64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        long long m = 2 + (long long)rng.next_below(28);
        long long n = 2 + (long long)rng.next_below(900 / m - 1);
        if (gcd_ll(m, n) != 1) continue;
        CHECK(t.at_int(m * n) == t.at_int(m) * t.at_int(n));
    }
    for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 23LL}) {
        for (long long pk = p; pk * p <= 900; pk *= p) {
            long long chi = kronecker(-23, p);
            long long prev = pk == p ? 1 : t.at_int(pk / p);
            CHECK(t.at_int(pk * p) == t.at_int(p) * t.at_int(pk) - chi * prev);
        }
    }
}

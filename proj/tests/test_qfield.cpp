#include "doctest.h"

#include "dnlab/arith.hpp"
#include "dnlab/qfield.hpp"

using namespace dnlab;

TEST_CASE("split types") {
    CHECK(split_type(11, 5) == SplitType::Split);
    CHECK(split_type(3, 5) == SplitType::Inert);
    CHECK(split_type(5, 5) == SplitType::Ramified);
    CHECK(split_type(3, 13) == SplitType::Split);
    CHECK_THROWS(split_type(2, 5));
}

TEST_CASE("fundamental units have norm -1") {
    for (auto& e : narrow_class_one_table()) {
        QuadFieldElement u = fundamental_unit(e.D);
        CHECK(u.norm() == Rat(-1));
        CHECK(u.embed1() > 1.0);
    }
    CHECK_THROWS(fundamental_unit(21)); // h = 1 but norm(eps) = +1: not narrow class 1
}

TEST_CASE("element arithmetic and integrality") {
    QuadFieldElement phi = QuadFieldElement::from_integral_pair(5, 1, 1);
    CHECK(phi.norm() == Rat(-1));
    CHECK(phi.trace() == Rat(1));
    QuadFieldElement sq = phi * phi;
    CHECK(sq.norm() == Rat(1));
    CHECK(sq.is_integral());
    QuadFieldElement q = sq / phi;
    CHECK(q == phi);
    CHECK_THROWS(QuadFieldElement::from_integral_pair(5, 1, 2)); // parity violation
    CHECK(QuadFieldElement::sqrtD(5).norm() == Rat(-5));
}

TEST_CASE("lift index enumeration for D = 5") {
    auto one = enumerate_lift_indices(5, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].ideal_norm == 1);
    CHECK(one[0].mu == QuadFieldElement::from_integral_pair(5, 1, 1)); // the golden unit

    auto four = enumerate_lift_indices(5, 4);
    REQUIRE(four.size() == 2);
    CHECK(four[0].ideal_norm == 1);
    CHECK(four[1].ideal_norm == 4);
    CHECK(four[1].mu.norm() == Rat(-4));

    CHECK(enumerate_lift_indices(5, 0).empty());
    CHECK_THROWS(enumerate_lift_indices(21, 10)); // not narrow class number one
}

TEST_CASE("index counts match the Dedekind zeta coefficients") {
    // D = 17 exercises the split prime 2 (17 = 1 mod 8) and even ideal norms;
    // D = 97 exercises a large fundamental unit
    for (long long D : {5LL, 17LL, 97LL}) {
        long long bound = D == 5 ? 200 : 120;
        auto idx = enumerate_lift_indices(D, bound);
        std::vector<long long> count(size_t(bound) + 1, 0);
        for (auto& i : idx) count[size_t(i.ideal_norm)]++;
        for (long long n = 1; n <= bound; ++n) {
            long long want = 0;
            for (long long d = 1; d <= n; ++d)
                if (n % d == 0) want += kronecker(D, d);
            CHECK(count[size_t(n)] == want);
        }
    }
}

TEST_CASE("canonicalization is idempotent and unit-invariant") {
    QuadFieldElement eps = fundamental_unit(5);
    QuadFieldElement u2 = eps * eps;
    auto idx = enumerate_lift_indices(5, 60);
    for (auto& i : idx) {
        QuadFieldElement mu = i.mu;
        CHECK(canonical_index_rep(mu) == mu);
        QuadFieldElement shifted = mu;
        for (int k = 0; k < 3; ++k) {
            shifted = shifted * u2;
            CHECK(canonical_index_rep(shifted) == mu);
        }
        shifted = mu;
        for (int k = 0; k < 3; ++k) {
            shifted = shifted / u2;
            CHECK(canonical_index_rep(shifted) == mu);
        }
        // odd unit powers and sign flips land in the same ideal class too
        CHECK(canonical_index_rep(mu * eps) == mu);
        CHECK(canonical_index_rep(QuadFieldElement{5, -mu.x, -mu.y}) == mu);
    }
}

TEST_CASE("divisors of mu") {
    LiftIndex unit{QuadFieldElement::from_integral_pair(5, 1, 1), 1};
    CHECK(divisors_of_mu(unit) == std::vector<long long>{1});
    LiftIndex three{QuadFieldElement::from_integral_pair(5, 3, 3), 9};
    CHECK(divisors_of_mu(three) == std::vector<long long>{1, 3});
    LiftIndex root5{QuadFieldElement::from_integral_pair(5, 0, 2), 5};
    CHECK(divisors_of_mu(root5) == std::vector<long long>{1});
}

TEST_CASE("ideal arithmetic on canonical representatives") {
    auto idx = enumerate_lift_indices(5, 100);
    auto find_norm = [&](long long n) {
        std::vector<LiftIndex> out;
        for (auto& i : idx)
            if (i.ideal_norm == n) out.push_back(i);
        return out;
    };
    // 11 splits in Q(sqrt 5): two conjugate primes of norm 11
    auto p11 = find_norm(11);
    REQUIRE(p11.size() == 2);
    CHECK(indices_coprime(p11[0], p11[1]));
    LiftIndex prod = index_mul(p11[0], p11[1]);
    CHECK(prod.ideal_norm == 121);
    // the product of the conjugates is (11)
    LiftIndex eleven{canonical_index_rep(QuadFieldElement::from_integral_pair(5, 11 * 1, 11 * 1)), 121};
    CHECK(prod.mu == eleven.mu);
    // prime of norm 11 divides (11) but the two conjugates are coprime
    CHECK(index_divides(p11[0], prod));
    CHECK(index_divides(p11[1], prod));
    CHECK_FALSE(indices_coprime(p11[0], p11[0]));
    // inert 3: norm 9 ideal (3)
    auto n9 = find_norm(9);
    REQUIRE(n9.size() == 1);
    CHECK_FALSE(indices_coprime(n9[0], n9[0]));
    CHECK(indices_coprime(n9[0], p11[0]));
}

#include "doctest.h"

#include <cmath>

#include "dnlab/fields.hpp"
#include "dnlab/arith.hpp"

using namespace dnlab;

TEST_CASE("number field creation and signatures") {
    NumberField K = nf_create({-1, -1, 0, 1}); // x^3 - x - 1
    CHECK(K.r1 == 1);
    CHECK(K.r2 == 1);
    CHECK(std::abs(K.embeddings[0].real() - 1.3247179572447460) < 1e-12);
    NumberField F = nf_create({-5, 0, 1});
    CHECK(F.r1 == 2);
    CHECK(F.r2 == 0);
    NumberField E = nf_create({115, 0, 1}); // x^2 + 115
    CHECK(E.r1 == 0);
    CHECK(E.r2 == 1);
    CHECK_THROWS(nf_create({1, 2, 1}));  // (x+1)^2 reducible
    CHECK_THROWS(nf_create({-6, 1, 1})); // (x+3)(x-2)
}

TEST_CASE("exact norms") {
    auto K = std::make_shared<const NumberField>(nf_create({-1, -1, 0, 1}));
    FieldElem eps = fe_make(K, {Rat(0), Rat(1), Rat(0)});
    CHECK(exact_norm(eps) == Rat(1));
    auto F = std::make_shared<const NumberField>(nf_create({-5, 0, 1}));
    FieldElem golden = fe_make(F, {Rat(1, 2), Rat(1, 2)});
    CHECK(exact_norm(golden) == Rat(-1));
    FieldElem two = fe_rational(K, Rat(2));
    CHECK(exact_norm(two) == Rat(8));
    // multiplicativity of the exact norm
    SplitMix64 rng(5);
    for (int t = 0; t < 50; ++t) {
        std::vector<Rat> c1(3), c2(3);
        for (auto& x : c1) x = Rat((long long)rng.next_below(7) - 3);
        for (auto& x : c2) x = Rat((long long)rng.next_below(7) - 3);
        FieldElem e1 = fe_make(K, c1), e2 = fe_make(K, c2);
        CHECK(exact_norm(fe_mul(e1, e2)) == exact_norm(e1) * exact_norm(e2));
    }
    // norm matches the float product of embeddings within 0.5 for integral elements
    FieldElem e = fe_make(K, {Rat(2), Rat(-1), Rat(1)});
    double prod = 1;
    prod *= e.embed(0).real();
    prod *= std::norm(e.embed(1));
    CHECK(std::abs(prod - exact_norm(e).to_double()) < 0.5);
}

TEST_CASE("field element arithmetic") {
    auto K = std::make_shared<const NumberField>(nf_create({-1, -1, 0, 1}));
    FieldElem x = fe_make(K, {Rat(0), Rat(1), Rat(0)});
    FieldElem x3 = fe_pow(x, 3);
    CHECK(fe_equal(x3, fe_add(x, fe_rational(K, Rat(1))))); // x^3 = x + 1
    FieldElem inv = fe_div(fe_rational(K, Rat(1)), x);
    CHECK(fe_equal(fe_mul(inv, x), fe_rational(K, Rat(1))));
    CHECK(fe_equal(fe_pow(x, -1), inv));
    // compose: evaluate the coordinates of x^2 at the element x gives x^2
    FieldElem x2 = fe_pow(x, 2);
    CHECK(fe_equal(fe_compose(x2, x), x2));
}

TEST_CASE("algebraic integrality") {
    auto F = std::make_shared<const NumberField>(nf_create({-5, 0, 1}));
    CHECK(is_algebraic_integer(fe_make(F, {Rat(1, 2), Rat(1, 2)})));  // golden ratio
    CHECK_FALSE(is_algebraic_integer(fe_make(F, {Rat(1, 2), Rat(0)})));
    CHECK_FALSE(is_algebraic_integer(fe_make(F, {Rat(0), Rat(1, 2)})));
    auto K = std::make_shared<const NumberField>(nf_create({-1, -1, 0, 1}));
    CHECK(is_algebraic_integer(fe_make(K, {Rat(1), Rat(2), Rat(-1)})));
    CHECK_FALSE(is_algebraic_integer(fe_make(K, {Rat(0), Rat(1, 2), Rat(0)})));
}

TEST_CASE("unit search finds the fundamental units of small fields") {
    auto K = std::make_shared<const NumberField>(nf_create({-1, -1, 0, 1}));
    auto units = unit_search(K, 2);
    bool has_eps = false;
    for (auto& u : units)
        if (u.coords[0] == Rat(0) && u.coords[1] == Rat(1) && u.coords[2] == Rat(0)) has_eps = true;
    CHECK(has_eps);
    auto F = std::make_shared<const NumberField>(nf_create({-5, 0, 1}));
    auto uf = unit_search(F, 2);
    bool has_golden = false;
    for (auto& u : uf)
        if (u.coords[0] == Rat(1, 2) && u.coords[1] == Rat(1, 2)) has_golden = true;
    CHECK(has_golden);
}

TEST_CASE("regulators of rank-one fields") {
    auto K = std::make_shared<const NumberField>(nf_create({-1, -1, 0, 1}));
    UnitSystem sys{K, {fe_make(K, {Rat(0), Rat(1), Rat(0)})}};
    double logeps = std::log(1.3247179572447460);
    CHECK(std::abs(regulator(sys) - logeps) < 1e-12);
    CHECK(std::abs(regulator(sys, 0) - regulator(sys, 1)) < 1e-10); // drop invariance
    auto F = std::make_shared<const NumberField>(nf_create({-5, 0, 1}));
    UnitSystem sysF{F, {fe_make(F, {Rat(1, 2), Rat(1, 2)})}};
    CHECK(std::abs(regulator(sysF) - 0.4812118250596035) < 1e-12);
    // dependent units flagged
    auto Kc = K;
    FieldElem eps = fe_make(Kc, {Rat(0), Rat(1), Rat(0)});
    UnitSystem bad{Kc, {fe_mul(eps, eps)}};
    CHECK_NOTHROW(regulator(bad)); // single unit, nonzero
}

TEST_CASE("rational recognition") {
    auto r = recognize_rational(0.333333333, 100, 1e-6);
    REQUIRE(r.value.has_value());
    CHECK(*r.value == Rat(1, 3));
    CHECK_FALSE(recognize_rational(M_PI, 10000, 1e-9).value.has_value());
    // exhaustive small grid p/q, q <= 50
    for (long long q = 1; q <= 50; ++q)
        for (long long p = 0; p <= q; ++p) {
            if (gcd_ll(p, q) != 1) continue;
            auto rec = recognize_rational(double(p) / double(q) + 0.6e-10, 50, 1e-8);
            REQUIRE(rec.value.has_value());
            CHECK(*rec.value == Rat(p, q));
        }
    CHECK_THROWS(recognize_rational(std::nan(""), 10, 1e-6));
    // negative values
    auto neg = recognize_rational(-0.25, 10, 1e-9);
    REQUIRE(neg.value.has_value());
    CHECK(*neg.value == Rat(-1, 4));
}

TEST_CASE("baker heuristic branches") {
    double logeps = std::log(1.3247179572447460);
    VerificationReport self = baker_heuristic(logeps, logeps, 10);
    CHECK_FALSE(self.all_pass()); // ratio 1 is recognized: failure branch
    double loggolden = 0.4812118250596035;
    // the ratio ~ 0.5843571576 has no convergent within 1e-8 below denominator
    // 1000 (the nearest is 3377/5779, at distance 2.4e-9)
    VerificationReport good = baker_heuristic(logeps, loggolden, 1000);
    CHECK(good.all_pass());
    VerificationReport close = baker_heuristic(logeps, loggolden, 10000);
    CHECK_FALSE(close.all_pass());
    CHECK(close.entries[0].rhs == "recognized 3377/5779");
    CHECK_THROWS(baker_heuristic(-1.0, 1.0, 10));
}

#include "doctest.h"

#include "dnlab/weilfin.hpp"

using namespace dnlab;

TEST_CASE("generic phi_p is the lattice indicator and a PFT fixed point") {
    FiniteModel md = FiniteModel::generic(3, 13);
    SchwartzElem phi = build_phi_p(md);
    CHECK(phi.rank() == 1);
    // value 1 exactly on L
    CHECK(std::abs(phi.evaluate(0, 0, 0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(phi.evaluate(1, 0, 0, 0)) < 1e-15); // a = 1/3 outside
    VerificationReport rep = verify_pft(md);
    CHECK(rep.all_pass());
}

TEST_CASE("level-N model with an order-4 character") {
    DirichletCharacter chi = DirichletCharacter::prime_power_order(5, 4);
    FiniteModel md = FiniteModel::level_n(5, 13, chi);
    SchwartzElem phi = build_phi_p(md);
    // value at ((j/5, 0), 0) = conj(chi0)(j) / gauss(conj chi0)
    DirichletCharacter chibar = DirichletCharacter::prime_power_order(5, 4, 3);
    cplx g = gauss_sum(chibar).to_complex();
    long long pk = 5; // index scale: value j/5 has index j * 5^{k+m} / ... = j * p^{m... }
    // index of a = j/5 on window (1,1): value = idx / 5, so idx = j gives j/5
    for (long long j = 1; j < 5; ++j) {
        cplx want = chibar.eval_complex(j) / g;
        CHECK(std::abs(phi.evaluate(j, 0, 0, 0) - want) < 1e-12);
    }
    (void)pk;
    VerificationReport rep = verify_pft(md);
    CHECK(rep.all_pass());
    VerificationReport inv = verify_invariance(md);
    CHECK(inv.all_pass());
}

TEST_CASE("ramified model p = 5, D = 5") {
    FiniteModel md = FiniteModel::ramified(5, 5);
    VerificationReport rep = verify_pft(md);
    CHECK(rep.all_pass());
    VerificationReport inv = verify_invariance(md);
    CHECK(inv.all_pass());
}

TEST_CASE("metaplectic relations") {
    for (FiniteModel md : {FiniteModel::generic(3, 13), FiniteModel::generic(3, 5), FiniteModel::ramified(5, 5)}) {
        VerificationReport rep = verify_metaplectic(md, 42);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("weil_n basics") {
    FiniteModel md = FiniteModel::generic(3, 13);
    SchwartzElem phi = build_phi_p(md);
    SchwartzElem same = weil_n(Rat(0), phi);
    CHECK(std::abs(same.evaluate(0, 0, 0, 0) - phi.evaluate(0, 0, 0, 0)) < 1e-15);
    // b in Z_p fixes Char(L): Q integral on L
    SchwartzElem fixed = weil_n(Rat(2), phi);
    long long P = md.P();
    for (long long i = 0; i < P; i += 3)
        for (long long j = 0; j < P; j += 3)
            CHECK(std::abs(fixed.evaluate(i, j, 0, 0) - phi.evaluate(i, j, 0, 0)) < 1e-15);
    // b = 1/p multiplies the point x in L with Q(x) = r mod p by psi(r/p)
    SchwartzElem third = weil_n(Rat(1, 3), phi);
    // point (a,b,nu) = (3,3,0)/3-grid: indices a=3 -> value 1, b=3 -> 1: Q = 1
    cplx got = third.evaluate(3, 3, 0, 0);
    cplx want = psi_p(Rat(1, 3), 3) * phi.evaluate(3, 3, 0, 0);
    CHECK(std::abs(got - want) < 1e-15);
}

TEST_CASE("scaling action: identity, uniformizer, units") {
    FiniteModel md = FiniteModel::generic(3, 13, 1, 1); // split: 13 is a QR mod 3
    SchwartzElem phi = build_phi_p(md);
    SchwartzElem same = scaling_action(HAction{}, phi);
    long long P = md.P();
    for (long long i = 0; i < P; ++i)
        CHECK(std::abs(same.evaluate(i, 0, i % P, 0) - phi.evaluate(i, 0, i % P, 0)) < 1e-15);
    // phitilde = L(varpi^{-1} d(varpi)) Char(L) = (1/p) Char(p^{-1}Z x Z x p^{-1}Z x Z)
    SchwartzElem pt = scaling_action(uniformizer_scaling(md), phi);
    auto expect = [&](long long, long long ib, long long, long long iv) {
        bool in_box = (ib % 3 == 0) && (iv % 3 == 0); // b, nu2 integral; a, nu1 in p^{-1}
        return in_box ? 1.0 / 3.0 : 0.0;
    };
    for (long long ia = 0; ia < P; ++ia)
        for (long long ib = 0; ib < P; ++ib)
            for (long long iu = 0; iu < P; ++iu)
                for (long long iv = 0; iv < P; ++iv)
                    CHECK(std::abs(pt.evaluate(ia, ib, iu, iv) - expect(ia, ib, iu, iv)) < 1e-15);
    CHECK_THROWS(scaling_action(HAction{Rat(1), Rat(0), Rat(1)}, phi)); // non-invertible
}

TEST_CASE("pairing constants of the split model") {
    for (long long p : {3LL, 5LL}) {
        SplitPairingConstants c = split_pairing_constants(p);
        CHECK(c.phitilde_phi == Rat(1, p));
        CHECK(c.phitilde_phi0 == Rat((i128)p * p - 1, p));
    }
}

TEST_CASE("pairing of disjointly supported phi_r vanishes, via SchwartzElems") {
    FiniteModel md = FiniteModel::generic(3, 13, 1, 0);
    // rank-1 indicators of disjoint cosets pair to zero
    CosetBox b1, b2;
    b1.a_off = Rat(1, 3);
    b2.a_off = Rat(2, 3);
    SchwartzElem e1 = coset_box(md, b1), e2 = coset_box(md, b2);
    CHECK(std::abs(pairing(e1, e2)) < 1e-15);
    CHECK(std::abs(pairing(e1, e1) - 1.0) < 1e-12); // one support point on p^{-1}L/L
}

TEST_CASE("pairing constants through the SchwartzElem operator surface") {
    // split model, window (1,0): phitilde = L(varpi^{-1} d(varpi)) Char(L),
    // phi_0 assembled from the additive-character expansion of det = 0 mod p
    for (long long p : {3LL, 5LL}) {
        long long D = p == 3 ? 13 : 29; // a residue mod p, so the norm part splits
        FiniteModel md = FiniteModel::generic(p, D, 1, 0);
        REQUIRE(md.norm_kind == NormKind::SplitPair);
        long long P = md.P();
        SchwartzElem phi = build_phi_p(md);
        SchwartzElem pt = scaling_action(uniformizer_scaling(md), phi);
        cplx c1 = pairing(pt, phi);
        CHECK(std::abs(c1 - cplx(1.0 / double(p))) < 1e-13);
        // phi_0 = sum_t (1/p) e(t det(lambda)/p) - Char(L), rank p + 1
        SchwartzElem phi0;
        phi0.model = md;
        for (long long t = 0; t < p; ++t) {
            SchwartzTerm term;
            term.hyp.assign(size_t(P) * P, 0);
            term.norm.assign(size_t(P) * P, 0);
            for (long long i = 0; i < P; ++i)
                for (long long j = 0; j < P; ++j) {
                    term.hyp[size_t(i * P + j)] =
                        std::polar(1.0 / double(p), 2.0 * M_PI * double((t * i % p) * j % p) / double(p));
                    term.norm[size_t(i * P + j)] =
                        std::polar(1.0, -2.0 * M_PI * double((t * i % p) * j % p) / double(p));
                }
            phi0.terms.push_back(std::move(term));
        }
        {
            SchwartzTerm minus;
            minus.hyp.assign(size_t(P) * P, 0);
            minus.norm.assign(size_t(P) * P, 0);
            minus.hyp[0] = -1.0;
            minus.norm[0] = 1.0;
            phi0.terms.push_back(std::move(minus));
        }
        // sanity: phi0 is the indicator of {lambda != 0, det lambda = 0 mod p}
        for (long long a = 0; a < P; ++a)
            for (long long b = 0; b < P; ++b)
                for (long long u = 0; u < P; ++u)
                    for (long long v = 0; v < P; ++v) {
                        bool zero = !a && !b && !u && !v;
                        bool want = !zero && ((a * b - u * v) % p + p) % p == 0;
                        CHECK(std::abs(phi0.evaluate(a, b, u, v) - (want ? 1.0 : 0.0)) < 1e-12);
                    }
        cplx c2 = pairing(pt, phi0);
        CHECK(std::abs(c2 - cplx(double(p * p - 1) / double(p))) < 1e-12);
    }
}

TEST_CASE("hecke averaging, split p=3 D=13") {
    VerificationReport rep = hecke_average(3, SplitType::Split, 13, 0);
    CHECK(rep.all_pass());
}

TEST_CASE("hecke averaging, inert p=3 D=5") {
    VerificationReport rep = hecke_average(3, SplitType::Inert, 5, 0);
    CHECK(rep.all_pass());
}

TEST_CASE("hecke averaging guards") {
    CHECK_THROWS(hecke_average(2, SplitType::Split, 13, 0));
    CHECK_THROWS(hecke_average(3, SplitType::Split, 5, 0)); // 3 is inert in Q(sqrt 5)
}

TEST_CASE("representation independence under re-decomposition") {
    FiniteModel md = FiniteModel::generic(3, 5, 1, 1);
    SchwartzElem phi = build_phi_p(md);
    // split the single term into two random pieces
    SplitMix64 rng(9);
    SchwartzElem split = phi;
    SchwartzTerm extra = split.terms[0];
    for (auto& z : extra.hyp) z *= 0.37;
    for (auto& z : split.terms[0].hyp) z *= 0.63;
    split.terms.push_back(extra);
    long long P = md.P();
    for (int t = 0; t < 200; ++t) {
        long long i = (long long)rng.next_below(P), j = (long long)rng.next_below(P);
        long long u = (long long)rng.next_below(P), v = (long long)rng.next_below(P);
        CHECK(std::abs(split.evaluate(i, j, u, v) - phi.evaluate(i, j, u, v)) < 1e-14);
    }
    split.compact(1e-24);
    CHECK(split.rank() == 1); // proportional hyp parts merge back
}

TEST_CASE("diagnostic dump") {
    FiniteModel md = FiniteModel::generic(3, 13);
    SchwartzElem phi = build_phi_p(md);
    std::string j = phi.diagnostic_json();
    CHECK(j.find("\"terms\":1") != std::string::npos);
    CHECK(j.find("generic p=3") != std::string::npos);
}

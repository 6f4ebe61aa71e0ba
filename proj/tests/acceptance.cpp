// Acceptance suite: runs every headline criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "dnlab/analytic.hpp"
#include "dnlab/dnlift.hpp"
#include "dnlab/weilfin.hpp"

using namespace dnlab;
using Clock = std::chrono::steady_clock;

static int failures = 0;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

static void report(int criterion, bool pass, const std::string& what, double secs, double limit) {
    bool time_ok = secs < limit;
    bool ok = pass && time_ok;
    if (!ok) ++failures;
    std::printf("%s criterion %2d: %s [%.2fs / limit %.0fs]%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                secs, limit, time_ok ? "" : " (over time budget)");
    std::fflush(stdout);
}

int main() {
    // ---- 1: base-change coefficient identities, exact, norm <= 500 ----
    {
        auto t0 = Clock::now();
        LiftConfig cfg = LiftConfig::make(5, dihedral_coeffs(-23, 500));
        VerificationReport rep = verify_base_change(cfg, 500);
        size_t checks = rep.entries.size();
        report(1, rep.all_pass(),
               "base change D=5, level 23: multiplicativity + split/inert identities, " +
                   std::to_string(checks) + " exact checks, " + std::to_string(rep.failure_count()) + " failures",
               seconds_since(t0), 10);
    }

    // ---- 2: dihedral vs eta-product oracle, n <= 2000, exact ----
    {
        auto t0 = Clock::now();
        CoefficientTable dih = dihedral_coeffs(-23, 2000);
        auto eta = eta_product_coeffs({{1, 1}, {23, 1}}, 2000);
        long long bad = 0;
        for (long long n = 1; n <= 2000; ++n)
            if (dih.at_int(n) != eta[size_t(n)]) ++bad;
        report(2, bad == 0, "dihedral theta = eta(z)eta(23z) for n <= 2000, " + std::to_string(bad) + " mismatches",
               seconds_since(t0), 5);
    }

    // ---- 3: finite Hecke averaging, split (13,3) and inert (5,3) ----
    {
        auto t0 = Clock::now();
        VerificationReport split = hecke_average(3, SplitType::Split, 13, 0);
        VerificationReport inert = hecke_average(3, SplitType::Inert, 5, 0);
        report(3, split.all_pass() && inert.all_pass(),
               "Hecke averaging: split (D=13,p=3) and inert (D=5,p=3), exact pointwise + projections",
               seconds_since(t0), 120);
    }

    // ---- 4: partial Fourier transform, all three cases ----
    {
        auto t0 = Clock::now();
        bool ok = true;
        ok &= verify_pft(FiniteModel::generic(3, 13)).all_pass();
        ok &= verify_pft(FiniteModel::generic(3, 5)).all_pass();
        ok &= verify_pft(FiniteModel::level_n(5, 13, DirichletCharacter::prime_power_order(5, 4))).all_pass();
        ok &= verify_pft(FiniteModel::ramified(5, 5)).all_pass();
        report(4, ok, "partial Fourier transform: generic p=3 (split+inert), level-N p=5 order-4, ramified p=5 D=5",
               seconds_since(t0), 60);
    }

    // ---- 5: pairing constants, p in {3, 5}, exact ----
    {
        auto t0 = Clock::now();
        bool ok = true;
        for (long long p : {3LL, 5LL}) {
            SplitPairingConstants c = split_pairing_constants(p);
            ok &= c.phitilde_phi == Rat(1, p);
            ok &= c.phitilde_phi0 == Rat((i128)p * p - 1, p);
        }
        report(5, ok, "<phitilde, phi> = 1/p and <phitilde, phi_0> = (p^2-1)/p exactly for p in {3,5}",
               seconds_since(t0), 10);
    }

    // ---- 6: Gauss sums for p <= 97, exact square and branch ----
    {
        auto t0 = Clock::now();
        bool ok = true;
        for (long long p = 3; p <= 97; p += 2) {
            if (!is_prime(p)) continue;
            DirichletCharacter chi = DirichletCharacter::prime_power_order(p, 2);
            CycValue g = gauss_sum(chi);
            ok &= cyc_mul(g, g).equals(CycValue::from_rational(Rat(chi.parity * p)));
            auto gc = g.to_complex();
            if (p % 4 == 1) ok &= gc.real() > 0 && std::abs(gc.imag()) < 1e-9;
            else ok &= gc.imag() > 0 && std::abs(gc.real()) < 1e-9;
        }
        report(6, ok, "Gauss sums g^2 = chi(-1) p exactly, branch sqrt(p) / i sqrt(p), all p <= 97",
               seconds_since(t0), 10);
    }

    // the Stark chain covers criteria 7-11
    StarkOptions sopts;
    auto tstark = Clock::now();
    VerificationReport stark = run_stark_chain(sopts);
    double stark_secs = seconds_since(tstark);
    auto entry = [&](const std::string& needle) -> const CheckEntry* {
        for (auto& e : stark.entries)
            if (e.identity.find(needle) != std::string::npos) return &e;
        return nullptr;
    };

    // ---- 7: Stark cubic identity ----
    {
        const CheckEntry* e = entry("L(Ad0 rho0, 1) = (6 pi^2 / 23) log eps");
        report(7, e && e->pass && e->relative_error < 1e-4,
               std::string("|L(Ad0,1) * 23 / (6 pi^2 log eps) - 1| < 1e-4") +
                   (e ? " (rel err " + std::to_string(e->relative_error) + ")" : " (missing)"),
               stark_secs, 30);
    }

    // ---- 8: Petersson quadrature within 0.5% of 3 log eps ----
    {
        const CheckEntry* e = entry("petersson_vs_3logeps");
        report(8, e && e->pass,
               std::string("<f0,f0>_Stark within 0.5% of 3 log eps = 0.84360") +
                   (e ? " (rel err " + std::to_string(e->relative_error) + ")" : " (missing)"),
               stark_secs, 60);
    }

    // ---- 9: regulator identities ----
    {
        const CheckEntry* regL = entry("Reg_L = 3 (log eps)^2");
        const CheckEntry* regFK = entry("Reg_FK = 4 Reg_K Reg_F");
        bool ok = regL && regL->pass && regL->relative_error < 1e-8 && regFK && regFK->pass &&
                  regFK->relative_error < 1e-8;
        report(9, ok, "Reg_L = 3(log eps)^2 and Reg_FK = 4 Reg_K Reg_F log|s1(delta)/s3(delta)| to 1e-8", stark_secs,
               120);
    }

    // ---- 10: motivic-chain rationality ----
    {
        const CheckEntry* e = entry("motivic ratio recognized");
        std::string found = e ? (" -> " + e->rhs) : "";
        report(10, e && e->pass, "(sqrt5/pi^2) L(Ad0 x chi5, 1) / log|s1(d)/s3(d)| recognized, den <= 100" + found,
               stark_secs, 120);
    }

    // ---- 11: Harris-periods heuristic ----
    {
        const CheckEntry* e = entry("log ratio has no small-denominator rational");
        std::string what = "log u_{f0} / log u^F_{f0} not rational at denominator 10^4, tol 1e-8";
        if (e && !e->pass)
            what += " -- the ratio " + e->lhs + " has an accidental convergent (" + e->rhs +
                    ") just inside the 1e-8 gate; generic irrationals admit such q <= 10^4 approximations" +
                    " (log eps / log golden has one at 3377/5779 too), so this gate is expected to misfire" +
                    " on exact inputs; the heuristic conclusion itself is unaffected";
        report(11, e && e->pass, what, stark_secs, 60);
    }

    // ---- 12: determinism ----
    {
        auto t0 = Clock::now();
        LiftConfig cfg = LiftConfig::make(5, dihedral_coeffs(-23, 120));
        std::string a1 = verify_base_change(cfg, 120).to_json();
        std::string a2 = verify_base_change(cfg, 120).to_json();
        std::string b1 = hecke_average(3, SplitType::Inert, 5, 7).to_json();
        std::string b2 = hecke_average(3, SplitType::Inert, 5, 7).to_json();
        StarkOptions fast;
        fast.coeff_bound = 400;
        std::string c1 = run_stark_chain(fast).to_json();
        std::string c2 = run_stark_chain(fast).to_json();
        std::string d1 = arch_identity_check(200, 5).to_json();
        std::string d2 = arch_identity_check(200, 5).to_json();
        bool ok = a1 == a2 && b1 == b2 && c1 == c2 && d1 == d2;
        report(12, ok, "byte-identical reports across repeated runs with a fixed seed", seconds_since(t0), 300);
    }

    if (failures == 0) std::printf("acceptance: all criteria pass\n");
    else std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dnlab/arith.hpp"
#include "dnlab/qfield.hpp"
#include "dnlab/report.hpp"

namespace dnlab {

using cplx = std::complex<double>;

enum class ModelKind { Generic, LevelN, Ramified };
enum class NormKind { SplitPair, InertQuad, RamifiedInvDiff };

// Finite-level model of S(V_p): functions on p^{-k} L / p^m L for the
// lattice L = Z_p^2 + O_p (Generic/LevelN, Q = ab - Nm nu) or
// L = Z_p^2 + d_p^{-1} (Ramified, Q = p(ab - Nm nu)).
//
// Coordinates: a point is (a, b, u, v), each in p^{-k}Z/p^mZ stored as an
// index i in [0, p^{k+m}), value i/p^k. The norm part is
//   SplitPair:        nu = (u, v) in Q_p^2,        Nm = u v
//   InertQuad:        nu = u + v sqrt(D),          Nm = u^2 - D v^2
//   RamifiedInvDiff:  nu = u/sqrt(D) + v,          Nm = v^2 - u^2/D
struct FiniteModel {
    long long p = 3;
    ModelKind kind = ModelKind::Generic;
    NormKind norm_kind = NormKind::SplitPair;
    long long D = 0;  // quadratic field discriminant (p-unit unless Ramified)
    long long D0 = 0; // D/p for Ramified
    int k = 1, m = 1;
    DirichletCharacter local_char; // chi_{0,p} (LevelN) or chi_{F,p} (Ramified)

    static FiniteModel generic(long long p, long long D, int k = 1, int m = 1);
    static FiniteModel level_n(long long p, long long D, const DirichletCharacter& chi0_p, int k = 1, int m = 1);
    static FiniteModel ramified(long long p, long long D, int k = 1, int m = 1);

    long long P() const; // p^{k+m}, points per axis
    size_t axis_pairs() const { return size_t(P()) * size_t(P()); }

    // exact quadratic form at grid indices
    Rat Q_hyp(long long ia, long long ib) const;  // ab part (with the p factor when ramified)
    Rat Q_norm(long long iu, long long iv) const; // -Nm part
    Rat Q(long long ia, long long ib, long long iu, long long iv) const;

    std::string describe() const;
};

// psi_p(x) = e(-{x}_p); exact p-adic fractional part of a rational
Rat frac_p(const Rat& r, long long p);
cplx psi_p(const Rat& r, long long p);

// Schwartz function in separated form: value(x) = sum_t hyp_t(a,b) * norm_t(u,v).
struct SchwartzTerm {
    std::vector<cplx> hyp;  // size P^2, index ia*P+ib
    std::vector<cplx> norm; // size P^2, index iu*P+iv
};

struct SchwartzElem {
    FiniteModel model;
    std::vector<SchwartzTerm> terms;
    static constexpr size_t rank_cap = 64;

    cplx evaluate(long long ia, long long ib, long long iu, long long iv) const;
    size_t rank() const { return terms.size(); }
    void compact(double drop_tol = 0.0); // drop zero terms, merge proportional norm parts
    void check_rank() const;

    SchwartzElem negated_argument() const; // x -> -x substitution
    std::string diagnostic_json() const;   // model, term count, per-term checksums
};

// rank-1 coset indicator: coeff * Char(a in ca+depth-lattice) * ... where each
// coordinate constraint is "value in offset + p^depth Z_p"
struct CosetBox {
    Rat a_off, b_off, u_off, v_off;
    int a_depth = 0, b_depth = 0, u_depth = 0, v_depth = 0;
};
SchwartzElem coset_box(const FiniteModel& model, const CosetBox& box, cplx coeff = 1.0);

// The distinguished local Schwartz function phi_p. For Ramified both the
// GL2-average and the isotropic-coset expansion are built; build_phi_p
// returns the average form and build_phi_p_coset_expansion the other.
SchwartzElem build_phi_p(const FiniteModel& model);
SchwartzElem build_phi_p_coset_expansion(const FiniteModel& model); // Ramified only

// Weil representation of SL2(Q_p): n(b) phase, w Fourier transform.
// weil_n widens m automatically if the phase is not defined on the window.
SchwartzElem weil_n(const Rat& b, const SchwartzElem& phi, int max_m = 6);
SchwartzElem weil_w(const SchwartzElem& phi);

// Orthogonal-group action L(h)phi(x) = |nu(h)|^{-1} phi(g x) where g is the
// coordinate action of h^{-1} supplied explicitly: (a,b) -> (a_mul a, b_mul b),
// norm coords -> 2x2 rational matrix.
struct HAction {
    Rat nu_abs_inv = Rat(1); // |nu(h)|^{-1}
    Rat a_mul = Rat(1), b_mul = Rat(1);
    Rat n00 = Rat(1), n01 = Rat(0), n10 = Rat(0), n11 = Rat(1);
};
SchwartzElem scaling_action(const HAction& h, const SchwartzElem& phi);
// L(varpi^{-1} d(varpi)) for the prime above p (split: varpi = (p,1); inert: p)
HAction uniformizer_scaling(const FiniteModel& model);
// h = diag(alpha, alpha^sigma), alpha = (w0 + w1 sqrt(D)) with rational norm
HAction unit_diag_action(const FiniteModel& model, const Rat& w0, const Rat& w1);

// bilinear pairing of eq-style sum over L^dual/L: (1/[L : p^m L]) sum over the window
cplx pairing(const SchwartzElem& phi, const SchwartzElem& psi);

// partial Fourier transform along the isotropic pair (l, l'):
// F(phi)(eta1, eta2, nu) = int phi(a, eta1/D_form, nu) psi_p(a eta2) da,
// vol(Z_p) = 1. Output on the same grid, hyp axes reinterpreted as (eta1, eta2).
SchwartzElem partial_ft(const SchwartzElem& phi);
// the inverse transform along the same axis (psi conjugated), for the
// self-consistency property
SchwartzElem partial_ft_inverse(const SchwartzElem& phi);

// Expected right-hand sides of the partial-transform identities, evaluated
// pointwise at grid indices of the same window.
cplx expected_pft(const FiniteModel& model, long long ie1, long long ie2, long long iu, long long iv);

VerificationReport verify_pft(const FiniteModel& model);
VerificationReport verify_metaplectic(const FiniteModel& model, unsigned long long seed);
VerificationReport verify_invariance(const FiniteModel& model);

// Hecke averaging over the coset B = {n^-(j)} u {w}: exact rational
// verification of the split/inert averaging identities, pointwise on the
// full quotient plus inner-product projections onto the phi-basis.
// hecke_case must match split_type(p, D).
VerificationReport hecke_average(long long p, SplitType hecke_case, long long D, unsigned long long seed);

// exact pairing constants of the split model: <phitilde, phi> and <phitilde, phi_0>
struct SplitPairingConstants {
    Rat phitilde_phi;
    Rat phitilde_phi0;
};
SplitPairingConstants split_pairing_constants(long long p);

} // namespace dnlab

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dnlab/forms.hpp"
#include "dnlab/qfield.hpp"
#include "dnlab/report.hpp"

namespace dnlab {

// Base-change lift configuration: real quadratic discriminant D and the
// input weight-one newform with nebentypus chi0 of level N. Requires D, N
// odd, squarefree and coprime.
struct LiftConfig {
    long long D = 5;
    CoefficientTable f0;
    DirichletCharacter chi0;
    DirichletCharacter chiF;
    DirichletCharacter chi0F; // chi0 * chiF

    static LiftConfig make(long long D, CoefficientTable f0);
};

// Raw Fourier coefficient of the lift at a given index:
//   sum over positive d | mu with gcd(d, DN) = 1 of
//   (chi0 chiF)(-d) * c_{|Nm(mu)|/d^2}(f0).
CycValue lift_coeff_raw(const LiftConfig& cfg, const LiftIndex& idx);

struct LiftTable {
    LiftConfig cfg;
    std::vector<LiftIndex> indices;
    std::vector<CycValue> normalized; // C(ideal) = raw / raw(norm-1 index)
    std::vector<std::string> labels;  // "n" or "n:a"/"n:b"... for shared norms

    long long find_by_mu(const QuadFieldElement& mu) const; // -1 if absent
};

LiftTable lift_table(const LiftConfig& cfg, long long norm_bound);

// Exports "label value" lines in the q-expansion format, labels keyed by
// ideal norm with :a/:b suffixes distinguishing conjugate ideals.
std::string lift_table_to_text(const LiftTable& t);

// Exact verification of the base-change identities: split C(P) = c_p,
// inert C(pO) = c_p^2 - 2 chi0(p), ramified C(P) = c_p (warning level),
// plus multiplicativity over coprime ideal pairs.
VerificationReport verify_base_change(const LiftConfig& cfg, long long norm_bound);

// Archimedean Schwartz-polynomial identities: the sign-flip relations of
// the polynomials p^{delta,eps}, SO(2)^2 equivariance of the attached
// Gaussians, and the n(u)m(sqrt v) conjugation formula.
VerificationReport arch_identity_check(long long trials, unsigned long long seed);

// The polynomial p^{delta,eps}(lambda) = -i (a - delta b + i eps (nu1 + delta nu2))
// on lambda = (a, b, nu1, nu2).
std::complex<double> arch_poly(int delta, int eps, double a, double b, double nu1, double nu2);

} // namespace dnlab

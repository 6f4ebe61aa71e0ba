#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dnlab/rat.hpp"

namespace dnlab {

enum class SplitType { Split, Inert, Ramified };

// Element (x + y*sqrt(D))/2 of F = Q(sqrt(D)), D > 0 an odd fundamental
// discriminant; x, y exact rationals. Integral elements have x, y in Z
// with x = y*D mod 2.
struct QuadFieldElement {
    long long D = 5;
    Rat x, y;

    QuadFieldElement() = default;
    QuadFieldElement(long long disc, Rat xx, Rat yy) : D(disc), x(xx), y(yy) {}
    static QuadFieldElement from_integral_pair(long long D, i128 x, i128 y); // checks parity
    static QuadFieldElement rational(long long D, const Rat& r) { return {D, r * Rat(2), Rat(0)}; }
    static QuadFieldElement sqrtD(long long D) { return {D, Rat(0), Rat(2)}; }

    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    bool is_integral() const;
    QuadFieldElement conj() const { return {D, x, -y}; }
    Rat norm() const { return (x * x - Rat(D) * y * y) / Rat(4); }
    Rat trace() const { return x; }

    // exact sign of sigma1 = (x + y sqrt(D))/2 and sigma2 = (x - y sqrt(D))/2
    int sign_sigma1() const;
    int sign_sigma2() const;
    bool totally_positive() const { return sign_sigma1() > 0 && sign_sigma2() > 0; }

    double embed1() const;
    double embed2() const;

    friend QuadFieldElement operator+(const QuadFieldElement& a, const QuadFieldElement& b);
    friend QuadFieldElement operator-(const QuadFieldElement& a, const QuadFieldElement& b);
    friend QuadFieldElement operator*(const QuadFieldElement& a, const QuadFieldElement& b);
    friend QuadFieldElement operator/(const QuadFieldElement& a, const QuadFieldElement& b);
    friend bool operator==(const QuadFieldElement& a, const QuadFieldElement& b) {
        return a.D == b.D && a.x == b.x && a.y == b.y;
    }

    std::string to_string() const;
};

// Fundamental unit (x + y sqrt(D))/2 with norm -1 for the built-in
// narrow-class-number-one discriminants.
struct NarrowClassOneEntry {
    long long D;
    long long unit_x;
    long long unit_y;
};
const std::vector<NarrowClassOneEntry>& narrow_class_one_table();
bool narrow_class_number_is_one(long long D);
QuadFieldElement fundamental_unit(long long D);

SplitType split_type(long long p, long long D);

// Fourier index of the lift: nu in the inverse different, totally positive,
// keyed by mu = sqrt(D)*nu in O_F with sigma1(mu) > 0 > sigma2(mu).
struct LiftIndex {
    QuadFieldElement mu;
    long long ideal_norm = 0; // |Nm(mu)| = D*Nm(nu)

    std::string to_string() const;
};

// Canonical orbit representative under totally positive units: minimal
// trace of nu = mu/sqrt(D) (equivalently minimal y), ties broken by larger
// sigma1(mu). Accepts any nonzero integral mu and also fixes the sign
// pattern to sigma1 > 0 > sigma2 first.
QuadFieldElement canonical_index_rep(QuadFieldElement mu);

std::vector<LiftIndex> enumerate_lift_indices(long long D, long long norm_bound);

// positive rational integers d with mu/d integral, ascending
std::vector<long long> divisors_of_mu(const LiftIndex& idx);

// ideal arithmetic on canonical representatives (principal ideals, narrow
// class number one)
LiftIndex index_mul(const LiftIndex& a, const LiftIndex& b);
bool index_divides(const LiftIndex& a, const LiftIndex& b); // ideal(a) | ideal(b)
bool indices_coprime(const LiftIndex& a, const LiftIndex& b);

} // namespace dnlab

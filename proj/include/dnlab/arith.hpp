#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dnlab/rat.hpp"

namespace dnlab {

long long gcd_ll(long long a, long long b);
long long pow_mod(long long base, long long exp, long long mod);
long long inv_mod(long long a, long long mod);
bool is_prime(long long n);

// Kronecker symbol (a|n), fully multiplicative in both arguments.
int kronecker(long long a, long long n);

std::vector<std::pair<long long, int>> factorize(long long n);

// Smallest primitive root mod an odd prime p.
long long primitive_root(long long p);

// Exact element of Q[x]/(x^order - 1) standing for a value in Q(zeta_order).
// Equality of the underlying cyclotomic values is tested modulo the
// cyclotomic polynomial Phi_order, so distinct coefficient vectors may
// represent the same number.
struct CycValue {
    long long order = 1;
    std::vector<Rat> coeff; // coeff[j] multiplies zeta^j

    CycValue() : order(1), coeff(1) {}
    explicit CycValue(long long ord) : order(ord), coeff(size_t(ord)) {}
    static CycValue from_rational(const Rat& r) {
        CycValue v(1);
        v.coeff[0] = r;
        return v;
    }
    static CycValue root_of_unity(long long ord, long long exponent);

    bool is_rational_repr() const { return order == 1; }
    Rat rational_part() const;  // requires the value to be rational; exact.

    CycValue promoted(long long new_order) const; // embed into Q(zeta_m), order | m
    CycValue conj() const;                        // zeta -> zeta^{-1}

    std::complex<double> to_complex() const;
    bool equals(const CycValue& other) const; // exact, mod Phi_order
    bool is_zero_value() const;
    std::string to_string() const;
};

CycValue cyc_add(const CycValue& a, const CycValue& b);
CycValue cyc_sub(const CycValue& a, const CycValue& b);
CycValue cyc_mul(const CycValue& a, const CycValue& b);
CycValue cyc_scale(const CycValue& a, const Rat& r);

// Coefficients of the cyclotomic polynomial Phi_n (computed by exact division).
std::vector<Rat> cyclotomic_poly(long long n);

// Character of (Z/p)^x described by the image of a fixed generator.
struct LocalCharacter {
    long long p = 0;
    long long generator = 0;
    long long image_order = 1;    // order of the root of unity chi(generator)
    long long image_exponent = 0; // chi(generator) = zeta_image_order^image_exponent
};

// Dirichlet character of odd squarefree modulus, stored by CRT components.
struct DirichletCharacter {
    long long modulus = 1;
    std::vector<LocalCharacter> components;
    int parity = 1; // chi(-1)

    static DirichletCharacter trivial();
    // Quadratic character attached to a fundamental discriminant with odd
    // squarefree absolute value (chi_D = kronecker(D, .)).
    static DirichletCharacter quadratic(long long fund_disc);
    // Character mod odd prime p of given order, sending the smallest
    // primitive root to e(exponent/order).
    static DirichletCharacter prime_power_order(long long p, long long order, long long exponent = 1);

    DirichletCharacter times(const DirichletCharacter& other) const; // coprime moduli

    bool is_quadratic() const;
    long long value_order() const; // lcm of component image orders

    CycValue eval(long long n) const;
    std::complex<double> eval_complex(long long n) const;
    // For quadratic characters only: value in {-1,0,1}.
    int eval_quadratic(long long n) const;

    std::string to_json_string() const;
    static DirichletCharacter from_json_string(const std::string& text);
};

// Gauss sum of a character with prime modulus p, as an exact element of
// Q(zeta_{lcm(p, value order)}). Rejects the trivial character.
CycValue gauss_sum(const DirichletCharacter& chi_p);

} // namespace dnlab

#pragma once

#include <string>
#include <vector>

#include "dnlab/arith.hpp"

namespace dnlab {

// Positive definite integral binary quadratic form a x^2 + b xy + c y^2.
struct BQForm {
    long long a = 1, b = 0, c = 1;
    long long disc() const { return b * b - 4 * a * c; }
    bool positive_definite() const { return a > 0 && disc() < 0; }
    bool is_reduced() const;
};

// #{(x,y) in Z^2 : Q(x,y) = n} by bounded lattice enumeration.
long long bqf_rep_count(const BQForm& Q, long long n);
// representation counts for all 0 <= n <= bound in one lattice pass
std::vector<long long> bqf_rep_histogram(const BQForm& Q, long long bound);

// primitive reduced forms of a negative discriminant; their count is the
// class number
std::vector<BQForm> reduced_forms(long long disc);
long long class_number_neg(long long disc);

// Fourier coefficients of a normalized newform, exact values in the value
// ring of its nebentypus.
struct CoefficientTable {
    long long level = 1;
    DirichletCharacter character;
    long long bound = 0;
    std::vector<CycValue> values; // values[n], n <= bound; values[0] unused

    const CycValue& at(long long n) const;
    // integer access for tables with rational integer coefficients
    long long at_int(long long n) const;

    std::vector<std::string> validate() const; // invariant violations, empty if clean
};

// Weight-one dihedral theta series attached to an imaginary quadratic
// discriminant of class number three: c(n) = (r_principal - r_nonprincipal)/2.
CoefficientTable dihedral_coeffs(long long disc_M, long long bound);

// q-expansion of prod_i eta(d_i z)^{e_i} via the pentagonal number theorem;
// requires integral leading exponent sum(d_i e_i)/24. Returns coefficients
// of q^n for n <= bound.
std::vector<long long> eta_product_coeffs(const std::vector<std::pair<long long, long long>>& factors,
                                          long long bound);

struct ImportResult {
    CoefficientTable table;
    std::vector<std::string> warnings;
    bool warning_flag = false;
};

// Reads the "n value" q-expansion file format (optional "#zeta k" header).
ImportResult import_qexp(const std::string& path);
void export_qexp(const CoefficientTable& table, const std::string& path);

} // namespace dnlab

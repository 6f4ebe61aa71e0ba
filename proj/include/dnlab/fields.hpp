#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dnlab/rat.hpp"
#include "dnlab/report.hpp"

namespace dnlab {

// dense polynomials over Rat, ascending degree
using RatPoly = std::vector<Rat>;
RatPoly poly_trim_r(RatPoly p);
RatPoly poly_add_r(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul_r(const RatPoly& a, const RatPoly& b);
RatPoly poly_rem_r(RatPoly a, const RatPoly& b);
// inverse of a modulo m (extended Euclid); throws if not coprime
RatPoly poly_inverse_mod(const RatPoly& a, const RatPoly& m);

// Number field Q[x]/(m), m monic integral irreducible of degree <= 6.
// Embeddings ordered: real roots by descending value, then one root per
// conjugate pair with positive imaginary part, by descending real part.
struct NumberField {
    std::vector<long long> minpoly; // ascending, monic
    int degree = 0;
    int r1 = 0, r2 = 0;
    std::vector<std::complex<double>> embeddings; // size r1 + r2

    std::complex<double> embed_root(int i) const { return embeddings[size_t(i)]; }
};

NumberField nf_create(const std::vector<long long>& minpoly_ascending);

struct FieldElem {
    std::shared_ptr<const NumberField> field;
    std::vector<Rat> coords; // power basis

    std::complex<double> embed(int i) const;
    std::string to_string() const;
};

FieldElem fe_make(const std::shared_ptr<const NumberField>& K, std::vector<Rat> coords);
FieldElem fe_rational(const std::shared_ptr<const NumberField>& K, const Rat& r);
FieldElem fe_add(const FieldElem& a, const FieldElem& b);
FieldElem fe_sub(const FieldElem& a, const FieldElem& b);
FieldElem fe_mul(const FieldElem& a, const FieldElem& b);
FieldElem fe_div(const FieldElem& a, const FieldElem& b);
FieldElem fe_pow(const FieldElem& a, long long n); // n may be negative
bool fe_equal(const FieldElem& a, const FieldElem& b);
// evaluate the defining polynomial of e at the argument; exact automorphism
// application when arg is the image of the field generator
FieldElem fe_compose(const FieldElem& e, const FieldElem& arg);

// exact via the resultant of the minimal polynomial and the element
Rat exact_norm(const FieldElem& e);
bool is_algebraic_integer(const FieldElem& e);

// all units (|norm| = 1) with power-basis numerators in [-bound, bound] and
// denominator 1 or 2 (when integral), deduplicated by log-lattice reduction
// against units already found; sorted by coefficient height. dedup = false
// returns every unit in the box (ascending height).
std::vector<FieldElem> unit_search(const std::shared_ptr<const NumberField>& K, long long coeff_bound,
                                   bool dedup = true);

// bounded unit search over an explicit integral basis (integer coefficients
// in [-bound, bound]); returns every unit found, ascending height
std::vector<FieldElem> unit_search_in_basis(const std::vector<FieldElem>& basis, long long coeff_bound);

// relative norm onto a subfield described by grouping the compositum
// embeddings above each subfield embedding (conjugate-pair groups use the
// stored representative); result reconstructed exactly and re-verified
FieldElem relative_norm(const FieldElem& e, const std::shared_ptr<const NumberField>& sub,
                        const std::vector<std::vector<int>>& groups);

struct UnitSystem {
    std::shared_ptr<const NumberField> field;
    std::vector<FieldElem> units;
};

// log-embedding row of a unit: weight 1 entries for real embeddings, 2 for
// complex pairs
std::vector<double> log_embedding_row(const FieldElem& u);
// |det| of the log matrix dropping the given embedding column (default: last)
double regulator(const UnitSystem& sys, int drop_embedding = -1);

struct RationalRecognition {
    std::optional<Rat> value;
    bool near_miss = false;
};
RationalRecognition recognize_rational(double x, long long max_den, double tol);

VerificationReport baker_heuristic(double u_log, double v_log, long long max_den);

} // namespace dnlab

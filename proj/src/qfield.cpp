#include "dnlab/qfield.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "dnlab/arith.hpp"

namespace dnlab {

QuadFieldElement QuadFieldElement::from_integral_pair(long long D, i128 x, i128 y) {
    QuadFieldElement e{D, Rat(x, 1), Rat(y, 1)};
    if (!e.is_integral()) throw std::invalid_argument("QuadFieldElement: (x + y sqrt(D))/2 not integral");
    return e;
}

bool QuadFieldElement::is_integral() const {
    if (!x.is_integer() || !y.is_integer()) return false;
    i128 par = (x.num - y.num * D) % 2;
    return par == 0;
}

int QuadFieldElement::sign_sigma1() const {
    // sign of x + y sqrt(D), exact
    int sx = x.sign(), sy = y.sign();
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // opposite signs: compare x^2 with D y^2
    Rat lhs = x * x, rhs = Rat(D) * y * y;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sx : sy;
}

int QuadFieldElement::sign_sigma2() const { return conj().sign_sigma1(); }

double QuadFieldElement::embed1() const { return (x.to_double() + y.to_double() * std::sqrt(double(D))) / 2.0; }
double QuadFieldElement::embed2() const { return (x.to_double() - y.to_double() * std::sqrt(double(D))) / 2.0; }

QuadFieldElement operator+(const QuadFieldElement& a, const QuadFieldElement& b) {
    if (a.D != b.D) throw std::invalid_argument("QuadFieldElement: mixed fields");
    return {a.D, a.x + b.x, a.y + b.y};
}
QuadFieldElement operator-(const QuadFieldElement& a, const QuadFieldElement& b) {
    if (a.D != b.D) throw std::invalid_argument("QuadFieldElement: mixed fields");
    return {a.D, a.x - b.x, a.y - b.y};
}
QuadFieldElement operator*(const QuadFieldElement& a, const QuadFieldElement& b) {
    if (a.D != b.D) throw std::invalid_argument("QuadFieldElement: mixed fields");
    // ((x1 + y1 s)/2)((x2 + y2 s)/2) = ((x1 x2 + D y1 y2) + (x1 y2 + y1 x2) s)/4
    return {a.D, (a.x * b.x + Rat(a.D) * a.y * b.y) / Rat(2), (a.x * b.y + a.y * b.x) / Rat(2)};
}
QuadFieldElement operator/(const QuadFieldElement& a, const QuadFieldElement& b) {
    if (b.is_zero()) throw std::domain_error("QuadFieldElement: division by zero");
    QuadFieldElement num = a * b.conj();
    Rat n = b.norm();
    return {a.D, num.x / n, num.y / n};
}

std::string QuadFieldElement::to_string() const {
    return "(" + x.to_string() + " + " + y.to_string() + "*sqrt(" + std::to_string(D) + "))/2";
}

const std::vector<NarrowClassOneEntry>& narrow_class_one_table() {
    // odd fundamental discriminants D <= 100 with narrow class number one;
    // unit (x + y sqrt(D))/2 solves x^2 - D y^2 = -4
    static const std::vector<NarrowClassOneEntry> table = {
        {5, 1, 1},    {13, 3, 1},   {17, 8, 2},     {29, 5, 1},    {37, 12, 2},  {41, 64, 10},
        {53, 7, 1},   {61, 39, 5},  {73, 2136, 250}, {89, 1000, 106}, {97, 11208, 1138},
    };
    return table;
}

bool narrow_class_number_is_one(long long D) {
    for (auto& e : narrow_class_one_table())
        if (e.D == D) return true;
    return false;
}

QuadFieldElement fundamental_unit(long long D) {
    for (auto& e : narrow_class_one_table()) {
        if (e.D == D) {
            QuadFieldElement u = QuadFieldElement::from_integral_pair(D, e.unit_x, e.unit_y);
            if (u.norm() != Rat(-1)) throw std::logic_error("fundamental_unit: table entry has wrong norm");
            return u;
        }
    }
    throw std::invalid_argument("fundamental_unit: D not in narrow-class-number-one table");
}

SplitType split_type(long long p, long long D) {
    if (p == 2) throw std::invalid_argument("split_type: p = 2 excluded (D odd assumption)");
    if (!is_prime(p)) throw std::invalid_argument("split_type: p not prime");
    if (D % p == 0) return SplitType::Ramified;
    int k = kronecker(D, p);
    return k == 1 ? SplitType::Split : SplitType::Inert;
}

std::string LiftIndex::to_string() const {
    return mu.to_string() + " | " + std::to_string(ideal_norm);
}

// One step mu -> mu * eps^{+-2}; eps^2 is the generator of the totally
// positive unit group for the supported D.
static QuadFieldElement tot_pos_unit_sq(long long D) {
    QuadFieldElement eps = fundamental_unit(D);
    return eps * eps;
}

QuadFieldElement canonical_index_rep(QuadFieldElement mu) {
    if (mu.is_zero()) throw std::invalid_argument("canonical_index_rep: zero element");
    if (!mu.is_integral()) throw std::invalid_argument("canonical_index_rep: mu must be integral");
    long long D = mu.D;
    QuadFieldElement eps = fundamental_unit(D);
    // force sign pattern sigma1 > 0 > sigma2 (norm < 0); eps has norm -1
    if (mu.norm().sign() > 0) mu = mu * eps;
    if (mu.sign_sigma1() < 0) mu = QuadFieldElement{D, -mu.x, -mu.y};
    QuadFieldElement u2 = tot_pos_unit_sq(D);
    // minimize y > 0 over the orbit mu * u2^k (y is strictly convex in k)
    if (mu.y.sign() < 0) throw std::logic_error("canonical_index_rep: unexpected sign");
    for (;;) {
        QuadFieldElement up = mu * u2;
        if (up.y < mu.y) {
            mu = up;
            continue;
        }
        QuadFieldElement down = mu / u2;
        if (down.y < mu.y) {
            mu = down;
            continue;
        }
        // tie handling: same minimal y appears for at most one neighbor
        if (up.y == mu.y && up.x > mu.x) mu = up;
        else if (down.y == mu.y && down.x > mu.x) mu = down;
        break;
    }
    return mu;
}

// canonical generators of the prime ideals of norm n (n = p, or p^2 for
// inert p); every orbit has a representative with y sqrt(D) = t + n/t for
// t in [sqrt(n)/eps, sqrt(n) eps], so y <= sqrt(n)(eps + 1/eps)/sqrt(D)
static std::vector<QuadFieldElement> norm_n_generators(long long D, long long n) {
    QuadFieldElement eps = fundamental_unit(D);
    double e1 = eps.embed1();
    long long y_cap = (long long)std::ceil(std::sqrt(double(n)) * (e1 + 1.0 / e1) / std::sqrt(double(D))) + 2;
    std::map<std::pair<long long, long long>, bool> seen;
    for (long long y = 1; y <= y_cap; ++y) {
        i128 x2 = (i128)D * y * y - 4 * (i128)n;
        if (x2 < 0) continue;
        long long x = (long long)std::llround(std::sqrt(double(x2)));
        while ((i128)x * x < x2) ++x;
        while (x > 0 && (i128)x * x > x2) --x;
        if ((i128)x * x != x2) continue;
        if ((x - y * D) % 2 != 0) continue;
        for (int s = 0; s < (x == 0 ? 1 : 2); ++s) {
            QuadFieldElement mu = QuadFieldElement::from_integral_pair(D, s == 0 ? x : -x, y);
            QuadFieldElement c = canonical_index_rep(mu);
            seen[{(long long)c.x.num, (long long)c.y.num}] = true;
        }
    }
    std::vector<QuadFieldElement> out;
    for (auto& [xy, _] : seen) out.push_back(QuadFieldElement::from_integral_pair(D, xy.first, xy.second));
    return out;
}

std::vector<LiftIndex> enumerate_lift_indices(long long D, long long norm_bound) {
    if (!narrow_class_number_is_one(D))
        throw std::invalid_argument("enumerate_lift_indices: unsupported configuration, narrow class number != 1 (or D > 100/even)");
    std::vector<LiftIndex> out;
    if (norm_bound <= 0) return out;
    // prime ideals of norm <= bound, by rational prime
    struct PrimeIdeal {
        QuadFieldElement gen;
        long long norm;
    };
    std::vector<std::vector<PrimeIdeal>> primes; // grouped by rational prime
    for (long long p = 2; p <= norm_bound; ++p) {
        if (!is_prime(p)) continue;
        int sym = D % p == 0 ? 0 : kronecker(D, p);
        std::vector<PrimeIdeal> above;
        if (sym == 1 || sym == 0) {
            auto gens = norm_n_generators(D, p);
            size_t expected = sym == 1 ? 2 : 1;
            if (gens.size() != expected)
                throw std::logic_error("enumerate_lift_indices: expected " + std::to_string(expected) +
                                       " prime ideals of norm " + std::to_string(p) + ", found " +
                                       std::to_string(gens.size()));
            for (auto& g : gens) above.push_back({g, p});
        } else if (p * p <= norm_bound) {
            QuadFieldElement mu = canonical_index_rep(
                QuadFieldElement::rational(D, Rat(p)) * fundamental_unit(D));
            above.push_back({mu, p * p});
        }
        if (!above.empty()) primes.push_back(std::move(above));
    }
    // multiplicative enumeration over prime powers
    QuadFieldElement one = canonical_index_rep(fundamental_unit(D));
    std::function<void(size_t, QuadFieldElement, long long)> dfs = [&](size_t i, QuadFieldElement mu,
                                                                       long long n) {
        if (i == primes.size()) {
            out.push_back({mu, n});
            return;
        }
        // exponent vectors over the ideals above this rational prime
        std::function<void(size_t, QuadFieldElement, long long)> expand = [&](size_t j, QuadFieldElement m2,
                                                                              long long n2) {
            if (j == primes[i].size()) {
                dfs(i + 1, m2, n2);
                return;
            }
            expand(j + 1, m2, n2);
            QuadFieldElement acc = m2;
            long long nn = n2;
            while (nn <= norm_bound / primes[i][j].norm) {
                nn *= primes[i][j].norm;
                acc = canonical_index_rep(acc * primes[i][j].gen);
                expand(j + 1, acc, nn);
            }
        };
        expand(0, mu, n);
    };
    dfs(0, one, 1);
    std::sort(out.begin(), out.end(), [](const LiftIndex& a, const LiftIndex& b) {
        if (a.ideal_norm != b.ideal_norm) return a.ideal_norm < b.ideal_norm;
        if (a.mu.y != b.mu.y) return a.mu.y < b.mu.y;
        return a.mu.x > b.mu.x;
    });
    return out;
}

std::vector<long long> divisors_of_mu(const LiftIndex& idx) {
    std::vector<long long> out;
    i128 x = idx.mu.x.num, y = idx.mu.y.num;
    long long D = idx.mu.D;
    for (long long d = 1; (i128)d * d <= i128_abs(idx.mu.norm().num); ++d) {
        if (x % d != 0 || y % d != 0) continue;
        i128 xd = x / d, yd = y / d;
        if ((xd - yd * D) % 2 != 0) continue;
        // d | mu requires d^2 | Nm(mu)
        if (idx.mu.norm().num % ((i128)d * d) != 0) continue;
        out.push_back(d);
    }
    return out;
}

LiftIndex index_mul(const LiftIndex& a, const LiftIndex& b) {
    LiftIndex c;
    c.mu = canonical_index_rep(a.mu * b.mu);
    Rat n = c.mu.norm();
    c.ideal_norm = (long long)i128_abs(n.num);
    return c;
}

bool index_divides(const LiftIndex& a, const LiftIndex& b) {
    QuadFieldElement q = b.mu / a.mu;
    return q.is_integral();
}

bool indices_coprime(const LiftIndex& a, const LiftIndex& b) {
    long long g = gcd_ll(a.ideal_norm, b.ideal_norm);
    if (g == 1) return true;
    // a shared rational prime p | g needs a shared prime ideal check
    for (auto& [p, e] : factorize(g)) {
        (void)e;
        // split_type rejects p = 2 by the standing odd-D assumption; the
        // residue symbol still decides the splitting there
        int sym = p == 2 ? kronecker(a.mu.D, 2) : (a.mu.D % p == 0 ? 0 : kronecker(a.mu.D, p));
        if (sym != 1) return false; // inert/ramified: the unique prime above p divides both
        // split: check whether one of the two conjugate primes divides both
        auto primes = enumerate_lift_indices(a.mu.D, p);
        for (auto& pr : primes) {
            if (pr.ideal_norm != p) continue;
            if (index_divides(pr, a) && index_divides(pr, b)) return false;
        }
    }
    return true;
}

} // namespace dnlab

#include "dnlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "dnlab/arith.hpp"

namespace dnlab {

RatPoly poly_trim_r(RatPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

RatPoly poly_add_r(const RatPoly& a, const RatPoly& b) {
    RatPoly c(std::max(a.size(), b.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size()) c[i] += a[i];
        if (i < b.size()) c[i] += b[i];
    }
    return poly_trim_r(c);
}

RatPoly poly_mul_r(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return poly_trim_r(c);
}

static void poly_divmod_r(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem) {
    rem = poly_trim_r(a);
    RatPoly bb = poly_trim_r(b);
    if (bb.empty()) throw std::domain_error("poly_divmod_r: zero divisor");
    quot.assign(rem.size() >= bb.size() ? rem.size() - bb.size() + 1 : 0, Rat(0));
    while (rem.size() >= bb.size() && !rem.empty()) {
        Rat c = rem.back() / bb.back();
        size_t shift = rem.size() - bb.size();
        quot[shift] = c;
        for (size_t i = 0; i < bb.size(); ++i) rem[shift + i] -= c * bb[i];
        rem = poly_trim_r(rem);
    }
}

RatPoly poly_rem_r(RatPoly a, const RatPoly& b) {
    RatPoly q, r;
    poly_divmod_r(a, b, q, r);
    return r;
}

RatPoly poly_inverse_mod(const RatPoly& a, const RatPoly& m) {
    RatPoly r0 = poly_trim_r(m), r1 = poly_rem_r(a, m);
    RatPoly s0 = {}, s1 = {Rat(1)};
    while (!r1.empty()) {
        RatPoly q, r2;
        poly_divmod_r(r0, r1, q, r2);
        RatPoly qs = poly_mul_r(q, s1);
        for (auto& c : qs) c = -c;
        RatPoly s2 = poly_add_r(s0, qs);
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0.size() != 1 || r0[0].is_zero()) throw std::domain_error("poly_inverse_mod: not invertible");
    RatPoly inv = s0;
    for (auto& c : inv) c /= r0[0];
    return poly_rem_r(inv, m);
}

// ----- polynomials mod p (vector<long long>, ascending) -----

namespace modpoly {

using P = std::vector<long long>;

static P trim(P a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

static P rem(P a, const P& b, long long p) {
    a = trim(a);
    P bb = trim(b);
    long long linv = inv_mod(bb.back(), p);
    while (a.size() >= bb.size() && !a.empty()) {
        long long c = (long long)((i128)a.back() * linv % p);
        size_t sh = a.size() - bb.size();
        for (size_t i = 0; i < bb.size(); ++i)
            a[sh + i] = (long long)((((i128)a[sh + i] - (i128)c * bb[i]) % p + p) % p);
        a = trim(a);
    }
    return a;
}

static P quot(P a, const P& b, long long p) {
    a = trim(a);
    P bb = trim(b);
    long long linv = inv_mod(bb.back(), p);
    P q(a.size() >= bb.size() ? a.size() - bb.size() + 1 : 0, 0);
    while (a.size() >= bb.size() && !a.empty()) {
        long long c = (long long)((i128)a.back() * linv % p);
        size_t sh = a.size() - bb.size();
        q[sh] = c;
        for (size_t i = 0; i < bb.size(); ++i)
            a[sh + i] = (long long)((((i128)a[sh + i] - (i128)c * bb[i]) % p + p) % p);
        a = trim(a);
    }
    return trim(q);
}

static P gcd(P a, P b, long long p) {
    a = trim(a);
    b = trim(b);
    while (!b.empty()) {
        P r = rem(a, b, p);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        long long linv = inv_mod(a.back(), p);
        for (auto& c : a) c = c * linv % p;
    }
    return a;
}

static P mul(const P& a, const P& b, long long p) {
    if (a.empty() || b.empty()) return {};
    P c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (long long)((c[i + j] + (i128)a[i] * b[j]) % p);
    }
    return trim(c);
}

static P powmod(P base, long long e, const P& mod, long long p) {
    P result = {1};
    base = rem(base, mod, p);
    while (e > 0) {
        if (e & 1) result = rem(mul(result, base, p), mod, p);
        base = rem(mul(base, base, p), mod, p);
        e >>= 1;
    }
    return result;
}

static P derivative(const P& a, long long p) {
    if (a.size() < 2) return {};
    P d(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = (long long)(i % size_t(p)) * a[i] % p;
    return trim(d);
}

// degrees of the irreducible factors of f mod p (with multiplicity);
// empty result means p is unusable (f not squarefree mod p)
static std::vector<int> factor_degrees(const P& f_in, long long p) {
    P f = trim(f_in);
    if (f.size() < 2) return {};
    long long linv = inv_mod(f.back(), p);
    for (auto& c : f) c = c * linv % p;
    if (gcd(f, derivative(f, p), p).size() != 1) return {};
    std::vector<int> degs;
    P g = f;
    P h = {0, 1}; // x
    int d = 0;
    while ((int)g.size() - 1 > 0) {
        ++d;
        if (2 * d > (int)g.size() - 1) {
            degs.push_back(int(g.size()) - 1);
            break;
        }
        h = powmod(h, p, g, p); // x^{p^d} mod g
        P diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        P gd = gcd(g, trim(diff), p);
        if (gd.size() > 1) {
            int gdeg = int(gd.size()) - 1;
            for (int i = 0; i < gdeg / d; ++i) degs.push_back(d);
            g = quot(g, gd, p);
            h = rem(h, g.size() > 1 ? g : P{0, 1}, p);
        }
    }
    return degs;
}

} // namespace modpoly

static bool irreducible_certified(const std::vector<long long>& poly) {
    int deg = int(poly.size()) - 1;
    if (deg <= 1) return deg == 1;
    std::set<int> possible;
    for (int d = 1; d < deg; ++d) possible.insert(d);
    for (long long p = 3; p < 2000 && !possible.empty(); p += 2) {
        if (!is_prime(p)) continue;
        modpoly::P f(poly.size());
        for (size_t i = 0; i < poly.size(); ++i) f[i] = ((poly[i] % p) + p) % p;
        if (modpoly::trim(f).size() != poly.size()) continue; // leading coeff vanished
        auto degs = modpoly::factor_degrees(f, p);
        if (degs.empty()) continue;
        std::set<int> sums = {0};
        for (int part : degs) {
            std::set<int> next = sums;
            for (int s : sums) next.insert(s + part);
            sums = next;
        }
        for (auto it = possible.begin(); it != possible.end();) {
            if (sums.count(*it)) ++it;
            else it = possible.erase(it);
        }
    }
    return possible.empty();
}

// ----- roots: Durand-Kerner with Newton polish -----

static std::vector<std::complex<double>> all_roots(const std::vector<long long>& poly) {
    int deg = int(poly.size()) - 1;
    std::vector<std::complex<double>> c(poly.begin(), poly.end());
    std::vector<std::complex<double>> z(static_cast<size_t>(deg));
    double radius = 1;
    for (int i = 0; i < deg; ++i)
        radius = std::max(radius, 1.0 + std::abs(double(poly[size_t(i)]) / double(poly.back())));
    for (int i = 0; i < deg; ++i) z[size_t(i)] = std::polar(0.8 * radius, 2 * M_PI * i / deg + 0.4);
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (int i = deg; i >= 0; --i) v = v * x + c[size_t(i)];
        return v;
    };
    auto deriv = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (int i = deg; i >= 1; --i) v = v * x + c[size_t(i)] * double(i);
        return v;
    };
    for (int iter = 0; iter < 600; ++iter) {
        double moved = 0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> denom = c.back();
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= (z[size_t(i)] - z[size_t(j)]);
            if (std::abs(denom) < 1e-300) continue;
            std::complex<double> step = eval(z[size_t(i)]) / denom;
            z[size_t(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-15 * radius) break;
    }
    for (auto& r : z)
        for (int it = 0; it < 10; ++it) {
            auto d = deriv(r);
            if (std::abs(d) < 1e-30) break;
            auto step = eval(r) / d;
            r -= step;
            if (std::abs(step) < 1e-16 * (1 + std::abs(r))) break;
        }
    return z;
}

NumberField nf_create(const std::vector<long long>& minpoly_ascending) {
    std::vector<long long> m = minpoly_ascending;
    while (!m.empty() && m.back() == 0) m.pop_back();
    if (m.size() < 2 || m.back() != 1) throw std::invalid_argument("nf_create: need a monic polynomial");
    int deg = int(m.size()) - 1;
    if (deg > 6) throw std::invalid_argument("nf_create: degree must be <= 6");
    if (!irreducible_certified(m)) throw std::invalid_argument("nf_create: polynomial not certified irreducible");
    NumberField K;
    K.minpoly = m;
    K.degree = deg;
    auto roots = all_roots(m);
    // classify and order
    double scale = 1;
    for (auto& r : roots) scale = std::max(scale, std::abs(r));
    std::vector<double> reals;
    std::vector<std::complex<double>> cplxs;
    for (auto& r : roots) {
        if (std::abs(r.imag()) < 1e-9 * scale) reals.push_back(r.real());
        else if (r.imag() > 0) cplxs.push_back(r);
    }
    std::sort(reals.rbegin(), reals.rend());
    std::sort(cplxs.begin(), cplxs.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) { return a.real() > b.real(); });
    K.r1 = int(reals.size());
    K.r2 = int(cplxs.size());
    if (K.r1 + 2 * K.r2 != deg) throw std::logic_error("nf_create: signature bookkeeping failed");
    for (double r : reals) K.embeddings.push_back({r, 0.0});
    for (auto& r : cplxs) K.embeddings.push_back(r);
    // Vieta sanity: product of all roots = (-1)^deg * constant term
    std::complex<double> prod = 1;
    for (double r : reals) prod *= r;
    for (auto& r : cplxs) prod *= r * std::conj(r);
    double want = double(m[0]) * (deg % 2 ? -1.0 : 1.0);
    if (std::abs(prod.real() - want) > 1e-9 * (1 + std::abs(want)) || std::abs(prod.imag()) > 1e-9 * (1 + std::abs(want)))
        throw std::logic_error("nf_create: root product check failed");
    return K;
}

FieldElem fe_make(const std::shared_ptr<const NumberField>& K, std::vector<Rat> coords) {
    coords.resize(size_t(K->degree));
    return FieldElem{K, std::move(coords)};
}

FieldElem fe_rational(const std::shared_ptr<const NumberField>& K, const Rat& r) {
    std::vector<Rat> c(static_cast<size_t>(K->degree));
    c[0] = r;
    return FieldElem{K, std::move(c)};
}

std::complex<double> FieldElem::embed(int i) const {
    std::complex<double> x = field->embeddings[size_t(i)];
    std::complex<double> v = 0;
    for (int j = field->degree - 1; j >= 0; --j) v = v * x + coords[size_t(j)].to_double();
    return v;
}

std::string FieldElem::to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + coords[i].to_string();
    return s + "]";
}

static RatPoly minpoly_rat(const NumberField& K) {
    RatPoly m(K.minpoly.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = Rat(K.minpoly[i]);
    return m;
}

FieldElem fe_add(const FieldElem& a, const FieldElem& b) {
    FieldElem c = a;
    for (size_t i = 0; i < c.coords.size(); ++i) c.coords[i] += b.coords[i];
    return c;
}

FieldElem fe_sub(const FieldElem& a, const FieldElem& b) {
    FieldElem c = a;
    for (size_t i = 0; i < c.coords.size(); ++i) c.coords[i] -= b.coords[i];
    return c;
}

FieldElem fe_mul(const FieldElem& a, const FieldElem& b) {
    RatPoly prod = poly_mul_r(RatPoly(a.coords.begin(), a.coords.end()), RatPoly(b.coords.begin(), b.coords.end()));
    prod = poly_rem_r(prod, minpoly_rat(*a.field));
    prod.resize(size_t(a.field->degree));
    return FieldElem{a.field, std::move(prod)};
}

FieldElem fe_div(const FieldElem& a, const FieldElem& b) {
    RatPoly binv = poly_inverse_mod(RatPoly(b.coords.begin(), b.coords.end()), minpoly_rat(*b.field));
    binv.resize(size_t(b.field->degree));
    return fe_mul(a, FieldElem{b.field, std::move(binv)});
}

FieldElem fe_pow(const FieldElem& a, long long n) {
    if (n < 0) return fe_pow(fe_div(fe_rational(a.field, Rat(1)), a), -n);
    FieldElem result = fe_rational(a.field, Rat(1));
    FieldElem base = a;
    while (n > 0) {
        if (n & 1) result = fe_mul(result, base);
        base = fe_mul(base, base);
        n >>= 1;
    }
    return result;
}

bool fe_equal(const FieldElem& a, const FieldElem& b) {
    for (size_t i = 0; i < a.coords.size(); ++i)
        if (a.coords[i] != b.coords[i]) return false;
    return true;
}

FieldElem fe_compose(const FieldElem& e, const FieldElem& arg) {
    FieldElem acc = fe_rational(arg.field, Rat(0));
    for (int i = int(e.coords.size()) - 1; i >= 0; --i) {
        acc = fe_mul(acc, arg);
        acc.coords[0] += e.coords[size_t(i)];
    }
    return acc;
}

// Res(a, b) mod p of integer polynomials via the Euclidean remainder sequence;
// requires p coprime to both true leading coefficients
static long long resultant_mod_p(std::vector<long long> a, std::vector<long long> b, long long p) {
    auto red = [&](std::vector<long long>& f) {
        for (auto& c : f) c = ((c % p) + p) % p;
        while (!f.empty() && f.back() == 0) f.pop_back();
    };
    red(a);
    red(b);
    long long res = 1;
    while (true) {
        if (b.empty()) return a.size() <= 1 ? res : 0;
        if (b.size() == 1) {
            // Res(a, const) = const^{deg a}
            return (long long)((i128)res * pow_mod(b[0], (long long)a.size() - 1, p) % p);
        }
        std::vector<long long> r = modpoly::rem(a, b, p);
        long long da = (long long)a.size() - 1, db = (long long)b.size() - 1;
        long long dr = r.empty() ? -1 : (long long)r.size() - 1;
        // Res(a,b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
        long long sign = (da % 2 == 1 && db % 2 == 1) ? p - 1 : 1;
        res = (long long)((i128)res * sign % p);
        res = (long long)((i128)res * pow_mod(b.back(), da - (dr < 0 ? 0 : dr), p) % p);
        if (r.empty()) return 0;
        a = b;
        b = r;
    }
}

Rat exact_norm(const FieldElem& e) {
    const NumberField& K = *e.field;
    int n = K.degree;
    // clear denominators: G = den * g has integer coefficients
    i128 den = 1;
    for (auto& c : e.coords) den = den / i128_gcd(den, c.den) * c.den;
    std::vector<i128> G(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) G[size_t(i)] = e.coords[size_t(i)].num * (den / e.coords[size_t(i)].den);
    int dg = n - 1;
    while (dg >= 0 && G[size_t(dg)] == 0) --dg;
    if (dg < 0) return Rat(0);
    if (dg == 0) {
        Rat r(G[0], den);
        Rat out(1);
        for (int i = 0; i < n; ++i) out *= r;
        return out;
    }
    // |Res(m, G)| = |prod G(theta_i)| estimated through the embeddings to size
    // the CRT modulus; the product of the chosen primes must exceed 2|Res|
    double logmag = 0;
    for (int i = 0; i < K.r1 + K.r2; ++i) {
        std::complex<double> x = K.embeddings[size_t(i)];
        std::complex<double> v = 0;
        for (int j = dg; j >= 0; --j) v = v * x + std::complex<double>(double(G[size_t(j)]));
        double a = std::max(std::abs(v), 1e-30);
        logmag += (i < K.r1 ? 1.0 : 2.0) * std::log2(a);
    }
    logmag += 8; // safety margin
    if (logmag > 115) throw std::domain_error("exact_norm: magnitude exceeds the exact engine");
    static const std::vector<long long> primes = [] {
        std::vector<long long> out;
        for (long long c = (1LL << 40) + 1; out.size() < 3; c += 2)
            if (is_prime(c)) out.push_back(c);
        return out;
    }();
    std::vector<long long> mvec(K.minpoly.begin(), K.minpoly.end());
    i128 value = 0, modulus = 1;
    double bits = 0;
    for (long long p : primes) {
        if (bits > logmag + 2) break;
        std::vector<long long> gv(size_t(dg) + 1);
        for (int i = 0; i <= dg; ++i) gv[size_t(i)] = (long long)(((G[size_t(i)] % p) + p) % p);
        if (gv.back() == 0) continue; // unlucky prime for the leading coefficient
        long long rp = resultant_mod_p(mvec, gv, p);
        if (modulus == 1) {
            value = rp;
            modulus = p;
        } else {
            // Garner step: value' = value + modulus * t with t = (rp - value)/modulus mod p
            long long vmod = (long long)(((value % p) + p) % p);
            long long mmod = (long long)(modulus % p);
            long long t = (long long)((i128)((rp - vmod + p) % p) * inv_mod(mmod, p) % p);
            value += modulus * t;
            modulus *= p;
        }
        bits += std::log2(double(p));
    }
    if (2 * i128_abs(value) > modulus) value -= modulus; // symmetric representative
    Rat out(value, 1);
    Rat dpow(1);
    for (int i = 0; i < n; ++i) dpow *= Rat(den, 1);
    return out / dpow;
}

bool is_algebraic_integer(const FieldElem& e) {
    const NumberField& K = *e.field;
    int n = K.degree;
    // multiplication matrix of e in the power basis
    std::vector<std::vector<Rat>> M(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
    RatPoly m = minpoly_rat(K);
    RatPoly cur(e.coords.begin(), e.coords.end());
    cur = poly_rem_r(cur, m);
    for (int col = 0; col < n; ++col) {
        RatPoly colv = cur;
        colv.resize(size_t(n));
        for (int row = 0; row < n; ++row) M[size_t(row)][size_t(col)] = colv[size_t(row)];
        // multiply by x for the next column: cur = cur * x mod m
        RatPoly shifted(cur.size() + 1);
        for (size_t i = 0; i < cur.size(); ++i) shifted[i + 1] = cur[i];
        cur = poly_rem_r(shifted, m);
    }
    // char poly via Newton's identities from power sums p_k = tr(M^k)
    std::vector<std::vector<Rat>> Mk = M;
    std::vector<Rat> psums(static_cast<size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
        Rat tr(0);
        for (int i = 0; i < n; ++i) tr += Mk[size_t(i)][size_t(i)];
        psums[size_t(k)] = tr;
        if (k < n) {
            std::vector<std::vector<Rat>> next(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Rat s(0);
                    for (int t = 0; t < n; ++t) s += Mk[size_t(i)][size_t(t)] * M[size_t(t)][size_t(j)];
                    next[size_t(i)][size_t(j)] = s;
                }
            Mk = std::move(next);
        }
    }
    std::vector<Rat> esym(static_cast<size_t>(n) + 1);
    esym[0] = Rat(1);
    for (int k = 1; k <= n; ++k) {
        Rat s(0);
        for (int i = 1; i <= k; ++i) {
            Rat term = esym[size_t(k - i)] * psums[size_t(i)];
            if (i % 2 == 0) s -= term;
            else s += term;
        }
        esym[size_t(k)] = s / Rat(k);
        if (!esym[size_t(k)].is_integer()) return false;
    }
    return true;
}

std::vector<double> log_embedding_row(const FieldElem& u) {
    const NumberField& K = *u.field;
    std::vector<double> row;
    for (int i = 0; i < K.r1 + K.r2; ++i) {
        double w = i < K.r1 ? 1.0 : 2.0;
        row.push_back(w * std::log(std::abs(u.embed(i))));
    }
    return row;
}

static double abs_det(std::vector<std::vector<double>> A) {
    size_t n = A.size();
    double det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
        if (std::abs(A[piv][k]) < 1e-300) return 0;
        std::swap(A[k], A[piv]);
        det *= A[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            double f = A[i][k] / A[k][k];
            for (size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
        }
    }
    return std::abs(det);
}

double regulator(const UnitSystem& sys, int drop_embedding) {
    const NumberField& K = *sys.field;
    int rank = K.r1 + K.r2 - 1;
    if ((int)sys.units.size() != rank) throw std::invalid_argument("regulator: need r1 + r2 - 1 units");
    if (rank == 0) return 1.0;
    int drop = drop_embedding < 0 ? K.r1 + K.r2 - 1 : drop_embedding;
    std::vector<std::vector<double>> A;
    for (auto& u : sys.units) {
        auto row = log_embedding_row(u);
        std::vector<double> r;
        for (int i = 0; i < K.r1 + K.r2; ++i)
            if (i != drop) r.push_back(row[size_t(i)]);
        A.push_back(r);
    }
    double det = abs_det(A);
    if (det < 1e-10) throw std::runtime_error("regulator: units are dependent (determinant ~ 0)");
    return det;
}

// candidate is an integer combination of the accepted log rows?
static bool integer_combination(const std::vector<std::vector<double>>& basis, const std::vector<double>& v,
                                double tol = 1e-8) {
    if (basis.empty()) {
        double n2 = 0;
        for (double x : v) n2 += x * x;
        return n2 < tol * tol; // torsion
    }
    // least squares coefficients via normal equations
    size_t r = basis.size(), d = v.size();
    std::vector<std::vector<double>> G(r, std::vector<double>(r + 1, 0));
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j)
            for (size_t k = 0; k < d; ++k) G[i][j] += basis[i][k] * basis[j][k];
        for (size_t k = 0; k < d; ++k) G[i][r] += basis[i][k] * v[k];
    }
    // solve
    for (size_t k = 0; k < r; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < r; ++i)
            if (std::abs(G[i][k]) > std::abs(G[piv][k])) piv = i;
        if (std::abs(G[piv][k]) < 1e-12) return false;
        std::swap(G[k], G[piv]);
        for (size_t i = 0; i < r; ++i) {
            if (i == k) continue;
            double f = G[i][k] / G[k][k];
            for (size_t j = k; j <= r; ++j) G[i][j] -= f * G[k][j];
        }
    }
    std::vector<double> coef(r);
    for (size_t i = 0; i < r; ++i) coef[i] = G[i][r] / G[i][i];
    // integer coefficients and zero residual?
    std::vector<double> resid = v;
    for (size_t i = 0; i < r; ++i) {
        double rounded = std::round(coef[i]);
        if (std::abs(coef[i] - rounded) > 1e-6) return false;
        for (size_t k = 0; k < d; ++k) resid[k] -= rounded * basis[i][k];
    }
    double n2 = 0;
    for (double x : resid) n2 += x * x;
    return n2 < tol * tol;
}

std::vector<FieldElem> unit_search(const std::shared_ptr<const NumberField>& K, long long coeff_bound,
                                   bool dedup) {
    int n = K->degree;
    std::vector<FieldElem> found;
    std::vector<std::vector<double>> logs;
    // enumerate by height so small units come first
    for (long long height = 1; height <= coeff_bound; ++height) {
        std::vector<FieldElem> batch;
        std::vector<long long> c(size_t(n), -height);
        for (;;) {
            long long maxc = 0;
            for (long long x : c) maxc = std::max(maxc, std::llabs(x));
            if (maxc == height) {
                for (int den = 1; den <= 2; ++den) {
                    bool nonzero = false;
                    for (long long x : c) nonzero |= (x != 0);
                    if (!nonzero) continue;
                    if (den == 2) {
                        bool all_even = true;
                        for (long long x : c) all_even &= (x % 2 == 0);
                        if (all_even) continue; // same as a den-1 candidate
                    }
                    std::vector<Rat> coords(static_cast<size_t>(n));
                    for (int i = 0; i < n; ++i) coords[size_t(i)] = Rat(c[size_t(i)], den);
                    FieldElem e = fe_make(K, coords);
                    // float norm prefilter
                    double ln = 0;
                    for (int i = 0; i < K->r1 + K->r2; ++i)
                        ln += (i < K->r1 ? 1.0 : 2.0) * std::log(std::abs(e.embed(i)) + 1e-300);
                    if (std::abs(ln) > 0.2) continue;
                    Rat nrm = exact_norm(e);
                    if (!(nrm == Rat(1) || nrm == Rat(-1))) continue;
                    if (den == 2 && !is_algebraic_integer(e)) continue;
                    batch.push_back(e);
                }
            }
            // increment odometer
            int pos = 0;
            while (pos < n) {
                if (c[size_t(pos)] < height) {
                    ++c[size_t(pos)];
                    break;
                }
                c[size_t(pos)] = -height;
                ++pos;
            }
            if (pos == n) break;
        }
        for (auto& e : batch) {
            if (dedup) {
                auto row = log_embedding_row(e);
                if (integer_combination(logs, row)) continue; // redundant against found units
                logs.push_back(row);
                // canonical orientation: |first embedding| >= 1, leading
                // nonzero coordinate positive
                FieldElem u = e;
                if (std::abs(u.embed(0)) < 1.0) u = fe_pow(u, -1);
                for (auto& cc : u.coords) {
                    if (cc.is_zero()) continue;
                    if (cc.sign() < 0)
                        for (auto& c2 : u.coords) c2 = -c2;
                    break;
                }
                found.push_back(u);
                continue;
            }
            found.push_back(e);
        }
    }
    return found;
}

std::vector<FieldElem> unit_search_in_basis(const std::vector<FieldElem>& basis, long long coeff_bound) {
    if (basis.empty()) throw std::invalid_argument("unit_search_in_basis: empty basis");
    auto K = basis[0].field;
    int n = K->degree;
    if ((int)basis.size() != n) throw std::invalid_argument("unit_search_in_basis: need a full basis");
    // embedding matrix of the basis
    std::vector<std::vector<std::complex<double>>> emb(size_t(n),
                                                       std::vector<std::complex<double>>(size_t(K->r1 + K->r2)));
    for (int b = 0; b < n; ++b)
        for (int i = 0; i < K->r1 + K->r2; ++i) emb[size_t(b)][size_t(i)] = basis[size_t(b)].embed(i);
    std::vector<FieldElem> found;
    for (long long height = 1; height <= coeff_bound; ++height) {
        std::vector<long long> c(size_t(n), -height);
        for (;;) {
            long long maxc = 0;
            for (long long x : c) maxc = std::max(maxc, std::llabs(x));
            if (maxc == height) {
                double ln = 0;
                for (int i = 0; i < K->r1 + K->r2 && ln < 1e9; ++i) {
                    std::complex<double> v = 0;
                    for (int b = 0; b < n; ++b) v += double(c[size_t(b)]) * emb[size_t(b)][size_t(i)];
                    double a = std::abs(v);
                    if (a < 1e-12) ln = 2e9;
                    else ln += (i < K->r1 ? 1.0 : 2.0) * std::log(a);
                }
                if (std::abs(ln) < 0.2) {
                    FieldElem e = fe_rational(K, Rat(0));
                    for (int b = 0; b < n; ++b) {
                        if (c[size_t(b)] == 0) continue;
                        FieldElem t = basis[size_t(b)];
                        for (auto& x : t.coords) x *= Rat(c[size_t(b)]);
                        e = fe_add(e, t);
                    }
                    Rat nrm = exact_norm(e);
                    if (nrm == Rat(1) || nrm == Rat(-1)) found.push_back(e);
                }
            }
            int pos = 0;
            while (pos < n) {
                if (c[size_t(pos)] < height) {
                    ++c[size_t(pos)];
                    break;
                }
                c[size_t(pos)] = -height;
                ++pos;
            }
            if (pos == n) break;
        }
    }
    return found;
}

FieldElem relative_norm(const FieldElem& e, const std::shared_ptr<const NumberField>& sub,
                        const std::vector<std::vector<int>>& groups) {
    const NumberField& K = *e.field;
    const NumberField& k0 = *sub;
    if ((int)groups.size() != k0.r1 + k0.r2)
        throw std::invalid_argument("relative_norm: need one embedding group per subfield embedding");
    // value of the norm at each subfield embedding (stored representatives)
    std::vector<std::complex<double>> vals(groups.size());
    for (size_t g = 0; g < groups.size(); ++g) {
        std::complex<double> prod = 1;
        for (int idx : groups[g]) {
            if (idx < 0 || idx >= K.r1 + K.r2) throw std::invalid_argument("relative_norm: bad embedding index");
            prod *= e.embed(idx);
        }
        vals[g] = prod;
    }
    // full value vector at all deg(sub) embeddings (append conjugates)
    std::vector<std::complex<double>> roots, values;
    for (int i = 0; i < k0.r1; ++i) {
        roots.push_back(k0.embeddings[size_t(i)]);
        values.push_back(vals[size_t(i)]);
    }
    for (int i = 0; i < k0.r2; ++i) {
        roots.push_back(k0.embeddings[size_t(k0.r1 + i)]);
        values.push_back(vals[size_t(k0.r1 + i)]);
        roots.push_back(std::conj(k0.embeddings[size_t(k0.r1 + i)]));
        values.push_back(std::conj(vals[size_t(k0.r1 + i)]));
    }
    // solve the Vandermonde system for power-basis coordinates
    size_t d = size_t(k0.degree);
    std::vector<std::vector<std::complex<double>>> A(d, std::vector<std::complex<double>>(d + 1));
    for (size_t i = 0; i < d; ++i) {
        std::complex<double> pw = 1;
        for (size_t j = 0; j < d; ++j) {
            A[i][j] = pw;
            pw *= roots[i];
        }
        A[i][d] = values[i];
    }
    for (size_t kcol = 0; kcol < d; ++kcol) {
        size_t piv = kcol;
        for (size_t i = kcol + 1; i < d; ++i)
            if (std::abs(A[i][kcol]) > std::abs(A[piv][kcol])) piv = i;
        std::swap(A[kcol], A[piv]);
        for (size_t i = 0; i < d; ++i) {
            if (i == kcol) continue;
            std::complex<double> f = A[i][kcol] / A[kcol][kcol];
            for (size_t j = kcol; j <= d; ++j) A[i][j] -= f * A[kcol][j];
        }
    }
    std::vector<Rat> coords(d);
    for (size_t i = 0; i < d; ++i) {
        std::complex<double> x = A[i][d] / A[i][i];
        if (std::abs(x.imag()) > 1e-6 * (1 + std::abs(x)))
            throw std::runtime_error("relative_norm: reconstruction failed, value " + std::to_string(x.real()) +
                                     "+" + std::to_string(x.imag()) + "i not real");
        auto rec = recognize_rational(x.real(), 1000000, 1e-8);
        if (!rec.value)
            throw std::runtime_error("relative_norm: rational reconstruction failed at coordinate " +
                                     std::to_string(i) + ", float value " + std::to_string(x.real()));
        coords[i] = *rec.value;
    }
    FieldElem out = fe_make(sub, coords);
    // re-embed and verify
    for (size_t g = 0; g < groups.size(); ++g) {
        std::complex<double> got = out.embed(int(g));
        if (std::abs(got - vals[g]) > 1e-6 * (1 + std::abs(vals[g])))
            throw std::runtime_error("relative_norm: verification failed after reconstruction");
    }
    return out;
}

RationalRecognition recognize_rational(double x, long long max_den, double tol) {
    if (!std::isfinite(x)) throw std::invalid_argument("recognize_rational: non-finite input");
    RationalRecognition out;
    double target = tol * std::max(1.0, std::abs(x));
    double near_target = 10 * tol * std::max(1.0, std::abs(x));
    double y = std::abs(x);
    int sgn = x < 0 ? -1 : 1;
    i128 p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = y;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        if (fl > 9e17) break;
        i128 a = (i128)(long long)fl;
        i128 p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = double(p1) / double(q1);
        double err = std::abs(y - approx);
        if (err <= target) {
            out.value = Rat(sgn * p1, q1);
            return out;
        }
        if (err <= near_target) out.near_miss = true;
        double rem = frac - fl;
        if (rem < 1e-18) break;
        frac = 1.0 / rem;
    }
    return out;
}

VerificationReport baker_heuristic(double u_log, double v_log, long long max_den) {
    VerificationReport rep;
    rep.name = "baker_heuristic";
    if (!(u_log > 0) || !(v_log > 0)) throw std::invalid_argument("baker_heuristic: need positive logarithms");
    double ratio = u_log / v_log;
    auto rec = recognize_rational(ratio, max_den, 1e-8);
    CheckEntry e;
    e.identity = "log ratio has no small-denominator rational approximation";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", ratio);
    e.lhs = buf;
    e.rhs = rec.value ? ("recognized " + rec.value->to_string()) : "none";
    e.exact = true;
    e.pass = !rec.value.has_value();
    e.provenance = {"continued-fraction search with denominator bound " + std::to_string(max_den)};
    rep.add(e);
    if (rec.near_miss) rep.note("near-miss convergent within 10x tolerance");
    return rep;
}

} // namespace dnlab

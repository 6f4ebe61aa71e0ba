#include "dnlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace dnlab {

long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long pow_mod(long long base, long long exp, long long mod) {
    if (mod <= 0) throw std::domain_error("pow_mod: bad modulus");
    i128 result = 1;
    i128 b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return (long long)result;
}

long long inv_mod(long long a, long long mod) {
    long long g = gcd_ll(a, mod);
    if (g != 1) throw std::domain_error("inv_mod: not invertible");
    long long old_r = ((a % mod) + mod) % mod, r = mod;
    long long old_s = 1, s = 0;
    while (r != 0) {
        long long q = old_r / r;
        long long t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    return ((old_s % mod) + mod) % mod;
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // factor out twos of n
    while (n % 2 == 0) {
        n /= 2;
        long long am = ((a % 8) + 8) % 8;
        if (am % 2 == 0) return 0;
        if (am == 3 || am == 5) result = -result;
    }
    a = ((a % n) + n) % n;
    // now n odd positive; standard Jacobi with reciprocity
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long nm = n % 8;
            if (nm == 3 || nm == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
    if (n < 1) throw std::domain_error("factorize: n must be positive");
    std::vector<std::pair<long long, int>> out;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.push_back({d, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

long long primitive_root(long long p) {
    if (!is_prime(p) || p == 2) throw std::domain_error("primitive_root: need odd prime");
    auto fac = factorize(p - 1);
    for (long long g = 2; g < p; ++g) {
        bool ok = true;
        for (auto& [q, e] : fac) {
            (void)e;
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

// ----- polynomial helpers over Rat (dense, ascending degree) -----

static std::vector<Rat> poly_trim(std::vector<Rat> p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

// remainder of a by b (b monic up to leading coefficient division)
static std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    a = poly_trim(a);
    std::vector<Rat> bb = poly_trim(b);
    if (bb.empty()) throw std::domain_error("poly_rem: zero divisor");
    while (a.size() >= bb.size()) {
        Rat q = a.back() / bb.back();
        size_t shift = a.size() - bb.size();
        for (size_t i = 0; i < bb.size(); ++i) a[shift + i] -= q * bb[i];
        a = poly_trim(a);
    }
    return a;
}

static std::vector<Rat> poly_div_exact(std::vector<Rat> a, const std::vector<Rat>& b) {
    a = poly_trim(a);
    std::vector<Rat> bb = poly_trim(b);
    std::vector<Rat> q(a.size() >= bb.size() ? a.size() - bb.size() + 1 : 0);
    while (a.size() >= bb.size()) {
        Rat c = a.back() / bb.back();
        size_t shift = a.size() - bb.size();
        q[shift] = c;
        for (size_t i = 0; i < bb.size(); ++i) a[shift + i] -= c * bb[i];
        a = poly_trim(a);
    }
    if (!a.empty()) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

std::vector<Rat> cyclotomic_poly(long long n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<Rat> num(size_t(n) + 1);
    num[0] = Rat(-1);
    num[size_t(n)] = Rat(1);
    for (long long d = 1; d < n; ++d) {
        if (n % d == 0) {
            num = poly_div_exact(num, cyclotomic_poly(d));
        }
    }
    return num;
}

// ----- CycValue -----

CycValue CycValue::root_of_unity(long long ord, long long exponent) {
    CycValue v(ord);
    long long e = ((exponent % ord) + ord) % ord;
    v.coeff[size_t(e)] = Rat(1);
    return v;
}

Rat CycValue::rational_part() const {
    std::vector<Rat> p(coeff.begin(), coeff.end());
    p = poly_trim(p);
    if (order > 1 && !p.empty()) p = poly_trim(poly_rem(p, cyclotomic_poly(order)));
    if (p.empty()) return Rat(0);
    if (p.size() == 1) return p[0];
    throw std::domain_error("CycValue: not a rational value");
}

CycValue CycValue::promoted(long long new_order) const {
    if (new_order % order != 0) throw std::domain_error("CycValue: bad promotion order");
    long long k = new_order / order;
    CycValue v(new_order);
    for (size_t j = 0; j < coeff.size(); ++j)
        v.coeff[size_t((long long)j * k)] += coeff[j];
    return v;
}

CycValue CycValue::conj() const {
    CycValue v(order);
    for (size_t j = 0; j < coeff.size(); ++j)
        v.coeff[(order - (long long)j) % order] += coeff[j];
    return v;
}

std::complex<double> CycValue::to_complex() const {
    std::complex<double> s = 0;
    for (size_t j = 0; j < coeff.size(); ++j) {
        if (coeff[j].is_zero()) continue;
        double ang = 2.0 * M_PI * double(j) / double(order);
        s += coeff[j].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

bool CycValue::is_zero_value() const {
    std::vector<Rat> p(coeff.begin(), coeff.end());
    p = poly_trim(p);
    if (p.empty()) return true;
    if (order == 1) return false;
    return poly_trim(poly_rem(p, cyclotomic_poly(order))).empty();
}

bool CycValue::equals(const CycValue& other) const {
    long long m = std::lcm(order, other.order);
    return cyc_sub(promoted(m), other.promoted(m)).is_zero_value();
}

std::string CycValue::to_string() const {
    std::string s;
    bool first = true;
    for (size_t j = 0; j < coeff.size(); ++j) {
        if (coeff[j].is_zero()) continue;
        if (!first) s += " + ";
        s += coeff[j].to_string();
        if (j > 0) s += "*z^" + std::to_string(j);
        first = false;
    }
    if (first) s = "0";
    if (order > 1) s += " (z = zeta_" + std::to_string(order) + ")";
    return s;
}

CycValue cyc_add(const CycValue& a, const CycValue& b) {
    long long m = std::lcm(a.order, b.order);
    CycValue x = a.promoted(m), y = b.promoted(m);
    for (size_t j = 0; j < x.coeff.size(); ++j) x.coeff[j] += y.coeff[j];
    return x;
}

CycValue cyc_sub(const CycValue& a, const CycValue& b) {
    long long m = std::lcm(a.order, b.order);
    CycValue x = a.promoted(m), y = b.promoted(m);
    for (size_t j = 0; j < x.coeff.size(); ++j) x.coeff[j] -= y.coeff[j];
    return x;
}

CycValue cyc_mul(const CycValue& a, const CycValue& b) {
    long long m = std::lcm(a.order, b.order);
    CycValue x = a.promoted(m), y = b.promoted(m);
    CycValue z(m);
    for (size_t i = 0; i < x.coeff.size(); ++i) {
        if (x.coeff[i].is_zero()) continue;
        for (size_t j = 0; j < y.coeff.size(); ++j) {
            if (y.coeff[j].is_zero()) continue;
            z.coeff[(i + j) % size_t(m)] += x.coeff[i] * y.coeff[j];
        }
    }
    return z;
}

CycValue cyc_scale(const CycValue& a, const Rat& r) {
    CycValue z = a;
    for (auto& c : z.coeff) c *= r;
    return z;
}

// ----- DirichletCharacter -----

DirichletCharacter DirichletCharacter::trivial() {
    DirichletCharacter chi;
    chi.modulus = 1;
    chi.parity = 1;
    return chi;
}

static void check_modulus(long long m) {
    if (m < 1 || m % 2 == 0) throw std::invalid_argument("DirichletCharacter: modulus must be odd");
    for (auto& [p, e] : factorize(m))
        if (e > 1) throw std::invalid_argument("DirichletCharacter: modulus must be squarefree");
}

DirichletCharacter DirichletCharacter::quadratic(long long fund_disc) {
    long long m = fund_disc < 0 ? -fund_disc : fund_disc;
    check_modulus(m);
    if (((fund_disc % 4) + 4) % 4 != 1)
        throw std::invalid_argument("DirichletCharacter::quadratic: need disc = 1 mod 4 for odd modulus");
    DirichletCharacter chi;
    chi.modulus = m;
    for (auto& [p, e] : factorize(m)) {
        (void)e;
        LocalCharacter lc;
        lc.p = p;
        lc.generator = primitive_root(p);
        lc.image_order = 2;
        // local component at p of kronecker(fund_disc, .) is the Legendre symbol
        lc.image_exponent = 1; // chi_p(g) = -1 for a primitive root g
        chi.components.push_back(lc);
    }
    // parity = chi(-1) = product of Legendre symbols (-1 | p)
    int par = 1;
    for (auto& lc : chi.components) par *= kronecker(-1, lc.p);
    chi.parity = par;
    return chi;
}

DirichletCharacter DirichletCharacter::prime_power_order(long long p, long long order, long long exponent) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("prime_power_order: need odd prime");
    if ((p - 1) % order != 0) throw std::invalid_argument("prime_power_order: order must divide p-1");
    DirichletCharacter chi;
    chi.modulus = p;
    LocalCharacter lc;
    lc.p = p;
    lc.generator = primitive_root(p);
    lc.image_order = order;
    lc.image_exponent = ((exponent % order) + order) % order;
    chi.components.push_back(lc);
    // chi(-1): -1 = g^{(p-1)/2}, so chi(-1) = zeta_order^{e (p-1)/2}
    long long rot = (lc.image_exponent * ((p - 1) / 2)) % order;
    chi.parity = (rot == 0) ? 1 : -1; // chi(-1)^2 = 1, so rot is 0 or order/2
    return chi;
}

DirichletCharacter DirichletCharacter::times(const DirichletCharacter& other) const {
    if (gcd_ll(modulus, other.modulus) != 1)
        throw std::invalid_argument("DirichletCharacter::times: moduli must be coprime");
    DirichletCharacter chi;
    chi.modulus = modulus * other.modulus;
    chi.components = components;
    chi.components.insert(chi.components.end(), other.components.begin(), other.components.end());
    std::sort(chi.components.begin(), chi.components.end(),
              [](const LocalCharacter& a, const LocalCharacter& b) { return a.p < b.p; });
    chi.parity = parity * other.parity;
    return chi;
}

bool DirichletCharacter::is_quadratic() const {
    for (auto& lc : components)
        if (lc.image_order > 2) return false;
    return true;
}

long long DirichletCharacter::value_order() const {
    long long m = 1;
    for (auto& lc : components) m = std::lcm(m, lc.image_order);
    return m;
}

static long long discrete_log(long long g, long long n, long long p) {
    long long v = 1;
    for (long long k = 0; k < p - 1; ++k) {
        if (v == n) return k;
        v = (i128)v * g % p;
    }
    throw std::logic_error("discrete_log: not found");
}

CycValue DirichletCharacter::eval(long long n) const {
    long long ord = value_order();
    if (gcd_ll(n, modulus) != 1) return CycValue(ord); // zero
    long long rot = 0;                                 // exponent of zeta_ord
    for (auto& lc : components) {
        long long nm = ((n % lc.p) + lc.p) % lc.p;
        long long dl = discrete_log(lc.generator, nm, lc.p);
        long long r = (i128)dl * lc.image_exponent % lc.image_order;
        rot = (rot + r * (ord / lc.image_order)) % ord;
    }
    return CycValue::root_of_unity(ord, rot);
}

std::complex<double> DirichletCharacter::eval_complex(long long n) const {
    if (gcd_ll(n, modulus) != 1) return 0.0;
    std::complex<double> v = 1.0;
    for (auto& lc : components) {
        long long nm = ((n % lc.p) + lc.p) % lc.p;
        long long dl = discrete_log(lc.generator, nm, lc.p);
        double ang = 2.0 * M_PI * double((i128)dl * lc.image_exponent % lc.image_order) / double(lc.image_order);
        v *= std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return v;
}

int DirichletCharacter::eval_quadratic(long long n) const {
    if (!is_quadratic()) throw std::domain_error("eval_quadratic: character is not quadratic");
    if (gcd_ll(n, modulus) != 1) return 0;
    int v = 1;
    for (auto& lc : components) {
        if (lc.image_order == 1 || lc.image_exponent == 0) continue;
        v *= kronecker(n, lc.p);
    }
    return v;
}

std::string DirichletCharacter::to_json_string() const {
    nlohmann::ordered_json j;
    j["modulus"] = modulus;
    j["components"] = nlohmann::ordered_json::array();
    for (auto& lc : components) {
        j["components"].push_back({{"p", lc.p},
                                   {"generator", lc.generator},
                                   {"image_order", lc.image_order},
                                   {"image_exponent", lc.image_exponent}});
    }
    return j.dump();
}

DirichletCharacter DirichletCharacter::from_json_string(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    DirichletCharacter chi;
    chi.modulus = j.at("modulus").get<long long>();
    check_modulus(chi.modulus);
    long long prod = 1;
    for (auto& cj : j.at("components")) {
        LocalCharacter lc;
        lc.p = cj.at("p").get<long long>();
        lc.generator = cj.at("generator").get<long long>();
        lc.image_order = cj.at("image_order").get<long long>();
        lc.image_exponent = cj.at("image_exponent").get<long long>();
        if (!is_prime(lc.p)) throw std::invalid_argument("character json: p not prime");
        if (pow_mod(lc.generator, lc.p - 1, lc.p) != 1) throw std::invalid_argument("character json: bad generator");
        chi.components.push_back(lc);
        prod *= lc.p;
    }
    if (prod != chi.modulus) throw std::invalid_argument("character json: components do not match modulus");
    // parity from local data
    int par = 1;
    for (auto& lc : chi.components) {
        long long rot = (i128)lc.image_exponent * ((lc.p - 1) / 2) % lc.image_order;
        if (rot == 0) continue;
        if (2 * rot == lc.image_order)
            par = -par;
        else
            throw std::invalid_argument("character json: non-real chi(-1)");
    }
    chi.parity = par;
    return chi;
}

CycValue gauss_sum(const DirichletCharacter& chi_p) {
    if (chi_p.components.size() != 1) throw std::invalid_argument("gauss_sum: need prime modulus");
    const LocalCharacter& lc = chi_p.components[0];
    long long p = lc.p;
    if (lc.image_order == 1 || lc.image_exponent == 0)
        throw std::invalid_argument("gauss_sum: trivial character is degenerate (sum would be -1)");
    long long ord = std::lcm(p, lc.image_order);
    CycValue g(ord);
    long long v = 1; // g^k
    for (long long k = 0; k < p - 1; ++k) {
        long long rot_chi = (i128)k * lc.image_exponent % lc.image_order;
        // chi(g^k) * e(g^k / p) = zeta_ord^{rot_chi * ord/image_order + v * ord/p}
        long long expo = (rot_chi * (ord / lc.image_order) + v * (ord / p)) % ord;
        g.coeff[size_t(expo)] += Rat(1);
        v = (i128)v * lc.generator % p;
    }
    return g;
}

} // namespace dnlab

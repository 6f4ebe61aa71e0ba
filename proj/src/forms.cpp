#include "dnlab/forms.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dnlab {

bool BQForm::is_reduced() const {
    if (!positive_definite()) return false;
    long long ab = b < 0 ? -b : b;
    if (!(ab <= a && a <= c)) return false;
    if ((ab == a || a == c) && b < 0) return false;
    return true;
}

long long bqf_rep_count(const BQForm& Q, long long n) {
    if (!Q.positive_definite()) throw std::invalid_argument("bqf_rep_count: form not positive definite");
    if (n < 0) return 0;
    if (n == 0) return 1;
    // Q(x,y) >= (|disc|/(4a)) y^2 and a(x + by/(2a))^2 <= n
    long long count = 0;
    double absd = double(-Q.disc());
    long long ymax = (long long)std::floor(std::sqrt(4.0 * Q.a * n / absd)) + 1;
    for (long long y = -ymax; y <= ymax; ++y) {
        // a x^2 + (b y) x + (c y^2 - n) = 0
        double xc = -double(Q.b) * y / (2.0 * Q.a);
        double rad = double(n) - absd / (4.0 * Q.a) * double(y) * double(y);
        if (rad < 0) continue;
        double half = std::sqrt(rad / double(Q.a));
        long long xlo = (long long)std::ceil(xc - half - 1);
        long long xhi = (long long)std::floor(xc + half + 1);
        for (long long x = xlo; x <= xhi; ++x)
            if (Q.a * x * x + Q.b * x * y + Q.c * y * y == n) ++count;
    }
    return count;
}

std::vector<long long> bqf_rep_histogram(const BQForm& Q, long long bound) {
    if (!Q.positive_definite()) throw std::invalid_argument("bqf_rep_histogram: form not positive definite");
    std::vector<long long> h(size_t(bound) + 1, 0);
    double absd = double(-Q.disc());
    long long ymax = (long long)std::floor(std::sqrt(4.0 * Q.a * bound / absd)) + 1;
    for (long long y = -ymax; y <= ymax; ++y) {
        double xc = -double(Q.b) * y / (2.0 * Q.a);
        double rad = double(bound) - absd / (4.0 * Q.a) * double(y) * double(y);
        if (rad < 0) continue;
        double half = std::sqrt(rad / double(Q.a)) + 1;
        for (long long x = (long long)std::ceil(xc - half); x <= (long long)std::floor(xc + half); ++x) {
            long long v = Q.a * x * x + Q.b * x * y + Q.c * y * y;
            if (v >= 0 && v <= bound) ++h[size_t(v)];
        }
    }
    return h;
}

std::vector<BQForm> reduced_forms(long long disc) {
    if (disc >= 0) throw std::invalid_argument("reduced_forms: need negative discriminant");
    long long r = ((disc % 4) + 4) % 4;
    if (r != 0 && r != 1) throw std::invalid_argument("reduced_forms: disc must be 0 or 1 mod 4");
    std::vector<BQForm> out;
    long long amax = (long long)std::floor(std::sqrt(double(-disc) / 3.0));
    for (long long a = 1; a <= amax; ++a) {
        for (long long b = -a; b <= a; ++b) {
            long long num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            long long c = num / (4 * a);
            if (c < a) continue;
            BQForm Q{a, b, c};
            if (!Q.is_reduced()) continue;
            if (gcd_ll(gcd_ll(a, b), c) != 1) continue;
            out.push_back(Q);
        }
    }
    return out;
}

long long class_number_neg(long long disc) { return (long long)reduced_forms(disc).size(); }

const CycValue& CoefficientTable::at(long long n) const {
    if (n < 1 || n > bound) throw std::out_of_range("CoefficientTable: index " + std::to_string(n) +
                                                    " outside bound " + std::to_string(bound));
    return values[size_t(n)];
}

long long CoefficientTable::at_int(long long n) const {
    Rat r = at(n).rational_part();
    if (!r.is_integer()) throw std::domain_error("CoefficientTable: coefficient not an integer");
    return (long long)r.num;
}

std::vector<std::string> CoefficientTable::validate() const {
    std::vector<std::string> bad;
    if (bound < 1 || !at(1).equals(CycValue::from_rational(Rat(1))))
        bad.push_back("c(1) != 1");
    // multiplicativity on coprime pairs
    for (long long m = 2; m * m <= bound; ++m) {
        for (long long n = m + 1; m * n <= bound; ++n) {
            if (gcd_ll(m, n) != 1) continue;
            if (!at(m * n).equals(cyc_mul(at(m), at(n))))
                bad.push_back("c(" + std::to_string(m * n) + ") != c(" + std::to_string(m) + ")c(" +
                              std::to_string(n) + ")");
        }
    }
    // Hecke recursion at prime powers (needs the nebentypus; level 0 marks
    // an imported table with unknown character)
    if (level == 0) return bad;
    for (long long p = 2; p * p <= bound; ++p) {
        if (!is_prime(p)) continue;
        CycValue chi_p = character.eval(p);
        for (long long pk = p; pk * p <= bound; pk *= p) {
            CycValue lhs = at(pk * p);
            CycValue rhs = cyc_sub(cyc_mul(at(p), at(pk)), cyc_mul(chi_p, pk == p ? at(1) : at(pk / p)));
            if (!lhs.equals(rhs))
                bad.push_back("Hecke recursion fails at p=" + std::to_string(p) +
                              ", p^{k+1}=" + std::to_string(pk * p));
        }
    }
    return bad;
}

CoefficientTable dihedral_coeffs(long long disc_M, long long bound) {
    if (disc_M >= 0) throw std::invalid_argument("dihedral_coeffs: need negative discriminant");
    auto forms = reduced_forms(disc_M);
    if (forms.size() != 3)
        throw std::invalid_argument("dihedral_coeffs: class number is " + std::to_string(forms.size()) +
                                    ", need 3");
    // principal form has (a,b) = (1, disc mod 2); the two non-principal forms
    // are conjugate and represent the same integers
    BQForm principal, other;
    bool found_p = false, found_o = false;
    for (auto& Q : forms) {
        if (Q.a == 1) {
            principal = Q;
            found_p = true;
        } else if (!found_o || Q.b > 0) {
            other = Q;
            found_o = true;
        }
    }
    if (!found_p || !found_o) throw std::logic_error("dihedral_coeffs: reduced forms malformed");
    auto rp = bqf_rep_histogram(principal, bound);
    auto ro = bqf_rep_histogram(other, bound);
    CoefficientTable t;
    t.level = -disc_M;
    t.character = DirichletCharacter::quadratic(disc_M);
    t.bound = bound;
    t.values.assign(size_t(bound) + 1, CycValue());
    for (long long n = 1; n <= bound; ++n) {
        long long twice = rp[size_t(n)] - ro[size_t(n)];
        if (twice % 2 != 0) throw std::logic_error("dihedral_coeffs: odd representation difference");
        t.values[size_t(n)] = CycValue::from_rational(Rat(twice / 2));
    }
    return t;
}

std::vector<long long> eta_product_coeffs(const std::vector<std::pair<long long, long long>>& factors,
                                          long long bound) {
    long long lead24 = 0;
    for (auto& [d, e] : factors) {
        if (d < 1) throw std::invalid_argument("eta_product_coeffs: need positive multipliers");
        lead24 += d * e;
    }
    if (lead24 % 24 != 0) throw std::invalid_argument("eta_product_coeffs: non-integral leading exponent");
    long long lead = lead24 / 24;
    // work with the product of Euler factors, then shift by q^lead
    std::vector<long long> prod(size_t(bound) + 1, 0);
    prod[0] = 1;
    for (auto& [d, e] : factors) {
        if (e < 0) throw std::invalid_argument("eta_product_coeffs: negative exponents unsupported");
        for (long long rep = 0; rep < e; ++rep) {
            // multiply by prod_{n>=1} (1 - q^{dn}) = sum_k (-1)^k q^{d k(3k-1)/2}
            std::vector<long long> next(size_t(bound) + 1, 0);
            for (long long k = 0;; ++k) {
                bool any = false;
                for (int s = 0; s < (k == 0 ? 1 : 2); ++s) {
                    long long kk = s == 0 ? k : -k;
                    long long expo = d * (kk * (3 * kk - 1) / 2);
                    if (expo > bound) continue;
                    any = true;
                    long long sign = (kk % 2 == 0) ? 1 : -1;
                    for (long long n = expo; n <= bound; ++n)
                        next[size_t(n)] += sign * prod[size_t(n - expo)];
                }
                if (k > 0 && !any) break;
            }
            prod = next;
        }
    }
    std::vector<long long> out(size_t(bound) + 1, 0);
    for (long long n = lead; n <= bound; ++n) out[size_t(n)] = prod[size_t(n - lead)];
    return out;
}

static CycValue parse_value(const std::string& tok, long long zeta_order, int lineno) {
    // integer or "a+b*z" with z the declared root of unity
    try {
        size_t zpos = tok.find('z');
        if (zpos == std::string::npos) {
            return CycValue::from_rational(Rat(std::stoll(tok)));
        }
        if (zeta_order <= 1) throw std::runtime_error("value uses z without #zeta header");
        // forms: "a+b*z", "b*z", "-b*z", "a-b*z"
        long long a = 0, b = 1;
        std::string head = tok.substr(0, zpos);
        if (!head.empty() && head.back() == '*') head.pop_back();
        size_t split = head.find_last_of("+-", head.size() - 1);
        if (head.empty()) {
            a = 0;
            b = 1;
        } else if (split == std::string::npos || split == 0) {
            a = 0;
            b = head == "-" ? -1 : (head == "" || head == "+") ? 1 : std::stoll(head);
        } else {
            a = std::stoll(head.substr(0, split));
            std::string bs = head.substr(split);
            b = (bs == "+") ? 1 : (bs == "-") ? -1 : std::stoll(bs);
        }
        CycValue v = CycValue::from_rational(Rat(a)).promoted(zeta_order);
        CycValue z = CycValue::root_of_unity(zeta_order, 1);
        return cyc_add(v, cyc_scale(z, Rat(b)));
    } catch (const std::exception& e) {
        throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": " + e.what());
    }
}

ImportResult import_qexp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("import_qexp: cannot open " + path);
    ImportResult res;
    long long zeta_order = 1, level = 0, char_disc = 0;
    std::vector<std::pair<long long, CycValue>> rows;
    std::string line;
    int lineno = 0;
    long long prev_n = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "zeta") {
                if (!(hs >> zeta_order) || zeta_order < 1)
                    throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": bad #zeta");
            } else if (key == "level") {
                if (!(hs >> level) || level < 1)
                    throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": bad #level");
            } else if (key == "char-disc") {
                if (!(hs >> char_disc) || char_disc == 0)
                    throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": bad #char-disc");
            }
            continue;
        }
        std::istringstream ls(line);
        long long n;
        std::string val;
        if (!(ls >> n >> val))
            throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": expected 'n value'");
        if (n <= prev_n)
            throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": n not ascending");
        prev_n = n;
        rows.push_back({n, parse_value(val, zeta_order, lineno)});
    }
    if (rows.empty()) throw std::runtime_error("import_qexp: empty file");
    if ((level > 0) != (char_disc != 0))
        throw std::runtime_error("import_qexp: #level and #char-disc must be given together");
    res.table.bound = rows.back().first;
    res.table.values.assign(size_t(res.table.bound) + 1, CycValue(zeta_order));
    for (auto& [n, v] : rows) res.table.values[size_t(n)] = v;
    res.table.level = level; // 0 marks an import without form metadata
    res.table.character = char_disc != 0 ? DirichletCharacter::quadratic(char_disc) : DirichletCharacter::trivial();
    res.warnings = res.table.validate();
    res.warning_flag = !res.warnings.empty();
    return res;
}

void export_qexp(const CoefficientTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_qexp: cannot open " + path);
    if (table.level > 0) out << "#level " << table.level << '\n';
    if (table.character.is_quadratic() && table.character.modulus > 1) {
        // quadratic characters round-trip through the discriminant header
        long long disc = table.character.parity > 0 ? table.character.modulus : -table.character.modulus;
        out << "#char-disc " << disc << '\n';
    }
    for (long long n = 1; n <= table.bound; ++n) {
        Rat r = table.at(n).rational_part();
        out << n << ' ' << r.to_string() << '\n';
    }
}

} // namespace dnlab

#include "dnlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "dnlab/parallel.hpp"

namespace dnlab {

bool is_fundamental_disc(long long d) {
    if (d == 1 || d == 0) return false;
    long long r = ((d % 4) + 4) % 4;
    auto squarefree = [](long long n) {
        n = std::llabs(n);
        for (long long k = 2; k * k <= n; ++k)
            if (n % (k * k) == 0) return false;
        return true;
    };
    if (r == 1) return squarefree(d);
    if (r == 0) {
        long long m = d / 4;
        long long mr = ((m % 4) + 4) % 4;
        return (mr == 2 || mr == 3) && squarefree(m);
    }
    return false;
}

// continued-fraction unit of Z[sqrt(m)]: smallest x + y sqrt(m) > 1, x^2 - m y^2 = +-1
static std::pair<i128, i128> cf_unit(long long m) {
    long long a0 = (long long)std::sqrt(double(m));
    while ((a0 + 1) * (a0 + 1) <= m) ++a0;
    while (a0 * a0 > m) --a0;
    if (a0 * a0 == m) throw std::invalid_argument("cf_unit: m is a perfect square");
    i128 P = 0, Q = 1, a = a0;
    i128 h_prev = 1, h_cur = a0, k_prev = 0, k_cur = 1;
    for (int i = 0; i < 200000; ++i) {
        P = a * Q - P;
        Q = ((i128)m - P * P) / Q;
        if (Q == 1) {
            i128 val = h_cur * h_cur - (i128)m * k_cur * k_cur;
            if (val == 1 || val == -1) return {h_cur, k_cur};
        }
        a = ((i128)a0 + P) / Q;
        i128 h_next = a * h_cur + h_prev, k_next = a * k_cur + k_prev;
        h_prev = h_cur;
        h_cur = h_next;
        k_prev = k_cur;
        k_cur = k_next;
    }
    throw std::runtime_error("cf_unit: period not found");
}

std::pair<long long, long long> pell_fundamental_unit(long long d) {
    if (d <= 0) throw std::invalid_argument("pell_fundamental_unit: need d > 0");
    if (((d % 4) + 4) % 4 == 0) {
        auto [x, y] = cf_unit(d / 4);
        // x + y sqrt(d/4) = (2x + y sqrt(d))/2
        return {(long long)(2 * x), (long long)y};
    }
    // d = 1 mod 4: unit of Z[sqrt(d)] first, then try a cube root in the
    // maximal order (the index is 1 or 3)
    auto [x1, y1] = cf_unit(d);
    double u1 = double(x1) + double(y1) * std::sqrt(double(d));
    double e = std::cbrt(u1);
    // epsilon = (x + y sqrt(d))/2 with x = e + nrm/e, nrm = +-1
    for (int nrm : {-1, 1}) {
        long long x = (long long)std::llround(e + nrm / e);
        long long y = (long long)std::llround((e - nrm / e) / std::sqrt(double(d)));
        if (x <= 0 || y <= 0) continue;
        if (x * x - d * y * y != 4 * nrm) continue;
        // verify cube = u1 exactly: ((x + y s)/2)^3
        i128 a = x, b = y;
        // (a + b s)^2 = a^2 + d b^2 + 2ab s ; then * (a + b s)
        i128 p = a * a + (i128)d * b * b, q = 2 * a * b;
        i128 rx = p * a + (i128)d * q * b, ry = p * b + q * a; // /8 total
        if (rx == 8 * (i128)x1 && ry == 8 * (i128)y1) return {x, y};
    }
    return {(long long)(2 * x1), (long long)(2 * y1)};
}

long long dirichlet_class_number(long long d) {
    if (!is_fundamental_disc(d)) throw std::invalid_argument("dirichlet_class_number: non-fundamental disc");
    if (d < 0) return class_number_neg(d);
    // h = sqrt(d) L(1,chi) / (2 log eps) with L(1,chi) from the finite
    // log-sine formula; h is certified by integrality of the rounding
    double L = 0;
    for (long long a = 1; a < d; ++a) {
        int chi = kronecker(d, a);
        if (chi == 0) continue;
        L -= chi * std::log(2.0 * std::sin(M_PI * double(a) / double(d)));
    }
    L /= std::sqrt(double(d));
    auto [x, y] = pell_fundamental_unit(d);
    double logeps = std::log((double(x) + double(y) * std::sqrt(double(d))) / 2.0);
    double h = L * std::sqrt(double(d)) / (2.0 * logeps);
    long long hr = (long long)std::llround(h);
    if (std::abs(h - double(hr)) > 1e-6 || hr < 1)
        throw std::runtime_error("dirichlet_class_number: rounding failed, h = " + std::to_string(h));
    return hr;
}

double dirichlet_L1_series(long long d, long long X) {
    // Richardson extrapolation of S(X) = sum chi(n) e^{-n/X} / n over X, 2X, 4X
    long long q = std::llabs(d);
    std::vector<int> chi(static_cast<size_t>(q));
    for (long long n = 0; n < q; ++n) chi[size_t(n)] = kronecker(d, n);
    long long nmax = 30 * 4 * X;
    double s1 = 0, s2 = 0, s4 = 0;
    double r = std::exp(-1.0 / double(4 * X));
    double t4 = 1;
    for (long long n = 1; n <= nmax; ++n) {
        t4 *= r;
        int c = chi[size_t(n % q)];
        if (c == 0) continue;
        double t2 = t4 * t4;
        double t1 = t2 * t2;
        double cn = double(c) / double(n);
        s4 += cn * t4;
        s2 += cn * t2;
        s1 += cn * t1;
    }
    return (8 * s4 - 6 * s2 + s1) / 3.0;
}

LValueResult dirichlet_L1(long long d) {
    if (!is_fundamental_disc(d)) throw std::invalid_argument("dirichlet_L1: non-fundamental discriminant");
    LValueResult out;
    out.method = "class_number_formula";
    long long h = dirichlet_class_number(d);
    if (d < 0) {
        long long w = d == -3 ? 6 : (d == -4 ? 4 : 2);
        out.value = 2.0 * M_PI * double(h) / (double(w) * std::sqrt(double(-d)));
    } else {
        auto [x, y] = pell_fundamental_unit(d);
        double logeps = std::log((double(x) + double(y) * std::sqrt(double(d))) / 2.0);
        out.value = 2.0 * double(h) * logeps / std::sqrt(double(d));
    }
    double series = dirichlet_L1_series(d, 10000);
    out.error_estimate = std::abs(out.value - series);
    out.truncation = 30 * 40000;
    if (out.error_estimate > 1e-6 * std::abs(out.value))
        throw std::runtime_error("dirichlet_L1: closed form and smoothed series disagree for d = " +
                                 std::to_string(d));
    return out;
}

double expint_e1(double x) {
    if (x <= 0) throw std::invalid_argument("expint_e1: need x > 0");
    if (x <= 1.0) {
        const double euler_gamma = 0.57721566490153286060651209;
        double sum = -euler_gamma - std::log(x);
        double term = 1;
        for (int k = 1; k < 40; ++k) {
            term *= -x / k;
            sum -= term / k;
            if (std::abs(term / k) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    // modified Lentz continued fraction: E1(x) = e^{-x} * 1/(x+1-1/(x+3-4/(x+5-...)))
    double b = x + 1, c = 1e300, dd = 1.0 / b, f = dd;
    for (int i = 1; i < 200; ++i) {
        double an = -double(i) * double(i);
        b += 2;
        dd = 1.0 / (an * dd + b);
        c = b + an / c;
        double delta = c * dd;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return f * std::exp(-x);
}

// Lambda(1; t, w) = sum_n c(n) [ e^{-a_n t}/a_n + w E1(a_n / t) ], a_n = 2 pi n / sqrt(N)
static double completed_lambda1(const std::vector<double>& coeff, long long conductor, double t, int w,
                                long long nmax) {
    double sq = std::sqrt(double(conductor));
    double sum = 0;
    for (long long n = 1; n <= nmax; ++n) {
        double c = coeff[size_t(n)];
        if (c == 0) continue;
        double a = 2.0 * M_PI * double(n) / sq;
        if (a * std::min(t, 1.0 / t) > 420) break;
        sum += c * (std::exp(-a * t) / a + double(w) * expint_e1(a / t));
    }
    return sum;
}

LValueResult modular_L1(const CoefficientTable& table, long long conductor, const DirichletCharacter* twist) {
    double sq = std::sqrt(double(conductor));
    long long need = (long long)std::ceil(42.0 * sq / (2.0 * M_PI));
    if (table.bound < need)
        throw std::invalid_argument("modular_L1: coefficient bound " + std::to_string(table.bound) +
                                    " too small for conductor " + std::to_string(conductor) + ", need " +
                                    std::to_string(need));
    std::vector<double> coeff(size_t(table.bound) + 1, 0.0);
    for (long long n = 1; n <= table.bound; ++n) {
        double c = table.at(n).to_complex().real();
        if (twist) c *= twist->eval_complex(n).real();
        coeff[size_t(n)] = c;
    }
    // root number from split-point independence
    double best = 1e300;
    int w = 1;
    for (int cand : {1, -1}) {
        double l1 = completed_lambda1(coeff, conductor, 1.0, cand, table.bound);
        double l2 = completed_lambda1(coeff, conductor, 1.4, cand, table.bound);
        double dev = std::abs(l1 - l2);
        if (dev < best) {
            best = dev;
            w = cand;
        }
    }
    double lam = completed_lambda1(coeff, conductor, 1.0, w, table.bound);
    double lam_half = completed_lambda1(coeff, conductor, 1.0, w, std::max<long long>(10, table.bound / 2));
    LValueResult out;
    out.value = (2.0 * M_PI / sq) * lam;
    out.method = std::string("smoothed_series, root number ") + (w > 0 ? "+1" : "-1");
    out.truncation = table.bound;
    out.error_estimate = (2.0 * M_PI / sq) * (std::abs(lam - lam_half) + best) + 1e-15 * std::abs(out.value);
    return out;
}

LValueResult ad0_L1(const CoefficientTable& f0, long long disc_M) {
    LValueResult lf = modular_L1(f0, f0.level, nullptr);
    LValueResult lchi = dirichlet_L1(disc_M);
    LValueResult out;
    out.value = lf.value * lchi.value;
    out.method = "product: " + lf.method + " x class_number_formula";
    out.truncation = lf.truncation;
    out.error_estimate = std::abs(lf.error_estimate * lchi.value) + std::abs(lchi.error_estimate * lf.value);
    return out;
}

LValueResult ad0_twist_L1(const CoefficientTable& f0, long long disc_M, long long D) {
    if (gcd_ll(D, f0.level) != 1) throw std::invalid_argument("ad0_twist_L1: D must be coprime to the level");
    DirichletCharacter chiD = DirichletCharacter::quadratic(D);
    LValueResult lf = modular_L1(f0, f0.level * D * D, &chiD);
    LValueResult lchi = dirichlet_L1(disc_M * D);
    LValueResult out;
    out.value = lf.value * lchi.value;
    out.method = "product: " + lf.method + " x class_number_formula";
    out.truncation = lf.truncation;
    out.error_estimate = std::abs(lf.error_estimate * lchi.value) + std::abs(lchi.error_estimate * lf.value);
    if (!(out.value > 0)) throw std::runtime_error("ad0_twist_L1: value not positive");
    return out;
}

// ----- Dedekind eta -----

std::complex<double> eta_qproduct(std::complex<double> z) {
    std::complex<double> q = std::exp(std::complex<double>(0, 2 * M_PI) * z);
    std::complex<double> prod = std::exp(std::complex<double>(0, 2 * M_PI) * z / 24.0);
    std::complex<double> qn = 1;
    for (int n = 1; n < 12000; ++n) {
        qn *= q;
        prod *= (1.0 - qn);
        if (std::abs(qn) < 1e-19) break;
    }
    return prod;
}

std::complex<double> eta_function(std::complex<double> z) {
    // reduce to the fundamental domain with S and T, dividing out the factors
    std::complex<double> factor = 1;
    for (int iter = 0; iter < 4000; ++iter) {
        double n = std::round(z.real());
        if (n != 0) {
            // eta(z) = e^{-i pi n/12} eta(z + n)
            z += n; // we move z towards the domain and track eta(z0) = factor * eta(z)
            factor *= std::exp(std::complex<double>(0, -M_PI * n / 12.0));
        }
        if (std::norm(z) < 1.0 - 1e-15) {
            // eta(z) = eta(-1/z) / sqrt(-i z)
            factor /= std::sqrt(std::complex<double>(0, -1) * z);
            z = -1.0 / z;
        } else {
            break;
        }
    }
    return factor * eta_qproduct(z);
}

double dedekind_sum(long long h, long long k) {
    // s(h,k) = sum_{r=1}^{k-1} ((r/k))((hr/k))
    double s = 0;
    h = ((h % k) + k) % k;
    for (long long r = 1; r < k; ++r) {
        double x = double(r) / double(k);
        long long hr = (h * r) % k;
        double y = double(hr) / double(k);
        double sx = x - std::floor(x) - 0.5;
        double sy = (hr == 0) ? 0.0 : y - std::floor(y) - 0.5;
        s += sx * sy;
    }
    return s;
}

std::complex<double> eta_apostol(std::complex<double> z, long long a, long long b, long long c, long long d) {
    if (c <= 0) throw std::invalid_argument("eta_apostol: need c > 0");
    (void)b; // the multiplier depends on b only through the determinant condition
    // eta((az+b)/(cz+d)) = eps(a,b,c,d) {-i(cz+d)}^{1/2} eta(z)
    double eps_arg = M_PI * (double(a + d) / (12.0 * double(c)) + dedekind_sum(-d, c));
    std::complex<double> eps = std::exp(std::complex<double>(0, eps_arg));
    std::complex<double> cz_d = std::complex<double>(c) * z + std::complex<double>(d);
    return eps * std::sqrt(std::complex<double>(0, -1) * cz_d) * eta_function(z);
}

// |f0|^2(gamma z) Im(gamma z) summed over the 24 cosets of Gamma_0(23)
static double petersson_integrand(std::complex<double> z) {
    auto f0 = [](std::complex<double> w) { return eta_function(w) * eta_function(23.0 * w); };
    double total = 0;
    {
        std::complex<double> v = f0(z);
        total += std::norm(v) * z.imag();
    }
    for (int j = 0; j < 23; ++j) {
        // gamma = [0 -1; 1 j]: z -> -1/(z+j)
        std::complex<double> w = -1.0 / (z + double(j));
        std::complex<double> v = f0(w);
        total += std::norm(v) * w.imag();
    }
    return total;
}

static const double GL_X8[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
static const double GL_W8[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                0.2223810344533745, 0.1012285362903763};

static double petersson_quadrature(int nx_panels, int ny_subdiv, long long* cells) {
    // integrate over |x| <= 1/2, sqrt(1-x^2) <= y <= Ymax with measure dx dy / y^2
    const double Ymax = 45.0;
    std::vector<double> panel_results(size_t(nx_panels), 0.0);
    parallel_for(size_t(nx_panels), [&](size_t px) {
        double x0 = -0.5 + double(px) / nx_panels;
        double x1 = -0.5 + double(px + 1) / nx_panels;
        double acc = 0;
        for (int ix = 0; ix < 8; ++ix) {
            double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * GL_X8[ix];
            double wx = 0.5 * (x1 - x0) * GL_W8[ix];
            double ylow = std::sqrt(std::max(0.0, 1.0 - x * x));
            // geometric y panels, subdivided ny_subdiv times each
            std::vector<double> ybreaks = {ylow, 1.3, 2.0, 3.5, 7.0, 15.0, Ymax};
            double yacc = 0;
            for (size_t pb = 0; pb + 1 < ybreaks.size(); ++pb) {
                for (int sub = 0; sub < ny_subdiv; ++sub) {
                    double y0 = ybreaks[pb] + (ybreaks[pb + 1] - ybreaks[pb]) * double(sub) / ny_subdiv;
                    double y1 = ybreaks[pb] + (ybreaks[pb + 1] - ybreaks[pb]) * double(sub + 1) / ny_subdiv;
                    for (int iy = 0; iy < 8; ++iy) {
                        double y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * GL_X8[iy];
                        double wy = 0.5 * (y1 - y0) * GL_W8[iy];
                        yacc += wy * petersson_integrand({x, y}) / (y * y);
                    }
                }
            }
            acc += wx * yacc;
        }
        panel_results[px] = acc;
    });
    double total = 0;
    for (double v : panel_results) total += v; // fixed order
    if (cells) *cells = (long long)nx_panels * 8 * 6 * ny_subdiv * 8;
    return total;
}

PeterssonResult petersson_eta23(double rel_tol, int refine) {
    PeterssonResult out;
    out.coset_count = 24;
    long long cells1 = 0, cells2 = 0;
    double coarse = petersson_quadrature(4 * refine, 1 * refine, &cells1);
    double fine = petersson_quadrature(8 * refine, 2 * refine, &cells2);
    out.stark_classical = fine;
    out.adelic_normalized = fine / 48.0;
    out.cells = cells2;
    out.error_estimate = std::abs(fine - coarse);
    out.converged = out.error_estimate <= rel_tol * std::abs(fine);
    return out;
}

// ----- the explicit-example identity chain -----

static std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

VerificationReport run_stark_chain(const StarkOptions& opt) {
    VerificationReport rep;
    rep.name = "stark_chain";

    // fields of the example
    auto K = std::make_shared<const NumberField>(nf_create({-1, -1, 0, 1}));         // x^3 - x - 1
    auto F = std::make_shared<const NumberField>(nf_create({-5, 0, 1}));             // x^2 - 5
    auto FK = std::make_shared<const NumberField>(nf_create({-79, -28, 76, -2, -17, 0, 1}));
    auto Lf = std::make_shared<const NumberField>(nf_create({13249, 140, 1588, -2, 67, 0, 1}));
    rep.add(make_exact_check("K signature", std::to_string(K->r1) + "," + std::to_string(K->r2), "1,1",
                             K->r1 == 1 && K->r2 == 1, {}));
    rep.add(make_exact_check("FK signature", std::to_string(FK->r1) + "," + std::to_string(FK->r2), "2,2",
                             FK->r1 == 2 && FK->r2 == 2, {}));
    rep.add(make_exact_check("L signature", std::to_string(Lf->r1) + "," + std::to_string(Lf->r2), "0,3",
                             Lf->r1 == 0 && Lf->r2 == 3, {}));

    double log_eps = std::log(K->embeddings[0].real()); // real root of x^3 - x - 1
    double log_phi = std::log((1.0 + std::sqrt(5.0)) / 2.0);

    // dihedral form and the L-value chain
    CoefficientTable f0 = dihedral_coeffs(-23, opt.coeff_bound);
    LValueResult ad0 = ad0_L1(f0, -23);
    {
        double target = 6.0 * M_PI * M_PI / 23.0 * log_eps;
        CheckEntry e = make_check("L(Ad0 rho0, 1) = (6 pi^2 / 23) log eps", ad0.value, target, 1e-4,
                                  {"L(f0,1) smoothed completed series", "L(1, chi_{-23}) class number formula",
                                   "log eps from the real root of x^3 - x - 1"});
        rep.add(e);
    }
    {
        auto rec = recognize_rational(ad0.value * 23.0 / (M_PI * M_PI * log_eps), 100, 1e-3);
        rep.add(make_exact_check("recognize 23 L(Ad0,1) / (pi^2 log eps)",
                                 rec.value ? rec.value->to_string() : "none", "6",
                                 rec.value && *rec.value == Rat(6), {}));
    }

    // Petersson quadrature
    PeterssonResult pet = petersson_eta23(opt.quad_rel_tol);
    if (!pet.converged) {
        CheckEntry e;
        e.identity = "petersson quadrature convergence";
        e.lhs = "error estimate " + fmt(pet.error_estimate);
        e.rhs = "requested <= " + fmt(opt.quad_rel_tol * pet.stark_classical);
        e.pass = false;
        e.exact = true;
        e.provenance = {"non-convergence flag"};
        rep.add(e);
    }
    rep.add(make_check("petersson_vs_3logeps", pet.stark_classical, 3.0 * log_eps, 5e-3,
                       {"adaptive Gauss-Legendre over the fundamental domain, 24 cosets",
                        "eta evaluated through the modular transformation"}));
    rep.add(make_check("adelic normalization = stark/48", pet.adelic_normalized, pet.stark_classical / 48.0,
                       1e-14, {"recorded index factor 2 [PSL2(Z):Gamma0(23)] = 48"}));
    rep.add(make_exact_check("coset count", std::to_string(pet.coset_count), "24", pet.coset_count == 24, {}));
    {
        auto rec = recognize_rational(pet.stark_classical / log_eps, 100, 5e-3);
        rep.add(make_exact_check("recognize <f0,f0>_Stark / log eps", rec.value ? rec.value->to_string() : "none",
                                 "3", rec.value && *rec.value == Rat(3), {}));
    }

    // exact subfield elements of FK: sqrt5 = (th^3 + 14 th - 1)/(3 th^2 + 4)
    RatPoly mFK(FK->minpoly.begin(), FK->minpoly.end());
    FieldElem sqrt5 = [&] {
        RatPoly num = {Rat(-1), Rat(14), Rat(0), Rat(1)};
        RatPoly den = {Rat(4), Rat(0), Rat(3)};
        RatPoly inv = poly_inverse_mod(den, mFK);
        RatPoly prod = poly_rem_r(poly_mul_r(num, inv), mFK);
        prod.resize(6);
        return fe_make(FK, prod);
    }();
    if (!fe_equal(fe_mul(sqrt5, sqrt5), fe_rational(FK, Rat(5))))
        throw std::logic_error("stark chain: sqrt5 construction failed");
    FieldElem theta = fe_make(FK, {Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)});
    FieldElem epsK = fe_sub(theta, sqrt5); // alpha, the root of x^3 - x - 1
    FieldElem epsF = fe_make(FK, [&] {
        FieldElem t = fe_add(fe_rational(FK, Rat(1)), sqrt5);
        std::vector<Rat> c = t.coords;
        for (auto& x : c) x /= Rat(2);
        return c;
    }());
    if (exact_norm(epsK) != Rat(1)) throw std::logic_error("stark chain: Nm(epsK) != 1");
    if (exact_norm(epsF) != Rat(-1)) throw std::logic_error("stark chain: Nm(epsF) != -1 in FK");

    // delta: unit with relative norm -1 over K, independent of epsK, epsF
    std::optional<FieldElem> delta;
    FieldElem tau_theta = fe_sub(theta, fe_add(sqrt5, sqrt5)); // theta - 2 sqrt5: sends sqrt5 -> -sqrt5
    auto rel_norm_K = [&](const FieldElem& u) { return fe_mul(u, fe_compose(u, tau_theta)); };
    if (opt.delta_cache_path) {
        std::ifstream in(*opt.delta_cache_path);
        if (in) {
            std::vector<Rat> c(6);
            bool ok = true;
            for (auto& x : c) {
                long long num, den;
                if (!(in >> num >> den)) {
                    ok = false;
                    break;
                }
                x = Rat(num, den);
            }
            if (ok) delta = fe_make(FK, c);
        }
    }
    if (!delta && !opt.skip_delta_search) {
        // disc(K) = -23 and disc(F) = 5 are coprime, so O_FK = O_K O_F with
        // basis {1, alpha, alpha^2} x {1, epsF}; the power basis of theta has
        // index far beyond denominator 2, so the bounded search runs here
        std::vector<FieldElem> basis;
        for (int i = 0; i < 3; ++i) {
            FieldElem ak = fe_pow(epsK, i);
            basis.push_back(ak);
        }
        for (int i = 0; i < 3; ++i) basis.push_back(fe_mul(fe_pow(epsK, i), epsF));
        auto units = unit_search_in_basis(basis, opt.unit_search_bound);
        for (auto& u : units) {
            if (!fe_equal(rel_norm_K(u), fe_rational(FK, Rat(-1)))) continue;
            UnitSystem test{FK, {epsK, epsF, u}};
            try {
                regulator(test); // throws when dependent
            } catch (const std::runtime_error&) {
                continue;
            }
            delta = u;
            break;
        }
    }
    if (!delta) {
        rep.partial = true;
        rep.note("delta unavailable (search skipped and no cache); regulator and motivic checks omitted");
        return rep;
    }
    rep.note("delta coords: " + delta->to_string());
    rep.add(make_exact_check("N_{FK/K}(delta) = -1 (exact, via the sqrt5 -> -sqrt5 automorphism)",
                             rel_norm_K(*delta).to_string(), "-1",
                             fe_equal(rel_norm_K(*delta), fe_rational(FK, Rat(-1))), {}));
    // relative_norm through the float + reconstruction path as well
    {
        FieldElem rn = relative_norm(*delta, K, {{0, 1}, {2, 3}});
        rep.add(make_exact_check("relative_norm reconstruction agrees", rn.to_string(), "[-1,0,0]",
                                 fe_equal(rn, fe_rational(K, Rat(-1))), {}));
    }

    // regulators
    UnitSystem sysK{K, {fe_make(K, {Rat(0), Rat(1), Rat(0)})}};
    UnitSystem sysF{F, {fe_make(F, {Rat(1, 2), Rat(1, 2)})}}; // (1 + sqrt5)/2
    UnitSystem sysFK{FK, {epsK, epsF, *delta}};
    double regK = regulator(sysK), regF = regulator(sysF), regFK = regulator(sysFK);
    rep.add(make_check("Reg_K = log eps", regK, log_eps, 1e-10, {}));
    rep.add(make_check("Reg_F = log golden", regF, log_phi, 1e-10, {}));
    double ratio_log = std::abs(std::log(std::abs(delta->embed(0))) - std::log(std::abs(delta->embed(2))));
    rep.add(make_check("Reg_FK = 4 Reg_K Reg_F |log|sigma1(delta)/sigma3(delta)||", regFK,
                       4.0 * regK * regF * ratio_log, 1e-8,
                       {"regulator determinant with embedding weights (1,1,2)",
                        "row reduction using Nm_{FK/K} delta = -1"}));
    // drop-an-embedding invariance
    {
        double alt = regulator(sysFK, 2);
        rep.add(make_check("regulator invariance under dropped embedding", regFK, alt, 1e-10, {}));
    }

    // L = Hilbert class field: units {eps, delta_L}, Reg_L = 3 (log eps)^2
    {
        RatPoly mL(Lf->minpoly.begin(), Lf->minpoly.end());
        FieldElem sqrtm23 = [&] {
            RatPoly num = {Rat(-1), Rat(-70), Rat(0), Rat(1)};
            RatPoly den = {Rat(-24), Rat(0), Rat(3)};
            RatPoly inv = poly_inverse_mod(den, mL);
            RatPoly prod = poly_rem_r(poly_mul_r(num, inv), mL);
            prod.resize(6);
            return fe_make(Lf, prod);
        }();
        if (!fe_equal(fe_mul(sqrtm23, sqrtm23), fe_rational(Lf, Rat(-23))))
            throw std::logic_error("stark chain: sqrt(-23) construction failed");
        FieldElem thetaL = fe_make(Lf, {Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)});
        FieldElem epsL = fe_sub(thetaL, sqrtm23); // alpha_1, a root of x^3 - x - 1
        if (exact_norm(epsL) != Rat(1)) throw std::logic_error("stark chain: Nm(eps in L) != 1");
        // L is Galois over Q, so the cubic splits in L; a second root is
        // alpha_2 = (-alpha_1 + sqrt(-23)/(3 alpha_1^2 - 1))/2,
        // using (4 - 3a^2)(3a^2 - 1)^2 = -23 for a root a.
        FieldElem denom = fe_sub(fe_mul(fe_rational(Lf, Rat(3)), fe_mul(epsL, epsL)), fe_rational(Lf, Rat(1)));
        FieldElem alpha2 = fe_mul(fe_sub(fe_div(sqrtm23, denom), epsL), fe_rational(Lf, Rat(1, 2)));
        {
            FieldElem check = fe_sub(fe_sub(fe_pow(alpha2, 3), alpha2), fe_rational(Lf, Rat(1)));
            if (!fe_equal(check, fe_rational(Lf, Rat(0))))
                throw std::logic_error("stark chain: alpha_2 is not a root of x^3 - x - 1");
        }
        // delta_L = 1/alpha_2 has N_{L/K} delta_L = eps exactly
        FieldElem deltaL = fe_div(fe_rational(Lf, Rat(1)), alpha2);
        FieldElem tauL = fe_sub(thetaL, fe_add(sqrtm23, sqrtm23));
        FieldElem rnL = fe_mul(deltaL, fe_compose(deltaL, tauL));
        rep.add(make_exact_check("N_{L/K}(delta_L) = eps (exact, via the sqrt(-23) -> -sqrt(-23) automorphism)",
                                 rnL.to_string(), epsL.to_string(), fe_equal(rnL, epsL), {}));
        UnitSystem sysL{Lf, {epsL, deltaL}};
        double regL = regulator(sysL);
        rep.add(make_check("Reg_L = 3 (log eps)^2", regL, 3.0 * log_eps * log_eps, 1e-8,
                           {"units eps and delta_L = 1/alpha_2 with N_{L/K} delta_L = eps",
                            "the conjugate root alpha_2 constructed exactly inside L"}));
    }

    // the twisted adjoint L-value against the regulator route
    LValueResult twist = ad0_twist_L1(f0, -23, 5);
    {
        double target = 4.0 * M_PI * M_PI / (5.0 * std::sqrt(5.0) * 23.0) * regFK / (regK * regF);
        rep.add(make_check("L(Ad0 rho0 x chi5, 1) = (2 pi)^2/(5 sqrt5 23) Reg_FK/(Reg_K Reg_F)", twist.value,
                           target, 1e-4,
                           {"L(f0 x chi5, 1) smoothed completed series",
                            "L(1, chi_{-115}) class number formula with h(-115) from reduced forms",
                            "regulators from the found unit system"}));
    }

    // motivic-chain rationality: (sqrt5 / pi^2) L(Ad0 x chi5, 1) / log|s1(delta)/s3(delta)|
    {
        double x = std::sqrt(5.0) / (M_PI * M_PI) * twist.value / ratio_log;
        auto rec = recognize_rational(x, 100, 1e-3);
        CheckEntry e;
        e.identity = "motivic ratio recognized as a rational with denominator <= 100";
        e.lhs = fmt(x);
        e.rhs = rec.value ? rec.value->to_string() : "none";
        e.exact = true;
        e.pass = rec.value.has_value();
        e.provenance = {"combined tolerance 1e-3; the recognized rational is recorded, not asserted"};
        rep.add(e);
        if (rec.value) rep.note("recognized motivic rational: " + rec.value->to_string());
        // stability: recognition unchanged when the tolerance is halved
        auto rec2 = recognize_rational(x, 100, 5e-4);
        rep.add(make_exact_check("recognition stable under halved tolerance",
                                 rec2.value ? rec2.value->to_string() : "none",
                                 rec.value ? rec.value->to_string() : "none",
                                 rec.value.has_value() == rec2.value.has_value() &&
                                     (!rec.value || *rec.value == *rec2.value),
                                 {}));
    }

    // Harris-periods heuristic: log u_{f0} / log u^F_{f0} has no small rational.
    // Heuristic only: an accidentally close convergent is reported but does not
    // fail the chain.
    {
        VerificationReport baker = baker_heuristic(log_eps, ratio_log, 10000);
        for (auto& e : baker.entries) {
            CheckEntry w = e;
            w.warning_only = true;
            rep.add(w);
        }
    }
    return rep;
}


VerificationReport verify_motivic_chain(long long D) {
    if (D != 5)
        throw std::invalid_argument("verify_motivic_chain: the explicit example requires D = 5");
    StarkOptions opt;
    return run_stark_chain(opt);
}

} // namespace dnlab

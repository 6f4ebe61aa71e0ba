#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dnlab {

using i128 = __int128;

inline i128 i128_abs(i128 a) { return a < 0 ? -a : a; }

inline i128 i128_gcd(i128 a, i128 b) {
    a = i128_abs(a);
    b = i128_abs(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    if (neg) v = -v;
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

// Exact rational on 128-bit integers. Magnitudes in this project stay far
// below the overflow threshold (norms, resultants of degree <= 6 data);
// normalize() keeps operands reduced.
struct Rat {
    i128 num = 0;
    i128 den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(i128 n, i128 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 g = i128_gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }
    int sign() const { return num == 0 ? 0 : (num < 0 ? -1 : 1); }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::domain_error("Rat: division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
    Rat operator-() const {
        Rat r = *this;
        r.num = -r.num;
        return r;
    }
    Rat& operator+=(const Rat& b) { return *this = *this + b; }
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    double to_double() const { return double(num) / double(den); }

    std::string to_string() const {
        if (den == 1) return i128_to_string(num);
        return i128_to_string(num) + "/" + i128_to_string(den);
    }
};

} // namespace dnlab

#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pseries {

// Exact rational on 64-bit parts. Exponents and indices in this library stay
// far below the overflow range; arithmetic asserts on reduction failures.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::domain_error("Rat: division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
    Rat operator-() const { return Rat(-num, den); }
    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        long long l = a.num * b.den, r = b.num * a.den;
        return l <=> r;
    }

    bool is_integer() const { return den == 1; }
    long long floor() const {
        long long q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    Rat frac() const { return *this - Rat(floor()); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

inline long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) { r *= b; }
    return r;
}

// True iff r = n / p^k for some k >= 0; on success sets n (= r * p^k, p-free
// denominator removed) and the minimal k.
inline bool p_power_denominator(const Rat& r, int p, long long& n, int& k) {
    long long d = r.den;
    k = 0;
    while (d % p == 0) { d /= p; ++k; }
    if (d != 1) return false;
    n = r.num;
    return true;
}

} // namespace pseries

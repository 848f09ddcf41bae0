#include "pseries/lambda_field.hpp"

#include <sstream>
#include <stdexcept>

namespace pseries {

void LambdaElement::add_term(const Rat& e, long long c) {
    long long r = c % p_;
    if (r < 0) r += p_;
    if (r == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = (int)r;
    } else {
        int s = (int)((it->second + r) % p_);
        if (s == 0) terms_.erase(it);
        else it->second = s;
    }
}

LambdaElement LambdaElement::monomial(int p, const Rat& exponent, int coeff) {
    LambdaElement x(p);
    x.add_term(exponent, coeff);
    return x;
}

LambdaElement operator+(const LambdaElement& a, const LambdaElement& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("LambdaElement: characteristic mismatch");
    LambdaElement r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

LambdaElement operator-(const LambdaElement& a, const LambdaElement& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("LambdaElement: characteristic mismatch");
    LambdaElement r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

LambdaElement LambdaElement::operator-() const {
    LambdaElement r(p_);
    for (auto& [e, c] : terms_) r.add_term(e, -c);
    return r;
}

LambdaElement operator*(const LambdaElement& a, const LambdaElement& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("LambdaElement: characteristic mismatch");
    LambdaElement r(a.p_);
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_)
            r.add_term(ea + eb, (long long)ca * cb);
    return r;
}

LambdaElement LambdaElement::frobenius(long long k) const {
    LambdaElement r(p_);
    // exponent scale by p^k (k may be negative; Rat handles it)
    Rat scale = k >= 0 ? Rat(ipow(p_, (int)k)) : Rat(1, ipow(p_, (int)(-k)));
    for (auto& [e, c] : terms_) r.add_term(e * scale, c);
    return r;
}

LambdaElement LambdaElement::divide_exact(const LambdaElement& d) const {
    if (d.is_zero()) throw std::domain_error("LambdaElement: division by zero");
    if (is_zero()) return LambdaElement(p_);
    if (d.terms_.size() == 1) {
        auto [ed, cd] = *d.terms_.begin();
        int cinv = 1;
        for (int i = 1; i < p_; ++i)
            if ((cd * i) % p_ == 1) { cinv = i; break; }
        LambdaElement r(p_);
        for (auto& [e, c] : terms_) r.add_term(e - ed, (long long)c * cinv);
        return r;
    }
    // Scale all exponents to integers, divide as Laurent polynomials.
    long long den = 1;
    for (auto& [e, c] : terms_) den = std::lcm(den, e.den);
    for (auto& [e, c] : d.terms_) den = std::lcm(den, e.den);
    auto scaled = [&](const LambdaElement& x) {
        std::map<long long, int> m;
        for (auto& [e, c] : x.terms_) m[e.num * (den / e.den)] = c;
        return m;
    };
    std::map<long long, int> num = scaled(*this), div = scaled(d);
    LambdaElement quot(p_);
    auto lead = [](const std::map<long long, int>& m) { return *m.rbegin(); };
    auto [de, dc] = lead(div);
    int dcinv = 1;
    for (int i = 1; i < p_; ++i)
        if ((dc * i) % p_ == 1) { dcinv = i; break; }
    while (!num.empty()) {
        auto [ne, nc] = lead(num);
        if (ne < de) throw std::domain_error("LambdaElement: inexact division");
        long long qe = ne - de;
        int qc = (int)(((long long)nc * dcinv) % p_);
        quot.add_term(Rat(qe, den), qc);
        for (auto& [e, c] : div) {
            long long te = e + qe;
            long long v = ((num.count(te) ? num[te] : 0) - (long long)qc * c) % p_;
            if (v < 0) v += p_;
            if (v == 0) num.erase(te);
            else num[te] = (int)v;
        }
    }
    return quot;
}

std::string LambdaElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (e.num == 0) { os << c; continue; }
        if (c != 1) os << c << "*";
        os << "L^(" << e.str() << ")";
    }
    return os.str();
}

std::string LambdaElement::json() const {
    std::ostringstream os;
    os << "{\"terms\":[";
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (!first) os << ",";
        first = false;
        int k = 0;
        long long n = e.num, d = e.den;
        while (d > 1) { d /= p_; ++k; }
        os << "{\"coeff\":" << c << ",\"num\":" << n << ",\"pow\":" << k << "}";
    }
    os << "]}";
    return os.str();
}

LambdaRational::LambdaRational(LambdaElement n, LambdaElement d)
    : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("LambdaRational: zero denominator");
    normalize();
}

void LambdaRational::normalize() {
    if (num_.is_zero()) {
        den_ = LambdaElement::constant(den_.p(), 1);
        return;
    }
    // strip a common monomial factor lambda^min
    Rat en = num_.terms().begin()->first;
    Rat ed = den_.terms().begin()->first;
    Rat shift = en < ed ? en : ed;
    if (shift != Rat(0)) {
        auto mono = LambdaElement::monomial(num_.p(), -shift, 1);
        num_ = num_ * mono;
        den_ = den_ * mono;
    }
    // scale so the lowest denominator coefficient is 1
    int c = den_.terms().begin()->second;
    if (c != 1) {
        int p = den_.p();
        int cinv = 1;
        for (int i = 1; i < p; ++i)
            if ((c * i) % p == 1) { cinv = i; break; }
        auto s = LambdaElement::constant(p, cinv);
        num_ = num_ * s;
        den_ = den_ * s;
    }
}

LambdaRational operator+(const LambdaRational& a, const LambdaRational& b) {
    return LambdaRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
LambdaRational operator-(const LambdaRational& a, const LambdaRational& b) {
    return LambdaRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
LambdaRational operator*(const LambdaRational& a, const LambdaRational& b) {
    return LambdaRational(a.num_ * b.num_, a.den_ * b.den_);
}
LambdaRational operator/(const LambdaRational& a, const LambdaRational& b) {
    if (b.is_zero()) throw std::domain_error("LambdaRational: division by zero");
    return LambdaRational(a.num_ * b.den_, a.den_ * b.num_);
}
LambdaRational LambdaRational::operator-() const { return LambdaRational(-num_, den_); }

bool operator==(const LambdaRational& a, const LambdaRational& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
}

LambdaRational LambdaRational::inverse() const {
    if (is_zero()) throw std::domain_error("LambdaRational: inverse of zero");
    return LambdaRational(den_, num_);
}

std::string LambdaRational::str() const {
    std::ostringstream os;
    os << "(" << num_.str() << ")";
    if (!(den_ == LambdaElement::constant(den_.p(), 1))) os << "/(" << den_.str() << ")";
    return os.str();
}

} // namespace pseries

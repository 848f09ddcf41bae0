#include "pseries/polyrat.hpp"

#include <sstream>
#include <stdexcept>

namespace pseries {

void FqPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FqPoly FqPoly::constant(const FqElement& x) {
    FqPoly p(x.field());
    if (!x.is_zero()) p.c_ = {x};
    return p;
}

FqPoly FqPoly::t(const FqFieldPtr& f) { return monomial(f, 1, f->one()); }

FqPoly FqPoly::monomial(const FqFieldPtr& f, size_t deg, const FqElement& c) {
    FqPoly p(f);
    if (!c.is_zero()) {
        p.c_.assign(deg + 1, f->zero());
        p.c_[deg] = c;
    }
    return p;
}

FqElement FqPoly::coeff(size_t i) const {
    if (i < c_.size()) return c_[i];
    return field_->zero();
}

FqElement FqPoly::lead() const {
    if (c_.empty()) return field_->zero();
    return c_.back();
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    FqPoly r(a.field_ ? a.field_ : b.field_);
    size_t n = std::max(a.c_.size(), b.c_.size());
    r.c_.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        FqElement x = i < a.c_.size() ? a.c_[i] : r.field_->zero();
        FqElement y = i < b.c_.size() ? b.c_[i] : r.field_->zero();
        r.c_.push_back(x + y);
    }
    r.trim();
    return r;
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) { return a + (-b); }

FqPoly FqPoly::operator-() const {
    FqPoly r(field_);
    r.c_.reserve(c_.size());
    for (auto& x : c_) r.c_.push_back(-x);
    return r;
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    FqPoly r(a.field_ ? a.field_ : b.field_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, r.field_->zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

FqPoly FqPoly::scale(const FqElement& s) const {
    FqPoly r(field_);
    if (s.is_zero()) return r;
    r.c_.reserve(c_.size());
    for (auto& x : c_) r.c_.push_back(x * s);
    r.trim();
    return r;
}

void FqPoly::divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) {
    if (b.is_zero()) throw std::domain_error("FqPoly: division by zero");
    q = FqPoly(a.field_);
    r = a;
    if (a.is_zero()) return;
    FqElement linv = b.lead().inverse();
    long long db = b.degree();
    if (r.degree() >= db) q.c_.assign(r.degree() - db + 1, a.field_->zero());
    while (!r.is_zero() && r.degree() >= db) {
        long long k = r.degree() - db;
        FqElement f = r.lead() * linv;
        q.c_[k] = f;
        for (long long i = 0; i <= db; ++i)
            r.c_[k + i] = r.c_[k + i] - f * b.c_[i];
        r.trim();
    }
    q.trim();
}

FqPoly FqPoly::div_exact(const FqPoly& b) const {
    FqPoly q, r;
    divmod(*this, b, q, r);
    if (!r.is_zero()) throw std::domain_error("FqPoly: inexact division");
    return q;
}

FqPoly FqPoly::gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FqPoly FqPoly::monic() const {
    if (is_zero()) return *this;
    return scale(lead().inverse());
}

FqElement FqPoly::eval(const FqElement& x) const {
    FqElement v = x.field()->zero();
    for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
}

FqPoly FqPoly::coeff_frobenius(long long k) const {
    FqPoly r(field_);
    r.c_.reserve(c_.size());
    for (auto& x : c_) r.c_.push_back(x.frobenius(k));
    return r;
}

FqPoly FqPoly::subst_t_power(int m) const {
    FqPoly r(field_);
    if (is_zero()) return r;
    r.c_.assign((c_.size() - 1) * m + 1, field_->zero());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i * m] = c_[i];
    r.trim();
    return r;
}

FqPoly FqPoly::derivative() const {
    FqPoly r(field_);
    if (c_.size() <= 1) return r;
    r.c_.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(field_->from_int((long long)i) * c_[i]);
    r.trim();
    return r;
}

long long FqPoly::t_valuation() const {
    if (is_zero()) return -1; // callers treat -1 as +infinity for the zero polynomial
    for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return (long long)i;
    return -1;
}

std::string FqPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = c_[i].is_one();
        if (i == 0 || !unit) {
            std::string cs = c_[i].str();
            if (cs.find('+') != std::string::npos) os << "(" << cs << ")";
            else os << cs;
            if (i > 0) os << "*";
        }
        if (i == 1) os << var;
        else if (i > 1) os << var << "^" << i;
    }
    return os.str();
}

RatFq::RatFq(FqPoly num) : num_(std::move(num)) {
    den_ = FqPoly::constant(num_.field()->one());
}

RatFq::RatFq(FqPoly num, FqPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFq: zero denominator");
    normalize();
}

void RatFq::normalize() {
    if (num_.is_zero()) {
        den_ = FqPoly::constant(num_.field()->one());
        return;
    }
    FqPoly g = FqPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.div_exact(g);
        den_ = den_.div_exact(g);
    }
    FqElement l = den_.lead();
    if (!l.is_one()) {
        FqElement inv = l.inverse();
        num_ = num_.scale(inv);
        den_ = den_.scale(inv);
    }
}

RatFq operator+(const RatFq& a, const RatFq& b) { return RatFq(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
RatFq operator-(const RatFq& a, const RatFq& b) { return RatFq(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
RatFq operator*(const RatFq& a, const RatFq& b) { return RatFq(a.num_ * b.num_, a.den_ * b.den_); }
RatFq operator/(const RatFq& a, const RatFq& b) {
    if (b.is_zero()) throw std::domain_error("RatFq: division by zero");
    return RatFq(a.num_ * b.den_, a.den_ * b.num_);
}
RatFq RatFq::operator-() const {
    RatFq r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

bool operator==(const RatFq& a, const RatFq& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

RatFq RatFq::inverse() const {
    if (is_zero()) throw std::domain_error("RatFq: inverse of zero");
    return RatFq(den_, num_);
}

RatFq RatFq::coeff_frobenius(long long k) const {
    RatFq r;
    r.num_ = num_.coeff_frobenius(k);
    r.den_ = den_.coeff_frobenius(k);
    return r;
}

RatFq RatFq::subst_t_power(int m) const {
    return RatFq(num_.subst_t_power(m), den_.subst_t_power(m));
}

std::string RatFq::str() const {
    if (den_ == FqPoly::constant(num_.field()->one())) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace pser {

std::vector<FqElement> mul(const std::vector<FqElement>& a, const std::vector<FqElement>& b,
                           size_t n) {
    if (a.empty() || b.empty()) return {};
    const FqFieldPtr& f = a[0].field();
    std::vector<FqElement> r(std::min(n, a.size() + b.size() - 1), f->zero());
    for (size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j < n; ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

std::vector<FqElement> add(const std::vector<FqElement>& a, const std::vector<FqElement>& b) {
    const FqFieldPtr f = a.empty() ? (b.empty() ? nullptr : b[0].field()) : a[0].field();
    std::vector<FqElement> r;
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        FqElement x = i < a.size() ? a[i] : f->zero();
        FqElement y = i < b.size() ? b[i] : f->zero();
        r.push_back(x + y);
    }
    return r;
}

std::vector<FqElement> sub(const std::vector<FqElement>& a, const std::vector<FqElement>& b) {
    std::vector<FqElement> nb;
    nb.reserve(b.size());
    for (auto& x : b) nb.push_back(-x);
    return add(a, nb);
}

std::vector<FqElement> inverse(const std::vector<FqElement>& a, size_t n, const FqFieldPtr& f) {
    if (a.empty() || a[0].is_zero())
        throw std::domain_error("pser::inverse: constant term is zero");
    std::vector<FqElement> r{a[0].inverse()};
    // Newton: r <- r (2 - a r)
    while (r.size() < n) {
        size_t m = std::min(n, r.size() * 2);
        auto ar = mul(a, r, m);
        std::vector<FqElement> two_minus(m, f->zero());
        for (size_t i = 0; i < m; ++i) two_minus[i] = -(i < ar.size() ? ar[i] : f->zero());
        two_minus[0] = two_minus[0] + f->from_int(2);
        r = mul(r, two_minus, m);
        r.resize(m, f->zero());
    }
    r.resize(n, f->zero());
    return r;
}

std::vector<FqElement> expand(const RatFq& r, size_t n) {
    const FqFieldPtr& f = r.field();
    std::vector<FqElement> num(n, f->zero()), den(n, f->zero());
    for (size_t i = 0; i < n && i < r.num().coeffs().size(); ++i) num[i] = r.num().coeffs()[i];
    for (size_t i = 0; i < n && i < r.den().coeffs().size(); ++i) den[i] = r.den().coeffs()[i];
    long long v = r.den().t_valuation();
    if (v != 0) {
        if (r.is_zero()) return std::vector<FqElement>(n, f->zero());
        throw std::domain_error("pser::expand: denominator vanishes at t = 0");
    }
    return mul(num, inverse(den, n, f), n);
}

std::vector<FqElement> eval_poly_in_y(const std::vector<FqPoly>& py,
                                      const std::vector<FqElement>& y, size_t n,
                                      const FqFieldPtr& f) {
    // sum_i py[i](t) * y(t)^i mod t^n, Horner in y
    std::vector<FqElement> acc(n, f->zero());
    for (size_t i = py.size(); i-- > 0;) {
        acc = mul(acc, y, n);
        std::vector<FqElement> c(n, f->zero());
        for (size_t j = 0; j < n && j < py[i].coeffs().size(); ++j) c[j] = py[i].coeffs()[j];
        acc = add(acc, c);
        acc.resize(n, f->zero());
    }
    return acc;
}

} // namespace pser

} // namespace pseries

#include "pseries/fq.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pseries {

namespace {

int mod_p(long long x, int p) {
    long long r = x % p;
    if (r < 0) r += p;
    return (int)r;
}

// multiply polynomials over F_p
std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod_p(r[i + j] + (long long)a[i] * b[j], p);
    return r;
}

std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    int dm = (int)m.size() - 1;
    while ((int)a.size() - 1 >= dm) {
        int da = (int)a.size() - 1;
        int lead = a[da];
        if (lead != 0) {
            for (int i = 0; i <= dm; ++i)
                a[da - dm + i] = mod_p(a[da - dm + i] - (long long)lead * m[i], p);
        }
        a.pop_back();
    }
    return a;
}

std::vector<int> poly_powmod(std::vector<int> base, long long exp, const std::vector<int>& m, int p) {
    std::vector<int> r{1};
    base = poly_mod(std::move(base), m, p);
    while (exp > 0) {
        if (exp & 1) r = poly_mod(poly_mul(r, base, p), m, p);
        base = poly_mod(poly_mul(base, base, p), m, p);
        exp >>= 1;
    }
    return r;
}

std::vector<int> poly_gcd(std::vector<int> a, std::vector<int> b, int p) {
    auto trim = [](std::vector<int>& v) { while (!v.empty() && v.back() == 0) v.pop_back(); };
    trim(a); trim(b);
    while (!b.empty()) {
        // make b monic for the mod step
        int inv = 1;
        {
            int lead = b.back();
            for (int i = 1; i < p; ++i) if (mod_p(lead * i, p) == 1) { inv = i; break; }
        }
        std::vector<int> bm = b;
        for (auto& c : bm) c = mod_p((long long)c * inv, p);
        a = poly_mod(std::move(a), bm, p);
        trim(a);
        std::swap(a, b);
    }
    return a;
}

} // namespace

bool fp_poly_irreducible(int p, const std::vector<int>& poly) {
    int d = (int)poly.size() - 1;
    if (d < 1 || poly[d] != 1) return false;
    if (d == 1) return true;
    // x^(p^k) mod poly; poly irreducible iff gcd(x^(p^k)-x, poly)=1 for k < d
    // prime divisors and x^(p^d) = x mod poly.
    std::vector<int> x{0, 1};
    long long pk = 1;
    for (int k = 1; k <= d; ++k) {
        pk *= p;
        std::vector<int> xp = poly_powmod(x, pk, poly, p);
        // xp - x
        std::vector<int> diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = mod_p(diff[1] - 1, p);
        if (k == d) {
            while (!diff.empty() && diff.back() == 0) diff.pop_back();
            if (!diff.empty()) return false;
        } else if (d % k == 0) {
            auto g = poly_gcd(diff, poly, p);
            if ((int)g.size() - 1 >= 1) return false;
        }
    }
    return true;
}

FqField::FqField(int p, int e, std::vector<int> mod) : p_(p), e_(e), mod_(std::move(mod)) {
    q_ = 1;
    for (int i = 0; i < e_; ++i) q_ *= p_;
}

FqFieldPtr FqField::make(int p, int e, std::vector<int> modulus) {
    if (p < 2) throw std::invalid_argument("FqField: p must be prime >= 2");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("FqField: p not prime");
    if (e < 1) throw std::invalid_argument("FqField: e >= 1 required");
    if ((int)modulus.size() != e + 1 || modulus[e] != 1)
        throw std::invalid_argument("FqField: modulus must be monic of degree e");
    for (auto& c : modulus) c = mod_p(c, p);
    if (!fp_poly_irreducible(p, modulus))
        throw std::invalid_argument("FqField: modulus not irreducible");
    return FqFieldPtr(new FqField(p, e, std::move(modulus)));
}

FqFieldPtr FqField::make(int p, int e) {
    // Conway-style fixed table for p <= 7, e <= 4 (coefficients c0..ce).
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 1}, {0, 1}},          {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
        {{3, 1}, {0, 1}},          {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}},
        {{5, 1}, {0, 1}},          {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},    {{5, 4}, {2, 4, 4, 0, 1}},
        {{7, 1}, {0, 1}},          {{7, 2}, {3, 6, 1}},
        {{7, 3}, {4, 0, 6, 1}},    {{7, 4}, {3, 4, 6, 0, 1}},
    };
    auto it = table.find({p, e});
    if (it == table.end()) throw std::invalid_argument("FqField: no built-in modulus for this (p, e)");
    return make(p, e, it->second);
}

std::vector<int> FqField::reduce(std::vector<int> poly) const {
    for (auto& c : poly) c = mod_p(c, p_);
    poly = poly_mod(std::move(poly), mod_, p_);
    poly.resize(e_, 0);
    return poly;
}

FqElement FqField::zero() const { return from_coeffs(std::vector<int>(e_, 0)); }
FqElement FqField::one() const { return from_int(1); }

FqElement FqField::from_int(long long n) const {
    std::vector<int> c(e_, 0);
    c[0] = mod_p(n, p_);
    return FqElement(shared_from_this(), std::move(c));
}

FqElement FqField::gen() const {
    if (e_ == 1) return from_int(1);
    std::vector<int> c(e_, 0);
    c[1] = 1;
    return FqElement(shared_from_this(), std::move(c));
}

FqElement FqField::from_coeffs(std::vector<int> c) const {
    c.resize(std::max(c.size(), (size_t)e_), 0);
    return FqElement(shared_from_this(), reduce(std::move(c)));
}

FqElement FqField::from_index(long long idx) const {
    std::vector<int> c(e_, 0);
    for (int i = 0; i < e_; ++i) { c[i] = (int)(idx % p_); idx /= p_; }
    return FqElement(shared_from_this(), std::move(c));
}

std::vector<FqElement> FqField::elements() const {
    std::vector<FqElement> out;
    out.reserve(q_);
    for (long long i = 0; i < q_; ++i) out.push_back(from_index(i));
    return out;
}

bool FqField::same(const FqField& o) const {
    return p_ == o.p_ && e_ == o.e_ && mod_ == o.mod_;
}

std::string FqField::json() const {
    std::ostringstream os;
    os << "{\"e\":" << e_ << ",\"modulus\":[";
    for (int i = 0; i <= e_; ++i) os << (i ? "," : "") << mod_[i];
    os << "],\"p\":" << p_ << "}";
    return os.str();
}

FqElement::FqElement(FqFieldPtr field, std::vector<int> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {}

static void check_same(const FqElement& a, const FqElement& b) {
    if (!a.field() || !b.field() || !a.field()->same(*b.field()))
        throw std::invalid_argument("FqElement: field descriptor mismatch");
}

bool FqElement::is_zero() const {
    for (int x : c_) if (x) return false;
    return true;
}

bool FqElement::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i) if (c_[i]) return false;
    return true;
}

FqElement operator+(const FqElement& a, const FqElement& b) {
    check_same(a, b);
    std::vector<int> c(a.c_.size());
    int p = a.field()->p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = mod_p(a.c_[i] + b.c_[i], p);
    return FqElement(a.field_, std::move(c));
}

FqElement operator-(const FqElement& a, const FqElement& b) {
    check_same(a, b);
    std::vector<int> c(a.c_.size());
    int p = a.field()->p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = mod_p(a.c_[i] - b.c_[i], p);
    return FqElement(a.field_, std::move(c));
}

FqElement FqElement::operator-() const {
    std::vector<int> c(c_.size());
    int p = field_->p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = mod_p(-c_[i], p);
    return FqElement(field_, std::move(c));
}

FqElement operator*(const FqElement& a, const FqElement& b) {
    check_same(a, b);
    auto prod = poly_mul(a.c_, b.c_, a.field()->p());
    return FqElement(a.field_, a.field_->reduce(std::move(prod)));
}

bool operator==(const FqElement& a, const FqElement& b) {
    check_same(a, b);
    return a.c_ == b.c_;
}

FqElement FqElement::pow(long long n) const {
    if (n < 0) return inverse().pow(-n);
    FqElement r = field_->one(), b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

FqElement FqElement::inverse() const {
    if (is_zero()) throw std::domain_error("FqElement: inverse of zero");
    // x^(q-2)
    return pow(field_->q() - 2);
}

FqElement FqElement::frobenius(long long k) const {
    int e = field_->e();
    long long r = k % e;
    if (r < 0) r += e;
    FqElement out = *this;
    for (long long i = 0; i < r; ++i) out = out.pow(field_->p());
    return out;
}

long long FqElement::index() const {
    long long idx = 0;
    for (int i = field_->e() - 1; i >= 0; --i) idx = idx * field_->p() + c_[i];
    return idx;
}

std::string FqElement::str() const {
    if (field_->e() == 1) return std::to_string(c_[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < field_->e(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i >= 1) {
            os << "g";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

} // namespace pseries

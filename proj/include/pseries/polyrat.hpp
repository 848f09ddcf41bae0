#pragma once

#include <string>
#include <vector>

#include "pseries/fq.hpp"

namespace pseries {

// Dense polynomial over F_q in one variable t. Coefficient 0 is the constant
// term; the zero polynomial has an empty coefficient vector.
class FqPoly {
  public:
    FqPoly() = default;
    explicit FqPoly(FqFieldPtr f) : field_(std::move(f)) {}
    FqPoly(FqFieldPtr f, std::vector<FqElement> c) : field_(std::move(f)), c_(std::move(c)) { trim(); }

    static FqPoly constant(const FqElement& x);
    static FqPoly t(const FqFieldPtr& f); // the variable
    static FqPoly monomial(const FqFieldPtr& f, size_t deg, const FqElement& c);

    const FqFieldPtr& field() const { return field_; }
    const std::vector<FqElement>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long long degree() const { return (long long)c_.size() - 1; } // -1 for zero
    FqElement coeff(size_t i) const;
    FqElement lead() const;

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator-(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator*(const FqPoly& a, const FqPoly& b);
    FqPoly operator-() const;
    friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FqPoly& a, const FqPoly& b) { return !(a == b); }

    FqPoly scale(const FqElement& s) const;
    static void divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r);
    FqPoly div_exact(const FqPoly& b) const; // throws on nonzero remainder
    static FqPoly gcd(FqPoly a, FqPoly b);   // monic gcd
    FqPoly monic() const;
    FqElement eval(const FqElement& x) const;
    // coefficientwise x -> x^(p^k), exponents unchanged
    FqPoly coeff_frobenius(long long k) const;
    // t -> t^m
    FqPoly subst_t_power(int m) const;
    // formal derivative in t
    FqPoly derivative() const;
    long long t_valuation() const; // order of vanishing at t = 0 (LLONG_MAX-ish for 0)

    std::string str(const std::string& var = "t") const;

  private:
    FqFieldPtr field_;
    std::vector<FqElement> c_;
    void trim();
};

// Rational function over F_q(t), denominator monic, gcd-reduced.
class RatFq {
  public:
    RatFq() = default;
    explicit RatFq(FqPoly num);
    RatFq(FqPoly num, FqPoly den);

    const FqPoly& num() const { return num_; }
    const FqPoly& den() const { return den_; }
    const FqFieldPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFq operator+(const RatFq& a, const RatFq& b);
    friend RatFq operator-(const RatFq& a, const RatFq& b);
    friend RatFq operator*(const RatFq& a, const RatFq& b);
    friend RatFq operator/(const RatFq& a, const RatFq& b);
    RatFq operator-() const;
    friend bool operator==(const RatFq& a, const RatFq& b);
    friend bool operator!=(const RatFq& a, const RatFq& b) { return !(a == b); }

    RatFq inverse() const;
    RatFq coeff_frobenius(long long k) const;
    RatFq subst_t_power(int m) const;

    std::string str() const;

  private:
    FqPoly num_, den_;
    void normalize();
};

// Truncated power series helpers over F_q (dense coefficient vectors mod t^N).
namespace pser {
std::vector<FqElement> mul(const std::vector<FqElement>& a, const std::vector<FqElement>& b,
                           size_t n);
std::vector<FqElement> add(const std::vector<FqElement>& a, const std::vector<FqElement>& b);
std::vector<FqElement> sub(const std::vector<FqElement>& a, const std::vector<FqElement>& b);
// multiplicative inverse mod t^n (constant term must be nonzero)
std::vector<FqElement> inverse(const std::vector<FqElement>& a, size_t n, const FqFieldPtr& f);
// expansion of a rational function mod t^n (denominator with unit constant term)
std::vector<FqElement> expand(const RatFq& r, size_t n);
std::vector<FqElement> eval_poly_in_y(const std::vector<FqPoly>& py,
                                      const std::vector<FqElement>& y, size_t n,
                                      const FqFieldPtr& f);
} // namespace pser

} // namespace pseries

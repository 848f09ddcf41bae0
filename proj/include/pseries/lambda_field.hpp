#pragma once

#include <map>
#include <string>

#include "pseries/rat.hpp"

namespace pseries {

// Element of F_p[lambda^(1/p^inf), lambda^(-1/p^inf)]: a finite F_p-combination
// of powers lambda^(n/p^k). Exponent keys are kept reduced (p does not divide
// n unless k = 0); zero coefficients are never stored.
class LambdaElement {
  public:
    LambdaElement() : p_(2) {}
    explicit LambdaElement(int p) : p_(p) {}

    int p() const { return p_; }
    static LambdaElement monomial(int p, const Rat& exponent, int coeff = 1);
    static LambdaElement constant(int p, int c) { return monomial(p, Rat(0), c); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Rat, int>& terms() const { return terms_; }

    friend LambdaElement operator+(const LambdaElement& a, const LambdaElement& b);
    friend LambdaElement operator-(const LambdaElement& a, const LambdaElement& b);
    friend LambdaElement operator*(const LambdaElement& a, const LambdaElement& b);
    LambdaElement operator-() const;
    friend bool operator==(const LambdaElement& a, const LambdaElement& b) {
        return a.p_ == b.p_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LambdaElement& a, const LambdaElement& b) { return !(a == b); }

    // x^(p^k); exponents scale by p^k, coefficients are F_p-fixed.
    LambdaElement frobenius(long long k) const;

    // Exact division (throws if not divisible). Division by a monomial is
    // always exact; the general case runs a Laurent-polynomial division after
    // scaling exponents to a common p-power denominator.
    LambdaElement divide_exact(const LambdaElement& d) const;

    std::string str() const;
    std::string json() const;

  private:
    int p_;
    std::map<Rat, int> terms_; // exponent -> coefficient in [1, p)
    void add_term(const Rat& e, long long c);
};

// Fraction of LambdaElements with nonzero denominator; equality by
// cross-multiplication, light normalization by monomial content only.
class LambdaRational {
  public:
    LambdaRational() = default;
    LambdaRational(LambdaElement n, LambdaElement d);
    static LambdaRational of(const LambdaElement& n) {
        return LambdaRational(n, LambdaElement::constant(n.p(), 1));
    }

    const LambdaElement& num() const { return num_; }
    const LambdaElement& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend LambdaRational operator+(const LambdaRational& a, const LambdaRational& b);
    friend LambdaRational operator-(const LambdaRational& a, const LambdaRational& b);
    friend LambdaRational operator*(const LambdaRational& a, const LambdaRational& b);
    friend LambdaRational operator/(const LambdaRational& a, const LambdaRational& b);
    LambdaRational operator-() const;
    friend bool operator==(const LambdaRational& a, const LambdaRational& b);
    friend bool operator!=(const LambdaRational& a, const LambdaRational& b) { return !(a == b); }

    LambdaRational inverse() const;
    std::string str() const;

  private:
    LambdaElement num_{2}, den_ = LambdaElement::constant(2, 1);
    void normalize();
};

} // namespace pseries

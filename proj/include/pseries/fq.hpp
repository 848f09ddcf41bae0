#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pseries {

// Descriptor of F_q with q = p^e, realized as F_p[z]/(modulus). The modulus is
// monic of degree e over F_p, irreducibility-checked on construction.
// Elements carry a shared_ptr to their field; arithmetic between elements of
// distinct descriptors throws.
class FqField;
using FqFieldPtr = std::shared_ptr<const FqField>;

class FqElement {
  public:
    FqElement() = default;
    FqElement(FqFieldPtr field, std::vector<int> coeffs);

    const FqFieldPtr& field() const { return field_; }
    const std::vector<int>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;

    friend FqElement operator+(const FqElement& a, const FqElement& b);
    friend FqElement operator-(const FqElement& a, const FqElement& b);
    friend FqElement operator*(const FqElement& a, const FqElement& b);
    FqElement operator-() const;
    FqElement inverse() const;
    friend bool operator==(const FqElement& a, const FqElement& b);
    friend bool operator!=(const FqElement& a, const FqElement& b) { return !(a == b); }

    FqElement pow(long long n) const;
    // x^(p^k), k may be negative (phi is an automorphism of order e).
    FqElement frobenius(long long k) const;

    std::string str() const;
    // Index in [0, q): coefficient vector read as a base-p number.
    long long index() const;

  private:
    FqFieldPtr field_;
    std::vector<int> c_; // length e, entries in [0, p)
    friend class FqField;
};

class FqField : public std::enable_shared_from_this<FqField> {
  public:
    // modulus: coefficients c0..ce of a monic irreducible over F_p
    // (c[e] must be 1). For e = 1 the modulus is z - 0 i.e. {0, 1}.
    static FqFieldPtr make(int p, int e, std::vector<int> modulus);
    // Built-in modulus table for p <= 7, e <= 4.
    static FqFieldPtr make(int p, int e);

    int p() const { return p_; }
    int e() const { return e_; }
    long long q() const { return q_; }
    const std::vector<int>& modulus() const { return mod_; }

    FqElement zero() const;
    FqElement one() const;
    // Image of an integer under Z -> F_p -> F_q.
    FqElement from_int(long long n) const;
    // z^k: the class of the generator-of-representation (not necessarily a
    // multiplicative generator).
    FqElement gen() const;
    FqElement from_coeffs(std::vector<int> c) const;
    FqElement from_index(long long idx) const;
    // All q elements, ordered by index.
    std::vector<FqElement> elements() const;

    bool same(const FqField& o) const;

    std::string json() const;

  private:
    FqField(int p, int e, std::vector<int> mod);
    int p_, e_;
    long long q_;
    std::vector<int> mod_; // monic, degree e

    // reduce a polynomial over F_p (arbitrary degree) mod modulus
    std::vector<int> reduce(std::vector<int> poly) const;
    friend class FqElement;
    friend FqElement operator*(const FqElement& a, const FqElement& b);
};

// Irreducibility over F_p of a monic polynomial (brute-force root/factor scan;
// used only for the small moduli we accept).
bool fp_poly_irreducible(int p, const std::vector<int>& poly);

} // namespace pseries

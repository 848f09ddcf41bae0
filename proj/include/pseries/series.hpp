#pragma once

#include <memory>
#include <optional>
#include <string>

#include "pseries/linrep.hpp"
#include "pseries/semilinear.hpp"
#include "pseries/words.hpp"

namespace pseries {

// Biautomatic data for a p-automatic generalized power series: the coefficient
// at ||s1.s2|| is pi o f1(rev(s1)) o f2(s2) o iota applied to 1, evaluated on
// canonical words only.
class AutomaticSeries {
  public:
    FqFieldPtr field;
    size_t dim = 0;
    FqMat iota;          // dim x 1
    FqMat pi;            // 1 x dim
    ComposedFunction f1; // twist +1
    ComposedFunction f2; // twist -1
    bool padding_stable = true;

    static AutomaticSeries zero(const FqFieldPtr& f);

    FqElement coeff_word(const Word& canonical_display) const;
    FqElement coeff_value(const Rat& v) const; // 0 outside Z[1/p]_{>=0}
    // Raw sandwich evaluation on an arbitrary marked word (no canonicalization).
    FqElement raw_eval(const Word& any_marked_word) const;

    std::string json() const;
};

// Exact conversions between the twisted data and its F_p-linear form.
LinRep linrep_of(const AutomaticSeries& x);
AutomaticSeries series_of(const LinRep& r);

// Support shift: represents sum x_i t^i with inner coefficient at a*i + b.
class QuasiAutomaticSeries {
  public:
    long long a = 1;
    long long b = 0;
    AutomaticSeries inner;

    QuasiAutomaticSeries() = default;
    QuasiAutomaticSeries(long long a_, long long b_, AutomaticSeries inner_);

    const FqFieldPtr& field() const { return inner.field; }
    FqElement coeff(const Rat& i) const;

    std::string json() const;
    // First sample points with nonzero coefficients (debug dump).
    std::string dump(size_t max_terms = 16) const;
};

// ---- constructors ----

QuasiAutomaticSeries series_zero(const FqFieldPtr& f);
QuasiAutomaticSeries series_monomial(const FqFieldPtr& f, const Rat& expo, const FqElement& c);
// sum of t^n over all integers n >= 0
QuasiAutomaticSeries series_geometric(const FqFieldPtr& f);
QuasiAutomaticSeries series_from_linrep(const LinRep& r, long long a = 1, long long b = 0);

// ---- closure operations ----

QuasiAutomaticSeries add(const QuasiAutomaticSeries& x, const QuasiAutomaticSeries& y);
QuasiAutomaticSeries scalar_mul(const FqElement& c, const QuasiAutomaticSeries& x);
QuasiAutomaticSeries hadamard(const QuasiAutomaticSeries& x, const QuasiAutomaticSeries& y);
QuasiAutomaticSeries subst_scale(const QuasiAutomaticSeries& x, const FqElement& mu);
// t -> t^(n/p^k), n >= 1
QuasiAutomaticSeries subst_power(const QuasiAutomaticSeries& x, long long n, int k);
QuasiAutomaticSeries frobenius_series(const QuasiAutomaticSeries& x, long long k);
QuasiAutomaticSeries truncate(const QuasiAutomaticSeries& x, const Rat& r);
QuasiAutomaticSeries mul_fq(const QuasiAutomaticSeries& x, const QuasiAutomaticSeries& y,
                            size_t cap = (size_t)1 << 18);

// Inner-series reindex along ||s|| = a||t|| + b (a may contain p factors).
LinRep affine_reindex_rep(const LinRep& f, long long a, long long b);

// ---- automata views ----

// Display-order boolean DFAO accepting canonical s in L_p with nonzero
// coefficient (intersected with the canonical-form language).
Dfao support_dfao(const QuasiAutomaticSeries& x, size_t cap = (size_t)1 << 18);
// Column-tracking DFAO over Sigma_p computing s -> x_{|s|} for integer-support
// series; states are bounded by q^dim of the inner data.
Dfao coefficient_dfao_lp0(const AutomaticSeries& x, std::vector<FqElement>& out_values,
                          size_t cap = (size_t)1 << 18);

// Reject (throw) unless the support automaton is certified well-ordered.
void assert_well_ordered(const QuasiAutomaticSeries& x);

} // namespace pseries

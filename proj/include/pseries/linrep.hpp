#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pseries/dfao.hpp"
#include "pseries/fq.hpp"
#include "pseries/rat.hpp"
#include "pseries/words.hpp"

namespace pseries {

// Matrix over F_p with byte entries; p is supplied by the surrounding LinRep.
struct FpMat {
    size_t rows = 0, cols = 0;
    std::vector<uint8_t> a;
    FpMat() = default;
    FpMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
    uint8_t& at(size_t i, size_t j) { return a[i * cols + j]; }
    uint8_t at(size_t i, size_t j) const { return a[i * cols + j]; }
    static FpMat identity(size_t n);
};

FpMat fp_mul(const FpMat& a, const FpMat& b, int p);
FpMat fp_add(const FpMat& a, const FpMat& b, int p);
FpMat fp_transpose(const FpMat& a);
FpMat fp_kron(const FpMat& a, const FpMat& b, int p);
bool fp_invertible(FpMat a, int p);
FpMat fp_inverse(FpMat a, int p);

// Twist-free linear word representation of a coefficient function on L_p.
// Words are consumed in computation order: integer digits least-significant
// first, the radix mark, then fractional digits most-significant first.
//
//   value(u.v) = start_row * I[u_1] ... I[u_n] * dot * F[v_1] ... F[v_l] * out
//
// start has entries in F_q; all matrices and `out` are F_p-valued, so the
// product is Frobenius-transparent everywhere except the untwisted left end.
struct LinRep {
    FqFieldPtr field;
    size_t dim = 0;
    std::vector<FqElement> start;  // row, size dim
    std::vector<FpMat> int_maps;   // one per digit
    std::vector<FpMat> frac_maps;  // one per digit
    FpMat dot_map;
    std::vector<uint8_t> out;      // column, size dim, F_p entries
    bool pads_ok = true;           // value depends only on ||word||

    int p() const { return field->p(); }
    FqElement eval_display(const Word& w) const; // w must contain the mark
    FqElement eval_value(const Rat& v) const;    // 0 if v has no L_p word
};

// ---- constructions ----

// DFAO over computation-order words (alphabet p+1, mark = symbol p) with
// outputs indexing `out_values`. The DFAO must be value-stable on padded
// words whenever pads_ok is claimed.
LinRep linrep_from_dfao(const Dfao& m, const FqFieldPtr& f,
                        const std::vector<FqElement>& out_values, bool pads_ok);

// Monomial c * t^v (v nonnegative with p-power denominator).
LinRep linrep_monomial(const FqFieldPtr& f, const Rat& v, const FqElement& c);
LinRep linrep_zero(const FqFieldPtr& f);
// Indicator of integer support with coefficient one (the geometric series).
LinRep linrep_all_integers(const FqFieldPtr& f);
// Indicator series of ||w|| < r (Dedekind cut; r any nonnegative rational).
LinRep linrep_less_than(const FqFieldPtr& f, const Rat& r);
// Kernel i -> mu^i with the coherent p-power-root chain inside F_q.
LinRep linrep_power_kernel(const FqFieldPtr& f, const FqElement& mu);

// ---- combinators ----

LinRep linrep_add(const LinRep& x, const LinRep& y);
LinRep linrep_hadamard(const LinRep& x, const LinRep& y);
LinRep linrep_scale(const LinRep& x, const FqElement& c);
// coefficientwise x -> x^(p^k) (exponents untouched)
LinRep linrep_coeff_frobenius(const LinRep& x, long long k);
// new(w) = x(word of (||w|| - b)/a), zero when not divisible; requires p !~ a
LinRep linrep_div_compose(const LinRep& x, long long a, long long b);
// new(w) = x(word of ||w|| / p^k), k >= 1
LinRep linrep_shift_down(const LinRep& x, int k);
// Cauchy product: new coefficient at k is sum over i + j = k.
LinRep linrep_mul(const LinRep& x, const LinRep& y, size_t cap = (size_t)1 << 18);

// ---- automata bridges ----

// Row-tracking determinization; throws ResourceError beyond `cap` states.
// The result reads computation-order words; outputs index `out_values`.
Dfao dfao_from_linrep(const LinRep& x, std::vector<FqElement>& out_values,
                      size_t cap = (size_t)1 << 18);

// Convert a computation-order boolean DFAO into one reading display-order
// words (integer part most-significant first). Subset construction, capped.
Dfao dfao_computation_to_display(const Dfao& m, int p);

} // namespace pseries

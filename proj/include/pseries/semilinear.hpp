#pragma once

#include <vector>

#include "pseries/dfao.hpp"
#include "pseries/fq.hpp"
#include "pseries/linalg.hpp"

namespace pseries {

// Dense matrix helpers over F_q.
using FqMat = Mat<FqElement>;

FqMat fq_mat(size_t r, size_t c, const FqFieldPtr& f);
FqMat fq_identity(size_t n, const FqFieldPtr& f);
FqMat fq_mul(const FqMat& a, const FqMat& b);
FqMat fq_add(const FqMat& a, const FqMat& b);
FqMat fq_transpose(const FqMat& a);
FqMat fq_frobenius(const FqMat& a, long long k); // entrywise
FqMat fq_kron(const FqMat& a, const FqMat& b);
bool fq_mat_eq(const FqMat& a, const FqMat& b);

// v |-> m . phi^twist(v), phi^k acting entrywise on coordinates.
struct SemilinearMap {
    FqMat m;
    long long twist = 0;

    size_t dim() const { return m.rows; }
    static SemilinearMap identity(size_t n, const FqFieldPtr& f);
    std::vector<FqElement> apply(const std::vector<FqElement>& v) const;
};

// g o f: apply f, then g; twists add.
SemilinearMap compose(const SemilinearMap& g, const SemilinearMap& f);
// T((M, k)) = (phi^-k(M^T), -k); satisfies <T(f)(w), v> = phi^-k(<w, f(v)>).
SemilinearMap transpose(const SemilinearMap& f);
SemilinearMap tensor(const SemilinearMap& a, const SemilinearMap& b);
bool semilinear_eq(const SemilinearMap& a, const SemilinearMap& b, int field_order_e);

// Word-indexed product of per-digit maps of a fixed twist sign.
struct ComposedFunction {
    FqFieldPtr field;
    size_t dim = 0;
    int twist_sign = +1;             // +1 or -1
    std::vector<FqMat> tau;          // indexed by digit, size p

    SemilinearMap map_of(int digit) const { return {tau[digit], twist_sign}; }
    SemilinearMap evaluate(const std::vector<int>& digits) const;
};

// Digit maps additionally indexed by the prefix class of a regular partition
// (the class of a prefix is the partition automaton's state).
struct AutocomposedFunction {
    FqFieldPtr field;
    size_t dim = 0;
    int twist_sign = +1;
    Dfao partition;                  // over Sigma_p; state = prefix class
    std::vector<std::vector<FqMat>> tau; // tau[class][digit]

    SemilinearMap evaluate(const std::vector<int>& digits) const;
};

// pi o f'(s) o iota with iota injective, pi surjective.
struct PotentiallyComposed {
    ComposedFunction inner;
    FqMat iota;                      // dim' x dim
    FqMat pi;                        // dim x dim'

    size_t outer_dim() const { return pi.rows; }
    SemilinearMap evaluate(const std::vector<int>& digits) const;
};

// Direct-sum-over-prefix-classes construction; the result evaluates to the
// same maps through its iota/pi pair.
PotentiallyComposed flatten(const AutocomposedFunction& f);

// s |-> T(f(rev(s))): transpose every digit map and swap iota with pi^T.
PotentiallyComposed reverse_composed(const PotentiallyComposed& f);

PotentiallyComposed tensor(const PotentiallyComposed& f, const PotentiallyComposed& g);

// Reindex along ||s|| = a||t|| + b (implemented with the digit transducer
// machinery of the series layer; defined in series.cpp).
class QuasiAutomaticSeries;
PotentiallyComposed affine_reindex(const PotentiallyComposed& f, long long a, long long b);

} // namespace pseries

#include "pseries/semilinear.hpp"

#include <stdexcept>

namespace pseries {

FqMat fq_mat(size_t r, size_t c, const FqFieldPtr& f) { return FqMat(r, c, f->zero()); }

FqMat fq_identity(size_t n, const FqFieldPtr& f) {
    FqMat m = fq_mat(n, n, f);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
    return m;
}

FqMat fq_mul(const FqMat& a, const FqMat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("fq_mul: dimension mismatch");
    const FqFieldPtr& f = a.a[0].field();
    FqMat r = fq_mat(a.rows, b.cols, f);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (size_t j = 0; j < b.cols; ++j)
                r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
        }
    return r;
}

FqMat fq_add(const FqMat& a, const FqMat& b) {
    FqMat r = a;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + b.a[i];
    return r;
}

FqMat fq_transpose(const FqMat& a) {
    FqMat r(a.cols, a.rows, a.a.empty() ? FqElement() : a.a[0]);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

FqMat fq_frobenius(const FqMat& a, long long k) {
    FqMat r = a;
    for (auto& x : r.a) x = x.frobenius(k);
    return r;
}

FqMat fq_kron(const FqMat& a, const FqMat& b) {
    const FqFieldPtr& f = a.a[0].field();
    FqMat r = fq_mat(a.rows * b.rows, a.cols * b.cols, f);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (size_t k = 0; k < b.rows; ++k)
                for (size_t l = 0; l < b.cols; ++l)
                    r.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
        }
    return r;
}

bool fq_mat_eq(const FqMat& a, const FqMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (size_t i = 0; i < a.a.size(); ++i)
        if (!(a.a[i] == b.a[i])) return false;
    return true;
}

SemilinearMap SemilinearMap::identity(size_t n, const FqFieldPtr& f) {
    return {fq_identity(n, f), 0};
}

std::vector<FqElement> SemilinearMap::apply(const std::vector<FqElement>& v) const {
    if (v.size() != m.cols) throw std::invalid_argument("SemilinearMap: dimension mismatch");
    const FqFieldPtr& f = v.empty() ? m.a[0].field() : v[0].field();
    std::vector<FqElement> tv;
    tv.reserve(v.size());
    for (auto& x : v) tv.push_back(x.frobenius(twist));
    std::vector<FqElement> out(m.rows, f->zero());
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            out[i] = out[i] + m.at(i, j) * tv[j];
    return out;
}

SemilinearMap compose(const SemilinearMap& g, const SemilinearMap& f) {
    return {fq_mul(g.m, fq_frobenius(f.m, g.twist)), g.twist + f.twist};
}

SemilinearMap transpose(const SemilinearMap& f) {
    return {fq_frobenius(fq_transpose(f.m), -f.twist), -f.twist};
}

SemilinearMap tensor(const SemilinearMap& a, const SemilinearMap& b) {
    if (a.twist != b.twist) throw std::invalid_argument("tensor: twist mismatch");
    return {fq_kron(a.m, b.m), a.twist};
}

bool semilinear_eq(const SemilinearMap& a, const SemilinearMap& b, int field_order_e) {
    long long ta = a.twist % field_order_e, tb = b.twist % field_order_e;
    if (ta < 0) ta += field_order_e;
    if (tb < 0) tb += field_order_e;
    return ta == tb && fq_mat_eq(a.m, b.m);
}

SemilinearMap ComposedFunction::evaluate(const std::vector<int>& digits) const {
    SemilinearMap acc = SemilinearMap::identity(dim, field);
    for (int a : digits) {
        if (a < 0 || (size_t)a >= tau.size())
            throw std::invalid_argument("ComposedFunction: digit outside Sigma_p");
        acc = compose(acc, map_of(a));
    }
    return acc;
}

SemilinearMap AutocomposedFunction::evaluate(const std::vector<int>& digits) const {
    SemilinearMap acc = SemilinearMap::identity(dim, field);
    int q = partition.q0;
    for (int a : digits) {
        if (a < 0 || a >= partition.alphabet)
            throw std::invalid_argument("AutocomposedFunction: digit outside Sigma_p");
        acc = compose(acc, SemilinearMap{tau[q][a], twist_sign});
        q = partition.delta[q][a];
    }
    return acc;
}

SemilinearMap PotentiallyComposed::evaluate(const std::vector<int>& digits) const {
    SemilinearMap inner_map = inner.evaluate(digits);
    // pi o inner o iota: matrix pi * M * phi^twist(iota), same twist
    FqMat m = fq_mul(fq_mul(pi, inner_map.m), fq_frobenius(iota, inner_map.twist));
    return {std::move(m), inner_map.twist};
}

PotentiallyComposed flatten(const AutocomposedFunction& f) {
    size_t classes = f.partition.states();
    size_t d = f.dim, dd = d * classes;
    const FqFieldPtr& k = f.field;
    PotentiallyComposed out;
    out.inner.field = k;
    out.inner.dim = dd;
    out.inner.twist_sign = f.twist_sign;
    int p = f.partition.alphabet;
    out.inner.tau.reserve(p);
    for (int a = 0; a < p; ++a) {
        FqMat m = fq_mat(dd, dd, k);
        for (size_t q = 0; q < classes; ++q) {
            size_t qa = (size_t)f.partition.delta[q][a];
            // block row q, block column qa: tau(q, a)
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j)
                    m.at(q * d + i, qa * d + j) = f.tau[q][a].at(i, j);
        }
        out.inner.tau.push_back(std::move(m));
    }
    out.iota = fq_mat(dd, d, k);
    for (size_t q = 0; q < classes; ++q)
        for (size_t i = 0; i < d; ++i) out.iota.at(q * d + i, i) = k->one();
    out.pi = fq_mat(d, dd, k);
    size_t q0 = (size_t)f.partition.q0;
    for (size_t i = 0; i < d; ++i) out.pi.at(i, q0 * d + i) = k->one();
    return out;
}

PotentiallyComposed reverse_composed(const PotentiallyComposed& f) {
    PotentiallyComposed out;
    out.inner.field = f.inner.field;
    out.inner.dim = f.inner.dim;
    out.inner.twist_sign = -f.inner.twist_sign;
    out.inner.tau.reserve(f.inner.tau.size());
    for (size_t a = 0; a < f.inner.tau.size(); ++a) {
        SemilinearMap t = transpose(SemilinearMap{f.inner.tau[a], f.inner.twist_sign});
        out.inner.tau.push_back(std::move(t.m));
    }
    out.iota = fq_transpose(f.pi);
    out.pi = fq_transpose(f.iota);
    return out;
}

PotentiallyComposed tensor(const PotentiallyComposed& f, const PotentiallyComposed& g) {
    if (f.inner.twist_sign != g.inner.twist_sign)
        throw std::invalid_argument("tensor: twist-sign mismatch");
    if (f.inner.tau.size() != g.inner.tau.size())
        throw std::invalid_argument("tensor: alphabet mismatch");
    PotentiallyComposed out;
    out.inner.field = f.inner.field;
    out.inner.dim = f.inner.dim * g.inner.dim;
    out.inner.twist_sign = f.inner.twist_sign;
    for (size_t a = 0; a < f.inner.tau.size(); ++a)
        out.inner.tau.push_back(fq_kron(f.inner.tau[a], g.inner.tau[a]));
    out.iota = fq_kron(f.iota, g.iota);
    out.pi = fq_kron(f.pi, g.pi);
    return out;
}

} // namespace pseries

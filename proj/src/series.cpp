#include "pseries/series.hpp"

#include <sstream>
#include <stdexcept>

namespace pseries {

AutomaticSeries AutomaticSeries::zero(const FqFieldPtr& f) {
    AutomaticSeries s;
    s.field = f;
    s.dim = 1;
    s.iota = fq_mat(1, 1, f);
    s.pi = fq_mat(1, 1, f);
    s.f1.field = f;
    s.f1.dim = 1;
    s.f1.twist_sign = +1;
    s.f2.field = f;
    s.f2.dim = 1;
    s.f2.twist_sign = -1;
    for (int a = 0; a < f->p(); ++a) {
        s.f1.tau.push_back(fq_mat(1, 1, f));
        s.f2.tau.push_back(fq_mat(1, 1, f));
    }
    return s;
}

FqElement AutomaticSeries::raw_eval(const Word& w) const {
    if (!w.has_mark()) throw std::invalid_argument("AutomaticSeries: word must contain the mark");
    auto ip = w.int_part();
    std::vector<int> rev_ip(ip.rbegin(), ip.rend());
    SemilinearMap m1 = f1.evaluate(rev_ip);
    SemilinearMap m2 = f2.evaluate(w.frac_part());
    SemilinearMap full = compose(m1, m2);
    FqMat v = fq_mul(fq_mul(pi, full.m), fq_frobenius(iota, full.twist));
    return v.at(0, 0);
}

FqElement AutomaticSeries::coeff_word(const Word& w) const {
    if (!is_canonical_lp(w, field->p()))
        throw std::invalid_argument("AutomaticSeries: coefficient query on non-canonical word");
    return raw_eval(w);
}

FqElement AutomaticSeries::coeff_value(const Rat& v) const {
    long long n;
    int k;
    if (v.num < 0 || !p_power_denominator(v, field->p(), n, k)) return field->zero();
    return coeff_word(encode_frac(PAdicNonneg{n, k}, field->p()));
}

namespace {

std::string fqmat_json(const FqMat& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.rows; ++i) {
        if (i) os << ",";
        os << "[";
        for (size_t j = 0; j < m.cols; ++j) os << (j ? "," : "") << m.at(i, j).index();
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string composed_json(const ComposedFunction& f) {
    std::ostringstream os;
    os << "{\"digits\":{";
    for (size_t a = 0; a < f.tau.size(); ++a) {
        if (a) os << ",";
        os << "\"" << a << "\":" << fqmat_json(f.tau[a]);
    }
    os << "},\"dim\":" << f.dim << ",\"twist\":" << f.twist_sign << "}";
    return os.str();
}

} // namespace

std::string AutomaticSeries::json() const {
    std::ostringstream os;
    os << "{\"dim\":" << dim << ",\"f1\":" << composed_json(f1) << ",\"f2\":" << composed_json(f2)
       << ",\"field\":" << field->json() << ",\"iota\":" << fqmat_json(iota)
       << ",\"pi\":" << fqmat_json(pi) << "}";
    return os.str();
}

LinRep linrep_of(const AutomaticSeries& x) {
    const FqFieldPtr& f = x.field;
    int p = f->p(), e = f->e();
    size_t d = x.dim;
    // multiplication matrix of c and the matrix of Frobenius on coordinates
    auto mult_mat = [&](const FqElement& c) {
        FpMat m((size_t)e, (size_t)e);
        for (int j = 0; j < e; ++j) {
            std::vector<int> basis(e, 0);
            basis[j] = 1;
            FqElement prod = f->from_coeffs(basis) * c;
            for (int i = 0; i < e; ++i) m.at(i, j) = (uint8_t)prod.coeffs()[i];
        }
        return m;
    };
    FpMat phi((size_t)e, (size_t)e);
    for (int j = 0; j < e; ++j) {
        std::vector<int> basis(e, 0);
        basis[j] = 1;
        FqElement pw = f->from_coeffs(basis).frobenius(1);
        for (int i = 0; i < e; ++i) phi.at(i, j) = (uint8_t)pw.coeffs()[i];
    }
    FpMat phi_inv = fp_inverse(phi, p);
    FpMat phi_big((size_t)(d * e), (size_t)(d * e));
    FpMat phi_inv_big((size_t)(d * e), (size_t)(d * e));
    for (size_t blk = 0; blk < d; ++blk)
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) {
                phi_big.at(blk * e + i, blk * e + j) = phi.at(i, j);
                phi_inv_big.at(blk * e + i, blk * e + j) = phi_inv.at(i, j);
            }
    auto lift = [&](const FqMat& m) {
        FpMat r(m.rows * e, m.cols * e);
        for (size_t i = 0; i < m.rows; ++i)
            for (size_t j = 0; j < m.cols; ++j) {
                if (m.at(i, j).is_zero()) continue;
                FpMat blk = mult_mat(m.at(i, j));
                for (int bi = 0; bi < e; ++bi)
                    for (int bj = 0; bj < e; ++bj) r.at(i * e + bi, j * e + bj) = blk.at(bi, bj);
            }
        return r;
    };
    LinRep r;
    r.field = f;
    r.dim = d * e;
    r.pads_ok = x.padding_stable;
    r.start.assign(r.dim, f->zero());
    for (size_t j = 0; j < d; ++j)
        for (int i = 0; i < e; ++i) r.start[j * e + i] = x.pi.at(0, j) * f->gen().pow(i);
    for (int a = 0; a < p; ++a) {
        r.int_maps.push_back(fp_mul(lift(x.f1.tau[a]), phi_big, p));
        r.frac_maps.push_back(fp_mul(lift(x.f2.tau[a]), phi_inv_big, p));
    }
    r.dot_map = FpMat::identity(r.dim);
    r.out.assign(r.dim, 0);
    for (size_t j = 0; j < d; ++j)
        for (int i = 0; i < e; ++i) r.out[j * e + i] = (uint8_t)x.iota.at(j, 0).coeffs()[i];
    return r;
}

AutomaticSeries series_of(const LinRep& r) {
    const FqFieldPtr& f = r.field;
    int p = f->p();
    size_t D = r.dim;
    AutomaticSeries s;
    s.field = f;
    s.dim = 2 * D;
    s.padding_stable = r.pads_ok;
    auto emb = [&](const FpMat& m) {
        FqMat q = fq_mat(m.rows, m.cols, f);
        for (size_t i = 0; i < m.rows; ++i)
            for (size_t j = 0; j < m.cols; ++j)
                if (m.at(i, j)) q.at(i, j) = f->from_int(m.at(i, j));
        return q;
    };
    s.f1.field = f;
    s.f1.dim = 2 * D;
    s.f1.twist_sign = +1;
    s.f2.field = f;
    s.f2.dim = 2 * D;
    s.f2.twist_sign = -1;
    for (int a = 0; a < p; ++a) {
        FpMat ia = r.int_maps[a];
        FpMat id_dot = fp_mul(ia, r.dot_map, p);
        FqMat t1 = fq_mat(2 * D, 2 * D, f);
        for (size_t i = 0; i < D; ++i)
            for (size_t j = 0; j < D; ++j) {
                if (ia.at(i, j)) t1.at(i, j) = f->from_int(ia.at(i, j));
                if (id_dot.at(i, j)) t1.at(i, D + j) = f->from_int(id_dot.at(i, j));
            }
        s.f1.tau.push_back(std::move(t1));
        FqMat t2 = fq_mat(2 * D, 2 * D, f);
        FqMat fa = emb(r.frac_maps[a]);
        for (size_t i = 0; i < D; ++i)
            for (size_t j = 0; j < D; ++j) t2.at(D + i, D + j) = fa.at(i, j);
        s.f2.tau.push_back(std::move(t2));
    }
    s.iota = fq_mat(2 * D, 1, f);
    for (size_t j = 0; j < D; ++j)
        if (r.out[j]) s.iota.at(D + j, 0) = f->from_int(r.out[j]);
    s.pi = fq_mat(1, 2 * D, f);
    std::vector<FqElement> start_dot(D, f->zero());
    for (size_t i = 0; i < D; ++i)
        for (size_t j = 0; j < D; ++j)
            if (r.dot_map.at(i, j))
                start_dot[j] = start_dot[j] + r.start[i] * f->from_int(r.dot_map.at(i, j));
    for (size_t j = 0; j < D; ++j) {
        s.pi.at(0, j) = r.start[j];
        s.pi.at(0, D + j) = start_dot[j];
    }
    return s;
}

QuasiAutomaticSeries::QuasiAutomaticSeries(long long a_, long long b_, AutomaticSeries inner_)
    : a(a_), b(b_), inner(std::move(inner_)) {
    if (a < 1 || b < 0) throw std::invalid_argument("QuasiAutomaticSeries: need a >= 1, b >= 0");
}

FqElement QuasiAutomaticSeries::coeff(const Rat& i) const {
    Rat j = Rat(a) * i + Rat(b);
    return inner.coeff_value(j);
}

std::string QuasiAutomaticSeries::json() const {
    std::ostringstream os;
    os << "{\"a\":" << a << ",\"b\":" << b << ",\"inner\":" << inner.json() << "}";
    return os.str();
}

std::string QuasiAutomaticSeries::dump(size_t max_terms) const {
    std::ostringstream os;
    size_t found = 0;
    int p = field()->p();
    // scan n/p^k grids in increasing value order up to a small bound
    std::vector<Rat> points;
    for (long long n = 0; n <= 64; ++n)
        for (int k = 0; k <= 4; ++k) points.push_back(Rat(n, ipow(p, k)));
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (auto& j : points) {
        // j indexes the inner series; displayed exponent is (j - b)/a
        FqElement c = inner.coeff_value(j);
        if (c.is_zero()) continue;
        Rat expo = (j - Rat(b)) / Rat(a);
        os << (found ? " + " : "") << c.str() << "*t^(" << expo.str() << ")";
        if (++found >= max_terms) { os << " + ..."; break; }
    }
    if (!found) os << "0";
    return os.str();
}

QuasiAutomaticSeries series_zero(const FqFieldPtr& f) {
    return QuasiAutomaticSeries(1, 0, AutomaticSeries::zero(f));
}

QuasiAutomaticSeries series_from_linrep(const LinRep& r, long long a, long long b) {
    return QuasiAutomaticSeries(a, b, series_of(r));
}

QuasiAutomaticSeries series_monomial(const FqFieldPtr& f, const Rat& expo, const FqElement& c) {
    // choose wrapper so that a*expo + b lands in Z[1/p]_{>=0}
    long long a = 1, b = 0;
    Rat j = expo;
    if (expo.num < 0) {
        // shift by an integer
        b = -expo.floor();
        j = expo + Rat(b);
    }
    long long n;
    int k;
    if (!p_power_denominator(j, f->p(), n, k)) {
        // absorb the non-p part of the denominator into a
        long long d = j.den;
        while (d % f->p() == 0) d /= f->p();
        a = d;
        j = j * Rat(a);
        b *= a;
    }
    return series_from_linrep(linrep_monomial(f, j, c), a, b);
}

QuasiAutomaticSeries series_geometric(const FqFieldPtr& f) {
    return series_from_linrep(linrep_all_integers(f));
}

LinRep affine_reindex_rep(const LinRep& f, long long a, long long b) {
    if (a < 1 || b < 0) throw std::invalid_argument("affine_reindex_rep: need a >= 1, b >= 0");
    int p = f.p();
    int m = 0;
    long long a0 = a;
    while (a0 % p == 0) { a0 /= p; ++m; }
    LinRep cur = m > 0 ? linrep_shift_down(f, m) : f;
    if (a0 != 1 || b != 0) cur = linrep_div_compose(cur, a0, b);
    return cur;
}

namespace {

struct Reconciled {
    long long a, b;
    LinRep x, y;
};

Reconciled reconcile(const QuasiAutomaticSeries& x, const QuasiAutomaticSeries& y) {
    if (!x.field()->same(*y.field()))
        throw std::invalid_argument("series: coefficient field mismatch");
    long long a = std::lcm(x.a, y.a);
    long long dx = a / x.a, dy = a / y.a;
    long long b = std::max(dx * x.b, dy * y.b);
    LinRep rx = linrep_of(x.inner), ry = linrep_of(y.inner);
    if (dx != 1 || b != dx * x.b) rx = affine_reindex_rep(rx, dx, b - dx * x.b);
    if (dy != 1 || b != dy * y.b) ry = affine_reindex_rep(ry, dy, b - dy * y.b);
    return {a, b, std::move(rx), std::move(ry)};
}

} // namespace

QuasiAutomaticSeries add(const QuasiAutomaticSeries& x, const QuasiAutomaticSeries& y) {
    if (x.a == y.a && x.b == y.b) {
        // direct sum on the biautomatic data keeps dimensions additive
        const AutomaticSeries &u = x.inner, &v = y.inner;
        const FqFieldPtr& f = u.field;
        AutomaticSeries s;
        s.field = f;
        s.dim = u.dim + v.dim;
        s.padding_stable = u.padding_stable && v.padding_stable;
        s.f1.field = s.f2.field = f;
        s.f1.dim = s.f2.dim = s.dim;
        s.f1.twist_sign = +1;
        s.f2.twist_sign = -1;
        auto dsum = [&](const FqMat& a_, const FqMat& b_) {
            FqMat m = fq_mat(a_.rows + b_.rows, a_.cols + b_.cols, f);
            for (size_t i = 0; i < a_.rows; ++i)
                for (size_t j = 0; j < a_.cols; ++j) m.at(i, j) = a_.at(i, j);
            for (size_t i = 0; i < b_.rows; ++i)
                for (size_t j = 0; j < b_.cols; ++j) m.at(a_.rows + i, a_.cols + j) = b_.at(i, j);
            return m;
        };
        for (int d = 0; d < f->p(); ++d) {
            s.f1.tau.push_back(dsum(u.f1.tau[d], v.f1.tau[d]));
            s.f2.tau.push_back(dsum(u.f2.tau[d], v.f2.tau[d]));
        }
        s.iota = fq_mat(s.dim, 1, f);
        for (size_t i = 0; i < u.dim; ++i) s.iota.at(i, 0) = u.iota.at(i, 0);
        for (size_t i = 0; i < v.dim; ++i) s.iota.at(u.dim + i, 0) = v.iota.at(i, 0);
        s.pi = fq_mat(1, s.dim, f);
        for (size_t i = 0; i < u.dim; ++i) s.pi.at(0, i) = u.pi.at(0, i);
        for (size_t i = 0; i < v.dim; ++i) s.pi.at(0, u.dim + i) = v.pi.at(0, i);
        return QuasiAutomaticSeries(x.a, x.b, std::move(s));
    }
    Reconciled r = reconcile(x, y);
    return series_from_linrep(linrep_add(r.x, r.y), r.a, r.b);
}

QuasiAutomaticSeries scalar_mul(const FqElement& c, const QuasiAutomaticSeries& x) {
    QuasiAutomaticSeries r = x;
    for (size_t j = 0; j < r.inner.dim; ++j) r.inner.pi.at(0, j) = r.inner.pi.at(0, j) * c;
    return r;
}

QuasiAutomaticSeries hadamard(const QuasiAutomaticSeries& x, const QuasiAutomaticSeries& y) {
    if (x.a == y.a && x.b == y.b) {
        const AutomaticSeries &u = x.inner, &v = y.inner;
        const FqFieldPtr& f = u.field;
        AutomaticSeries s;
        s.field = f;
        s.dim = u.dim * v.dim;
        s.padding_stable = u.padding_stable && v.padding_stable;
        s.f1.field = s.f2.field = f;
        s.f1.dim = s.f2.dim = s.dim;
        s.f1.twist_sign = +1;
        s.f2.twist_sign = -1;
        for (int d = 0; d < f->p(); ++d) {
            s.f1.tau.push_back(fq_kron(u.f1.tau[d], v.f1.tau[d]));
            s.f2.tau.push_back(fq_kron(u.f2.tau[d], v.f2.tau[d]));
        }
        s.iota = fq_kron(u.iota, v.iota);
        s.pi = fq_kron(u.pi, v.pi);
        return QuasiAutomaticSeries(x.a, x.b, std::move(s));
    }
    Reconciled r = reconcile(x, y);
    return series_from_linrep(linrep_hadamard(r.x, r.y), r.a, r.b);
}

QuasiAutomaticSeries subst_scale(const QuasiAutomaticSeries& x, const FqElement& mu) {
    if (mu.is_zero()) throw std::invalid_argument("subst_scale: mu must be nonzero");
    const FqFieldPtr& f = x.field();
    int p = f->p();
    // exponents are (j - b)/a; write mu^((j-b)/a) = nu^j * nu^(-b) with
    // nu = the canonical a-th p-power-coherent root of mu
    long long s = 0;
    long long a0 = x.a;
    while (a0 % p == 0) { a0 /= p; ++s; }
    FqElement nu = mu.frobenius(-s);
    if (a0 > 1) {
        bool found = false;
        for (auto& cand : f->elements()) {
            if (cand.is_zero()) continue;
            if (cand.pow(a0) == nu) { nu = cand; found = true; break; }
        }
        if (!found)
            throw std::invalid_argument("subst_scale: no a-th root of mu inside the field");
    }
    LinRep kernel = linrep_power_kernel(f, nu);
    LinRep rx = linrep_of(x.inner);
    LinRep prod = linrep_hadamard(rx, kernel);
    FqElement shift = nu.pow(x.b).inverse();
    return series_from_linrep(linrep_scale(prod, shift), x.a, x.b);
}

QuasiAutomaticSeries subst_power(const QuasiAutomaticSeries& x, long long n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("subst_power: exponent must be n/p^k > 0");
    int p = x.field()->p();
    long long n0 = n;
    int s = 0;
    while (n0 % p == 0) { n0 /= p; ++s; }
    int m = s - k;
    LinRep rep = linrep_of(x.inner);
    if (m >= 0) {
        if (n0 != 1) rep = linrep_div_compose(rep, n0, 0);
        if (m > 0) rep = linrep_shift_down(rep, m);
        return series_from_linrep(rep, x.a, x.b * n0 * ipow(p, m));
    }
    if (n0 != 1) rep = linrep_div_compose(rep, n0, 0);
    return series_from_linrep(rep, x.a * ipow(p, -m), x.b * n0);
}

QuasiAutomaticSeries frobenius_series(const QuasiAutomaticSeries& x, long long k) {
    int p = x.field()->p();
    if (k == 0) return x;
    if (k < 0) {
        LinRep rep = linrep_coeff_frobenius(linrep_of(x.inner), k);
        return series_from_linrep(rep, x.a * ipow(p, (int)(-k)), x.b);
    }
    long long s = 0, a0 = x.a;
    while (a0 % p == 0) { a0 /= p; ++s; }
    LinRep rep = linrep_coeff_frobenius(linrep_of(x.inner), k);
    if (k <= s) return series_from_linrep(rep, x.a / ipow(p, (int)k), x.b);
    int m = (int)(k - s);
    rep = linrep_shift_down(rep, m);
    return series_from_linrep(rep, a0, x.b * ipow(p, m));
}

QuasiAutomaticSeries truncate(const QuasiAutomaticSeries& x, const Rat& r) {
    Rat bound = Rat(x.a) * r + Rat(x.b);
    LinRep rep = linrep_of(x.inner);
    LinRep ind = linrep_less_than(x.field(), bound);
    return series_from_linrep(linrep_hadamard(rep, ind), x.a, x.b);
}

QuasiAutomaticSeries mul_fq(const QuasiAutomaticSeries& x, const QuasiAutomaticSeries& y,
                            size_t cap) {
    if (!x.field()->same(*y.field()))
        throw std::invalid_argument("mul_fq: coefficient field mismatch");
    long long a = std::lcm(x.a, y.a);
    long long dx = a / x.a, dy = a / y.a;
    LinRep rx = linrep_of(x.inner), ry = linrep_of(y.inner);
    if (dx != 1) rx = affine_reindex_rep(rx, dx, 0);
    if (dy != 1) ry = affine_reindex_rep(ry, dy, 0);
    LinRep prod = linrep_mul(rx, ry, cap);
    return series_from_linrep(prod, a, dx * x.b + dy * y.b);
}

Dfao support_dfao(const QuasiAutomaticSeries& x, size_t cap) {
    LinRep rep = linrep_of(x.inner);
    std::vector<FqElement> outs;
    Dfao comp = dfao_from_linrep(rep, outs, cap);
    Dfao boolean = comp;
    for (size_t q = 0; q < boolean.states(); ++q)
        boolean.outputs[q] = outs[comp.outputs[q]].is_zero() ? 0 : 1;
    Dfao display = dfao_computation_to_display(boolean, x.field()->p());
    Dfao lp = canonical_lp_dfao(x.field()->p());
    return minimize(product(display, lp, [](int u, int v) { return u && v ? 1 : 0; }));
}

Dfao coefficient_dfao_lp0(const AutomaticSeries& x, std::vector<FqElement>& out_values,
                          size_t cap) {
    const FqFieldPtr& f = x.field;
    int p = f->p();
    // track the column chi(prefix) = f1(rev(prefix)) applied to iota; reading
    // s most-significant digit first, chi(prefix.a) = tau1(a)(chi)
    auto key_of = [&](const std::vector<FqElement>& v) {
        std::vector<long long> k;
        for (auto& c : v) k.push_back(c.index());
        return k;
    };
    std::map<std::vector<long long>, int> ids;
    std::vector<std::vector<FqElement>> pool;
    auto get = [&](const std::vector<FqElement>& v) {
        auto k = key_of(v);
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        if (pool.size() >= cap) throw ResourceError("coefficient_dfao_lp0: state cap exceeded");
        int id = (int)pool.size();
        ids[k] = id;
        pool.push_back(v);
        return id;
    };
    std::vector<FqElement> iota_col(x.dim, f->zero());
    for (size_t i = 0; i < x.dim; ++i) iota_col[i] = x.iota.at(i, 0);
    std::map<long long, int> outid;
    auto out_of = [&](const FqElement& v) {
        auto it = outid.find(v.index());
        if (it != outid.end()) return it->second;
        int id = (int)out_values.size();
        out_values.push_back(v);
        outid[v.index()] = id;
        return id;
    };
    Dfao m;
    m.alphabet = p;
    m.q0 = get(iota_col);
    for (size_t i = 0; i < pool.size(); ++i) {
        std::vector<FqElement> chi = pool[i];
        m.delta.push_back(std::vector<int>(p, 0));
        FqElement val = f->zero();
        for (size_t j = 0; j < x.dim; ++j) val = val + x.pi.at(0, j) * chi[j];
        m.outputs.push_back(out_of(val));
        for (int a = 0; a < p; ++a) {
            SemilinearMap t{x.f1.tau[a], +1};
            m.delta[i][a] = get(t.apply(chi));
        }
    }
    return m;
}

void assert_well_ordered(const QuasiAutomaticSeries& x) {
    Dfao sup = support_dfao(x);
    auto res = well_ordered_check(sup, x.field()->p());
    if (res.verdict != WellOrderedVerdict::CertifiedWellOrdered)
        throw std::domain_error("series support not certified well-ordered: " + res.detail);
}

PotentiallyComposed affine_reindex(const PotentiallyComposed& f, long long a, long long b) {
    // route the function data through the series machinery: wrap each
    // (pi-row, iota-column) pair of the outer space as a scalar series
    if (f.inner.twist_sign != +1)
        throw std::invalid_argument("affine_reindex: expected twist +1 data");
    const FqFieldPtr& k = f.inner.field;
    size_t d = f.outer_dim();
    // Build a block series whose f1 is the inner composed function and run the
    // reindex on the full matrix of scalar entries.
    std::vector<std::vector<AutomaticSeries>> entries(d, std::vector<AutomaticSeries>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            AutomaticSeries s;
            s.field = k;
            s.dim = f.inner.dim;
            s.padding_stable = true;
            s.f1 = f.inner;
            s.f2.field = k;
            s.f2.dim = f.inner.dim;
            s.f2.twist_sign = -1;
            for (int dig = 0; dig < k->p(); ++dig)
                s.f2.tau.push_back(fq_mat(f.inner.dim, f.inner.dim, k));
            FqMat pi_row = fq_mat(1, f.inner.dim, k);
            for (size_t c = 0; c < f.inner.dim; ++c) pi_row.at(0, c) = f.pi.at(i, c);
            FqMat io_col = fq_mat(f.inner.dim, 1, k);
            for (size_t c = 0; c < f.inner.dim; ++c) io_col.at(c, 0) = f.iota.at(c, j);
            s.pi = pi_row;
            s.iota = io_col;
            entries[i][j] = std::move(s);
        }
    // reindex each scalar entry and reassemble as a direct product
    PotentiallyComposed out;
    out.inner.field = k;
    out.inner.twist_sign = +1;
    std::vector<std::vector<AutomaticSeries>> re(d, std::vector<AutomaticSeries>(d));
    size_t total = 0;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            LinRep rep = affine_reindex_rep(linrep_of(entries[i][j]), a, b);
            re[i][j] = series_of(rep);
            total += re[i][j].dim;
        }
    out.inner.dim = total;
    for (int dig = 0; dig < k->p(); ++dig) {
        FqMat big = fq_mat(total, total, k);
        size_t off = 0;
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                const FqMat& t = re[i][j].f1.tau[dig];
                for (size_t r = 0; r < t.rows; ++r)
                    for (size_t c = 0; c < t.cols; ++c) big.at(off + r, off + c) = t.at(r, c);
                off += re[i][j].dim;
            }
        out.inner.tau.push_back(std::move(big));
    }
    out.iota = fq_mat(total, d, k);
    out.pi = fq_mat(d, total, k);
    size_t off = 0;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            for (size_t r = 0; r < re[i][j].dim; ++r) {
                out.iota.at(off + r, j) = re[i][j].iota.at(r, 0);
                out.pi.at(i, off + r) = re[i][j].pi.at(0, r);
            }
            off += re[i][j].dim;
        }
    return out;
}

} // namespace pseries

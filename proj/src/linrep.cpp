#include "pseries/linrep.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pseries {

FpMat FpMat::identity(size_t n) {
    FpMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMat fp_mul(const FpMat& a, const FpMat& b, int p) {
    if (a.cols != b.rows) throw std::invalid_argument("fp_mul: dimension mismatch");
    FpMat r(a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            int x = a.at(i, k);
            if (!x) continue;
            for (size_t j = 0; j < b.cols; ++j)
                r.at(i, j) = (uint8_t)((r.at(i, j) + x * b.at(k, j)) % p);
        }
    return r;
}

FpMat fp_add(const FpMat& a, const FpMat& b, int p) {
    FpMat r = a;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = (uint8_t)((r.a[i] + b.a[i]) % p);
    return r;
}

FpMat fp_transpose(const FpMat& a) {
    FpMat r(a.cols, a.rows);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

FpMat fp_kron(const FpMat& a, const FpMat& b, int p) {
    FpMat r(a.rows * b.rows, a.cols * b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) {
            int x = a.at(i, j);
            if (!x) continue;
            for (size_t k = 0; k < b.rows; ++k)
                for (size_t l = 0; l < b.cols; ++l)
                    r.at(i * b.rows + k, j * b.cols + l) = (uint8_t)((x * b.at(k, l)) % p);
        }
    return r;
}

bool fp_invertible(FpMat a, int p) {
    if (a.rows != a.cols) return false;
    size_t n = a.rows;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a.at(piv, c) == 0) ++piv;
        if (piv == n) return false;
        if (piv != c)
            for (size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
        int inv = 1;
        for (int i = 1; i < p; ++i)
            if ((a.at(c, c) * i) % p == 1) { inv = i; break; }
        for (size_t j = 0; j < n; ++j) a.at(c, j) = (uint8_t)((a.at(c, j) * inv) % p);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a.at(i, c) == 0) continue;
            int f = a.at(i, c);
            for (size_t j = 0; j < n; ++j)
                a.at(i, j) = (uint8_t)(((a.at(i, j) - f * a.at(c, j)) % p + p) % p);
        }
    }
    return true;
}

FpMat fp_inverse(FpMat a, int p) {
    size_t n = a.rows;
    FpMat inv = FpMat::identity(n);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a.at(piv, c) == 0) ++piv;
        if (piv == n) throw std::domain_error("fp_inverse: singular matrix");
        if (piv != c)
            for (size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        int iv = 1;
        for (int i = 1; i < p; ++i)
            if ((a.at(c, c) * i) % p == 1) { iv = i; break; }
        for (size_t j = 0; j < n; ++j) {
            a.at(c, j) = (uint8_t)((a.at(c, j) * iv) % p);
            inv.at(c, j) = (uint8_t)((inv.at(c, j) * iv) % p);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a.at(i, c) == 0) continue;
            int f = a.at(i, c);
            for (size_t j = 0; j < n; ++j) {
                a.at(i, j) = (uint8_t)(((a.at(i, j) - f * a.at(c, j)) % p + p) % p);
                inv.at(i, j) = (uint8_t)(((inv.at(i, j) - f * inv.at(c, j)) % p + p) % p);
            }
        }
    }
    return inv;
}

namespace {

std::vector<FqElement> row_times_mat(const std::vector<FqElement>& row, const FpMat& m,
                                     const FqFieldPtr& f) {
    std::vector<FqElement> r(m.cols, f->zero());
    for (size_t i = 0; i < row.size(); ++i) {
        if (row[i].is_zero()) continue;
        for (size_t j = 0; j < m.cols; ++j) {
            int c = m.at(i, j);
            if (c) r[j] = r[j] + row[i] * f->from_int(c);
        }
    }
    return r;
}

FqElement row_dot_out(const std::vector<FqElement>& row, const std::vector<uint8_t>& out,
                      const FqFieldPtr& f) {
    FqElement v = f->zero();
    for (size_t i = 0; i < row.size(); ++i)
        if (out[i] && !row[i].is_zero()) v = v + row[i] * f->from_int(out[i]);
    return v;
}

} // namespace

FqElement LinRep::eval_display(const Word& w) const {
    if (!w.has_mark()) throw std::invalid_argument("LinRep: word must contain the radix mark");
    std::vector<FqElement> row = start;
    auto ip = w.int_part();
    for (size_t i = ip.size(); i-- > 0;) row = row_times_mat(row, int_maps[ip[i]], field);
    row = row_times_mat(row, dot_map, field);
    for (int d : w.frac_part()) row = row_times_mat(row, frac_maps[d], field);
    return row_dot_out(row, out, field);
}

FqElement LinRep::eval_value(const Rat& v) const {
    long long n;
    int k;
    if (v.num < 0 || !p_power_denominator(v, p(), n, k)) return field->zero();
    return eval_display(encode_frac(PAdicNonneg{n, k}, p()));
}

LinRep linrep_from_dfao(const Dfao& m, const FqFieldPtr& f,
                        const std::vector<FqElement>& out_values, bool pads_ok) {
    int p = f->p();
    if (m.alphabet != p + 1)
        throw std::invalid_argument("linrep_from_dfao: expected alphabet Sigma_p plus mark");
    size_t D = m.states();
    bool fp_outputs = true;
    for (auto& v : out_values) {
        auto c = v.coeffs();
        for (size_t i = 1; i < c.size(); ++i)
            if (c[i]) fp_outputs = false;
    }
    auto transition_mat = [&](int sym) {
        FpMat t(D, D);
        for (size_t q = 0; q < D; ++q) t.at(q, (size_t)m.delta[q][sym]) = 1;
        return t;
    };
    LinRep r;
    r.field = f;
    r.pads_ok = pads_ok;
    if (fp_outputs) {
        r.dim = D;
        r.start.assign(D, f->zero());
        r.start[m.q0] = f->one();
        for (int a = 0; a < p; ++a) {
            r.int_maps.push_back(transition_mat(a));
            r.frac_maps.push_back(transition_mat(a));
        }
        r.dot_map = transition_mat(p);
        r.out.assign(D, 0);
        for (size_t q = 0; q < D; ++q)
            r.out[q] = (uint8_t)out_values[m.outputs[q]].coeffs()[0];
        return r;
    }
    // general F_q outputs: e parallel copies extracting each coordinate
    int e = f->e();
    r.dim = D * e;
    r.start.assign(r.dim, f->zero());
    for (int i = 0; i < e; ++i) r.start[(size_t)m.q0 * e + i] = f->gen().pow(i);
    auto lift = [&](const FpMat& t) {
        return fp_kron(t, FpMat::identity(e), p);
    };
    for (int a = 0; a < p; ++a) {
        r.int_maps.push_back(lift(transition_mat(a)));
        r.frac_maps.push_back(lift(transition_mat(a)));
    }
    r.dot_map = lift(transition_mat(p));
    r.out.assign(r.dim, 0);
    for (size_t q = 0; q < D; ++q) {
        auto c = out_values[m.outputs[q]].coeffs();
        for (int i = 0; i < e; ++i) r.out[q * e + i] = (uint8_t)c[i];
    }
    return r;
}

namespace {

// convenience builder for handwritten computation-order DFAOs
struct DfaoBuilder {
    int alphabet;
    std::vector<std::vector<int>> delta;
    std::vector<int> outputs;
    int add_state(int out) {
        delta.push_back(std::vector<int>(alphabet, -1));
        outputs.push_back(out);
        return (int)delta.size() - 1;
    }
    Dfao finish(int q0) {
        Dfao m;
        m.alphabet = alphabet;
        m.q0 = q0;
        m.delta = delta;
        m.outputs = outputs;
        for (auto& row : m.delta)
            for (int& t : row)
                if (t < 0) throw std::logic_error("DfaoBuilder: incomplete transition table");
        return m;
    }
};

} // namespace

LinRep linrep_zero(const FqFieldPtr& f) {
    int p = f->p();
    DfaoBuilder b{p + 1, {}, {}};
    int dead = b.add_state(0);
    for (int a = 0; a <= p; ++a) b.delta[dead][a] = dead;
    return linrep_from_dfao(b.finish(dead), f, {f->zero()}, true);
}

LinRep linrep_monomial(const FqFieldPtr& f, const Rat& v, const FqElement& c) {
    int p = f->p();
    long long n;
    int k;
    if (v.num < 0 || !p_power_denominator(v, p, n, k))
        throw std::invalid_argument("linrep_monomial: exponent outside Z[1/p]_{>=0}");
    if (c.is_zero()) return linrep_zero(f);
    Word w = encode_frac(PAdicNonneg{n, k}, p);
    auto ip = w.int_part();                 // display MSB-first
    std::vector<int> cu(ip.rbegin(), ip.rend()); // computation order LSB-first
    auto cv = w.frac_part();
    // states: int positions 0..|cu| (saturated), then frac positions 0..|cv|,
    // plus dead; output 1 only at frac position |cv| (all target digits seen)
    DfaoBuilder b{p + 1, {}, {}};
    int dead = b.add_state(0);
    for (int a = 0; a <= p; ++a) b.delta[dead][a] = dead;
    std::vector<int> fracs(cv.size() + 1);
    for (size_t j = 0; j <= cv.size(); ++j) fracs[j] = b.add_state(j == cv.size() ? 1 : 0);
    for (size_t j = 0; j <= cv.size(); ++j) {
        for (int a = 0; a < p; ++a) {
            if (j < cv.size())
                b.delta[fracs[j]][a] = a == cv[j] ? fracs[j + 1] : dead;
            else
                b.delta[fracs[j]][a] = a == 0 ? fracs[j] : dead;
        }
        b.delta[fracs[j]][p] = dead;
    }
    std::vector<int> ints(cu.size() + 1);
    for (size_t i = 0; i <= cu.size(); ++i)
        ints[i] = b.add_state(i == cu.size() && cv.empty() ? 1 : 0);
    for (size_t i = 0; i <= cu.size(); ++i) {
        for (int a = 0; a < p; ++a) {
            if (i < cu.size())
                b.delta[ints[i]][a] = a == cu[i] ? ints[i + 1] : dead;
            else
                b.delta[ints[i]][a] = a == 0 ? ints[i] : dead;
        }
        b.delta[ints[i]][p] = i == cu.size() ? fracs[0] : dead;
    }
    Dfao m = b.finish(ints[0]);
    return linrep_from_dfao(m, f, {f->zero(), c}, true);
}

LinRep linrep_all_integers(const FqFieldPtr& f) {
    int p = f->p();
    DfaoBuilder b{p + 1, {}, {}};
    int dead = b.add_state(0);
    int pre = b.add_state(1);
    int intlike = b.add_state(1);
    int broken = b.add_state(0);
    for (int a = 0; a <= p; ++a) b.delta[dead][a] = dead;
    for (int a = 0; a < p; ++a) b.delta[pre][a] = pre;
    b.delta[pre][p] = intlike;
    b.delta[intlike][0] = intlike;
    for (int a = 1; a < p; ++a) b.delta[intlike][a] = broken;
    b.delta[intlike][p] = dead;
    for (int a = 0; a < p; ++a) b.delta[broken][a] = broken;
    b.delta[broken][p] = dead;
    return linrep_from_dfao(b.finish(pre), f, {f->zero(), f->one()}, true);
}

LinRep linrep_less_than(const FqFieldPtr& f, const Rat& r) {
    int p = f->p();
    if (r <= Rat(0)) return linrep_zero(f);
    // integer digits of floor(r), least significant first
    long long rint = r.floor();
    std::vector<int> ri;
    {
        long long n = rint;
        while (n > 0) { ri.push_back((int)(n % p)); n /= p; }
    }
    // fractional expansion of r - floor(r): digits plus eventual cycle
    std::vector<int> fdig;
    size_t cycle_start = 0;
    {
        Rat x = r.frac();
        std::map<Rat, size_t> seen;
        while (x != Rat(0)) {
            auto it = seen.find(x);
            if (it != seen.end()) { cycle_start = it->second; break; }
            seen[x] = fdig.size();
            Rat px = x * Rat(p);
            long long d = px.floor();
            fdig.push_back((int)d);
            x = px.frac();
            if (x == Rat(0)) { cycle_start = fdig.size(); break; }
        }
        if (fdig.empty()) cycle_start = 0;
    }
    auto frac_digit = [&](size_t j) -> int {
        if (j < fdig.size()) return fdig[j];
        if (fdig.size() == cycle_start) return 0; // terminating expansion
        size_t cyc = fdig.size() - cycle_start;
        return fdig[cycle_start + (j - cycle_start) % cyc];
    };
    bool terminating = fdig.size() == cycle_start;
    size_t frac_positions = terminating ? fdig.size() + 1 : fdig.size();
    auto frac_next = [&](size_t j) -> size_t {
        size_t nj = j + 1;
        if (terminating) return std::min(nj, frac_positions - 1);
        if (nj >= fdig.size()) return cycle_start;
        return nj;
    };
    std::vector<bool> tail_positive(frac_positions, false);
    for (size_t j = 0; j < frac_positions; ++j) {
        // positive iff some digit at position >= j is nonzero
        bool pos = false;
        size_t lim = fdig.size() + (fdig.size() - cycle_start) + 2;
        size_t jj = j;
        for (size_t step = 0; step < lim; ++step) {
            if (frac_digit(jj) > 0) { pos = true; break; }
            size_t njj = frac_next(jj);
            if (njj == jj) break;
            jj = njj;
        }
        tail_positive[j] = pos;
    }
    bool whole_frac_positive = r.frac() != Rat(0);

    // int-phase states: (pos 0..|ri| saturated) x verdict {LT, EQ, GT}
    // frac-phase states: (pos) x {UNRES, LT, GT}
    DfaoBuilder b{p + 1, {}, {}};
    size_t ipos_n = ri.size() + 1;
    auto int_out = [&](size_t, int verdict) {
        // value-if-ended = integer so far; "< r" iff verdict LT, or EQ and frac(r) > 0
        return verdict == 0 || (verdict == 1 && whole_frac_positive) ? 1 : 0;
    };
    // verdict coding: 0 = LT, 1 = EQ, 2 = GT
    std::vector<std::vector<int>> int_id(ipos_n, std::vector<int>(3));
    for (size_t i = 0; i < ipos_n; ++i)
        for (int v = 0; v < 3; ++v) int_id[i][v] = b.add_state(int_out(i, v));
    std::vector<std::vector<int>> frac_id(frac_positions, std::vector<int>(3));
    auto frac_out = [&](size_t j, int st) {
        if (st == 0) return 1;            // resolved less
        if (st == 2) return 0;            // resolved greater
        return tail_positive[j] ? 1 : 0;  // equal so far; r has more to give?
    };
    for (size_t j = 0; j < frac_positions; ++j)
        for (int s = 0; s < 3; ++s) frac_id[j][s] = b.add_state(frac_out(j, s));
    int dead = b.add_state(0);
    for (int a = 0; a <= p; ++a) b.delta[dead][a] = dead;

    for (size_t i = 0; i < ipos_n; ++i) {
        int rd = i < ri.size() ? ri[i] : 0;
        size_t ni = std::min(i + 1, ipos_n - 1);
        for (int v = 0; v < 3; ++v) {
            for (int d = 0; d < p; ++d) {
                int nv = d == rd ? v : (d < rd ? 0 : 2);
                b.delta[int_id[i][v]][d] = int_id[ni][nv];
            }
            // entering the fraction: int verdict LT -> always below, GT -> never,
            // EQ -> compare fractions from position 0
            int target;
            if (v == 0) target = frac_id[0][0];
            else if (v == 2) target = frac_id[0][2];
            else target = frac_positions > 0 ? frac_id[0][1] : dead;
            b.delta[int_id[i][v]][p] = target;
        }
    }
    for (size_t j = 0; j < frac_positions; ++j) {
        int ed = frac_digit(j);
        size_t nj = frac_next(j);
        if (nj >= frac_positions) nj = frac_positions - 1;
        for (int s = 0; s < 3; ++s) {
            for (int d = 0; d < p; ++d) {
                int ns = s;
                if (s == 1) ns = d == ed ? 1 : (d < ed ? 0 : 2);
                b.delta[frac_id[j][s]][d] = frac_id[nj][ns];
            }
            b.delta[frac_id[j][s]][p] = dead;
        }
    }
    Dfao m = b.finish(int_id[0][1]);
    return linrep_from_dfao(minimize(m), f, {f->zero(), f->one()}, true);
}

LinRep linrep_power_kernel(const FqFieldPtr& f, const FqElement& mu) {
    if (mu.is_zero()) throw std::invalid_argument("linrep_power_kernel: mu must be nonzero");
    int p = f->p();
    // multiplicative order of mu
    long long m = 1;
    {
        FqElement x = mu;
        while (!x.is_one()) { x = x * mu; ++m; }
    }
    long long pinv = 1;
    for (long long i = 1; i < m; ++i)
        if ((p % m) * i % m == 1) { pinv = i; break; }
    if (m == 1) pinv = 0;
    auto norm = [&](long long x) { return ((x % m) + m) % m; };
    // int phase state: (acc, place); frac phase: (acc, place)
    DfaoBuilder b{p + 1, {}, {}};
    std::map<std::tuple<int, long long, long long>, int> ids;
    std::vector<std::tuple<int, long long, long long>> pool;
    auto get = [&](int phase, long long acc, long long place) {
        auto key = std::make_tuple(phase, acc, place);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = b.add_state((int)acc);
        ids[key] = id;
        pool.push_back(key);
        return id;
    };
    int start = get(0, 0, 1 % m);
    for (size_t i = 0; i < pool.size(); ++i) {
        auto [phase, acc, place] = pool[i];
        int q = (int)i;
        (void)q;
        int self = ids[pool[i]];
        if (phase == 0) {
            for (int d = 0; d < p; ++d)
                b.delta[self][d] = get(0, norm(acc + d * place), norm(place * p));
            b.delta[self][p] = get(1, acc, m == 1 ? 0 : pinv);
        } else {
            for (int d = 0; d < p; ++d)
                b.delta[self][d] = get(1, norm(acc + d * place), norm(place * pinv));
            b.delta[self][p] = get(1, acc, place); // second mark: harmless self target
        }
    }
    // second-mark inputs are junk; route them to a dead-zero sink instead
    int dead = b.add_state(-1);
    for (int a = 0; a <= p; ++a) b.delta[dead][a] = dead;
    for (size_t i = 0; i < pool.size(); ++i) {
        auto [phase, acc, place] = pool[i];
        (void)acc;
        (void)place;
        if (phase == 1) b.delta[ids[pool[i]]][p] = dead;
    }
    // outputs: mu^acc, dead -> 0
    std::vector<FqElement> out_values;
    for (long long i = 0; i < m; ++i) out_values.push_back(mu.pow(i));
    out_values.push_back(f->zero());
    for (auto& o : b.outputs)
        if (o < 0) o = (int)m;
    Dfao d = b.finish(start);
    return linrep_from_dfao(d, f, out_values, true);
}

LinRep linrep_add(const LinRep& x, const LinRep& y) {
    if (!x.field->same(*y.field)) throw std::invalid_argument("linrep_add: field mismatch");
    int p = x.p();
    LinRep r;
    r.field = x.field;
    r.dim = x.dim + y.dim;
    r.pads_ok = x.pads_ok && y.pads_ok;
    r.start = x.start;
    r.start.insert(r.start.end(), y.start.begin(), y.start.end());
    auto dsum = [&](const FpMat& a, const FpMat& b) {
        FpMat m(a.rows + b.rows, a.cols + b.cols);
        for (size_t i = 0; i < a.rows; ++i)
            for (size_t j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
        for (size_t i = 0; i < b.rows; ++i)
            for (size_t j = 0; j < b.cols; ++j) m.at(a.rows + i, a.cols + j) = b.at(i, j);
        return m;
    };
    for (int a = 0; a < p; ++a) {
        r.int_maps.push_back(dsum(x.int_maps[a], y.int_maps[a]));
        r.frac_maps.push_back(dsum(x.frac_maps[a], y.frac_maps[a]));
    }
    r.dot_map = dsum(x.dot_map, y.dot_map);
    r.out = x.out;
    r.out.insert(r.out.end(), y.out.begin(), y.out.end());
    return r;
}

LinRep linrep_hadamard(const LinRep& x, const LinRep& y) {
    if (!x.field->same(*y.field)) throw std::invalid_argument("linrep_hadamard: field mismatch");
    int p = x.p();
    LinRep r;
    r.field = x.field;
    r.dim = x.dim * y.dim;
    r.pads_ok = x.pads_ok && y.pads_ok;
    r.start.reserve(r.dim);
    for (auto& a : x.start)
        for (auto& b : y.start) r.start.push_back(a * b);
    for (int a = 0; a < p; ++a) {
        r.int_maps.push_back(fp_kron(x.int_maps[a], y.int_maps[a], p));
        r.frac_maps.push_back(fp_kron(x.frac_maps[a], y.frac_maps[a], p));
    }
    r.dot_map = fp_kron(x.dot_map, y.dot_map, p);
    r.out.reserve(r.dim);
    for (auto a : x.out)
        for (auto b : y.out) r.out.push_back((uint8_t)((a * b) % p));
    return r;
}

LinRep linrep_scale(const LinRep& x, const FqElement& c) {
    LinRep r = x;
    for (auto& s : r.start) s = s * c;
    return r;
}

LinRep linrep_coeff_frobenius(const LinRep& x, long long k) {
    LinRep r = x;
    for (auto& s : r.start) s = s.frobenius(k);
    return r;
}

namespace {

// deterministic LSB-first divide-with-remainder machine for t = (v - b)/a
struct DivMachine {
    int p;
    long long a, b;
    long long window; // |carry| <= window
    std::vector<int> beta; // digits of b, LSB first
    long long ainv;   // a^-1 mod p

    DivMachine(int p_, long long a_, long long b_) : p(p_), a(a_), b(b_) {
        if (a % p == 0) throw std::invalid_argument("DivMachine: p divides a");
        window = 2 * a + 2 * p + b + 4;
        long long n = b;
        while (n > 0) { beta.push_back((int)(n % p)); n /= p; }
        ainv = 1;
        for (long long i = 1; i < p; ++i)
            if ((a % p) * i % p == 1) { ainv = i; break; }
    }

    // int-phase step: from carry c at b-position i, consuming digit d, emit x
    bool int_step(long long c, size_t i, int d, int& x, long long& c2) const {
        long long bi = i < beta.size() ? beta[i] : 0;
        long long num = c + d - bi;
        x = (int)(((ainv * ((num % p) + p)) % p));
        c2 = (num - a * x) / p;
        return c2 >= -window && c2 <= window;
    }

    // can the integer top be closed from (c, i) emitting only zeros?
    bool top_ok(long long c, size_t i) const {
        for (int step = 0; step < (int)beta.size() + 64; ++step) {
            if (c == 0 && i >= beta.size()) return true;
            int x;
            long long c2;
            if (!int_step(c, i, 0, x, c2)) return false;
            if (x != 0) return false;
            c = c2;
            i = std::min(i + 1, beta.size());
            if (c == 0 && i >= beta.size()) return true;
        }
        return false;
    }
};

} // namespace

LinRep linrep_div_compose(const LinRep& x, long long a, long long b) {
    if (a < 1 || b < 0) throw std::invalid_argument("linrep_div_compose: need a >= 1, b >= 0");
    if (!x.pads_ok)
        throw std::invalid_argument("linrep_div_compose: input representation is not padding-stable");
    int p = x.p();
    if (a == 1 && b == 0) return x;
    DivMachine dm(p, a, b);
    long long W = dm.window;
    size_t bpos_n = dm.beta.size() + 1;
    // Fractional borrows in a true division run lie in [-(a-1), 0]; kap is the
    // borrow the fraction hands to the integer's least significant position.
    // int-phase control: (kap_enc in [0, a), c in [-W, W], i in [0, bpos_n));
    // frac-phase control: g_enc in [0, a) meaning borrow -g_enc.
    size_t CI = (size_t)a * (2 * W + 1) * bpos_n;
    size_t CF = (size_t)a;
    size_t D = x.dim;
    size_t dim = (CI + CF) * D;
    auto int_idx = [&](long long kap_enc, long long c, size_t i) {
        return ((size_t)kap_enc * (2 * W + 1) + (size_t)(c + W)) * bpos_n + i;
    };
    auto frac_idx = [&](long long g_enc) { return CI + (size_t)g_enc; };

    LinRep r;
    r.field = x.field;
    r.dim = dim;
    r.pads_ok = true;
    r.start.assign(dim, x.field->zero());
    for (long long ke = 0; ke < a; ++ke) {
        size_t blk = int_idx(ke, -ke, 0);
        for (size_t j = 0; j < D; ++j) r.start[blk * D + j] = r.start[blk * D + j] + x.start[j];
    }
    auto place_block = [&](FpMat& m, size_t bi, size_t bj, const FpMat& sub, int add_mode) {
        for (size_t i = 0; i < D; ++i)
            for (size_t j = 0; j < D; ++j) {
                if (!sub.at(i, j)) continue;
                auto& cell = m.at(bi * D + i, bj * D + j);
                cell = add_mode ? (uint8_t)((cell + sub.at(i, j)) % p) : sub.at(i, j);
            }
    };
    for (int d = 0; d < p; ++d) {
        FpMat im(dim, dim);
        // int phase: deterministic upward step
        for (long long ke = 0; ke < a; ++ke)
            for (long long c = -W; c <= W; ++c)
                for (size_t i = 0; i < bpos_n; ++i) {
                    int xdig;
                    long long c2;
                    if (!dm.int_step(c, i, d, xdig, c2)) continue;
                    size_t ni = std::min(i + 1, bpos_n - 1);
                    place_block(im, int_idx(ke, c, i), int_idx(ke, c2, ni),
                                x.int_maps[xdig], 0);
                }
        // frac phase: downward, guess the borrow below
        for (long long ge = 0; ge < a; ++ge)
            for (long long ce = 0; ce < a; ++ce) {
                long long g = -ge, cb = -ce;
                long long num = cb + d;
                int xdig = (int)((dm.ainv * (((num % p) + p) % p)) % p);
                if (num - a * xdig != p * g) continue;
                place_block(im, frac_idx(ge), frac_idx(ce), x.frac_maps[xdig], 1);
            }
        // no mixing between phases on plain digits
        r.int_maps.push_back(im);
        r.frac_maps.push_back(im);
    }
    // dot: int state must close its top; enter fraction phase with borrow kap
    {
        FpMat dmapt(dim, dim);
        for (long long ke = 0; ke < a; ++ke)
            for (long long c = -W; c <= W; ++c)
                for (size_t i = 0; i < bpos_n; ++i) {
                    if (!dm.top_ok(c, i)) continue;
                    place_block(dmapt, int_idx(ke, c, i), frac_idx(ke), x.dot_map, 1);
                }
        r.dot_map = dmapt;
    }
    // deep end: carry below the deepest fraction digit must vanish
    r.out.assign(dim, 0);
    {
        size_t blk = frac_idx(0);
        for (size_t j = 0; j < D; ++j) r.out[blk * D + j] = x.out[j];
    }
    return r;
}

LinRep linrep_shift_down(const LinRep& x, int k) {
    if (k < 1) return x;
    if (!x.pads_ok)
        throw std::invalid_argument("linrep_shift_down: input representation is not padding-stable");
    LinRep cur = x;
    for (int step = 0; step < k; ++step) {
        int p = cur.p();
        size_t D = cur.dim;
        // control: 0=await first int digit, 1+d = stored digit d, last = post-dot
        size_t C = (size_t)p + 2;
        size_t post = C - 1;
        size_t dim = C * D;
        LinRep r;
        r.field = cur.field;
        r.dim = dim;
        r.pads_ok = true;
        r.start.assign(dim, cur.field->zero());
        for (size_t j = 0; j < D; ++j) r.start[0 * D + j] = cur.start[j];
        auto place = [&](FpMat& m, size_t bi, size_t bj, const FpMat& sub) {
            for (size_t i = 0; i < D; ++i)
                for (size_t j = 0; j < D; ++j)
                    if (sub.at(i, j))
                        m.at(bi * D + i, bj * D + j) =
                            (uint8_t)((m.at(bi * D + i, bj * D + j) + sub.at(i, j)) % p);
        };
        FpMat eye = FpMat::identity(D);
        for (int d = 0; d < p; ++d) {
            FpMat im(dim, dim);
            // first int digit is remembered, not forwarded
            place(im, 0, 1 + (size_t)d, eye);
            // later int digits feed the old integer maps
            for (int s = 0; s < p; ++s) place(im, 1 + (size_t)s, 1 + (size_t)s, cur.int_maps[d]);
            FpMat fm(dim, dim);
            place(fm, post, post, cur.frac_maps[d]);
            r.int_maps.push_back(im);
            r.frac_maps.push_back(fm);
        }
        FpMat dmap(dim, dim);
        for (int s = -1; s < p; ++s) {
            // replay: old dot, then the stored digit (0 when the int part was empty)
            int stored = s < 0 ? 0 : s;
            FpMat seq = fp_mul(cur.dot_map, cur.frac_maps[stored], p);
            place(dmap, s < 0 ? 0 : 1 + (size_t)s, post, seq);
        }
        r.dot_map = dmap;
        r.out.assign(dim, 0);
        for (size_t j = 0; j < D; ++j) r.out[post * D + j] = cur.out[j];
        cur = std::move(r);
    }
    return cur;
}

LinRep linrep_mul(const LinRep& x, const LinRep& y, size_t cap) {
    if (!x.field->same(*y.field)) throw std::invalid_argument("linrep_mul: field mismatch");
    if (!x.pads_ok || !y.pads_ok)
        throw std::invalid_argument("linrep_mul: inputs must be padding-stable");
    int p = x.p();
    const FqFieldPtr& f = x.field;
    size_t Dx = x.dim, Dy = y.dim, Dxy = Dx * Dy;
    // control: int phase (kappa, c) in {0,1}^2; frac phase gamma in {0,1}
    size_t CI = 4, CF = 2;
    size_t dim = (CI + CF) * Dxy;
    if (dim > cap) throw ResourceError("linrep_mul: state space exceeds cap");
    auto int_idx = [&](int kappa, int c) { return (size_t)(kappa * 2 + c); };
    auto frac_idx = [&](int g) { return CI + (size_t)g; };
    LinRep r;
    r.field = f;
    r.dim = dim;
    r.pads_ok = true;
    r.start.assign(dim, f->zero());
    for (int kappa = 0; kappa < 2; ++kappa) {
        size_t blk = int_idx(kappa, kappa);
        for (size_t i = 0; i < Dx; ++i)
            for (size_t j = 0; j < Dy; ++j)
                r.start[(blk * Dx + i) * Dy + j] = x.start[i] * y.start[j];
    }
    auto place = [&](FpMat& m, size_t bi, size_t bj, const FpMat& mx, const FpMat& my) {
        for (size_t i = 0; i < Dx; ++i)
            for (size_t k = 0; k < Dx; ++k) {
                if (!mx.at(i, k)) continue;
                for (size_t j = 0; j < Dy; ++j)
                    for (size_t l = 0; l < Dy; ++l) {
                        if (!my.at(j, l)) continue;
                        auto& cell = m.at((bi * Dx + i) * Dy + j, (bj * Dx + k) * Dy + l);
                        cell = (uint8_t)((cell + mx.at(i, k) * my.at(j, l)) % p);
                    }
            }
    };
    for (int d = 0; d < p; ++d) {
        FpMat im(dim, dim);
        for (int kappa = 0; kappa < 2; ++kappa)
            for (int c = 0; c < 2; ++c)
                for (int dx = 0; dx < p; ++dx)
                    for (int dy = 0; dy < p; ++dy) {
                        int s = dx + dy + c;
                        if (s % p != d) continue;
                        int c2 = s / p;
                        if (c2 > 1) continue;
                        place(im, int_idx(kappa, c), int_idx(kappa, c2), x.int_maps[dx],
                              y.int_maps[dy]);
                    }
        FpMat fm(dim, dim);
        for (int g = 0; g < 2; ++g)
            for (int cb = 0; cb < 2; ++cb)
                for (int dx = 0; dx < p; ++dx)
                    for (int dy = 0; dy < p; ++dy) {
                        if (dx + dy + cb != d + p * g) continue;
                        place(fm, frac_idx(g), frac_idx(cb), x.frac_maps[dx], y.frac_maps[dy]);
                    }
        r.int_maps.push_back(im);
        r.frac_maps.push_back(fm);
    }
    {
        FpMat dmap(dim, dim);
        for (int kappa = 0; kappa < 2; ++kappa)
            place(dmap, int_idx(kappa, 0), frac_idx(kappa), x.dot_map, y.dot_map);
        r.dot_map = dmap;
    }
    // Deep-tail aggregate: the factor supports may extend below the depth of
    // k while summing (with carries) to trailing zeros of k. Each pair (i, j)
    // is counted once, at its own depth, by requiring the deepest guessed
    // digit pair to be nonzero.
    {
        std::vector<uint8_t> v0(Dxy, 0);
        for (size_t i = 0; i < Dx; ++i)
            for (size_t j = 0; j < Dy; ++j) v0[i * Dy + j] = (uint8_t)((x.out[i] * y.out[j]) % p);
        auto apply_pair = [&](int dx, int dy, const std::vector<uint8_t>& vec,
                              std::vector<uint8_t>& acc) {
            for (size_t i = 0; i < Dx; ++i)
                for (size_t k = 0; k < Dx; ++k) {
                    if (!x.frac_maps[dx].at(i, k)) continue;
                    for (size_t j = 0; j < Dy; ++j)
                        for (size_t l = 0; l < Dy; ++l) {
                            if (!y.frac_maps[dy].at(j, l)) continue;
                            acc[i * Dy + j] = (uint8_t)((acc[i * Dy + j] +
                                                         x.frac_maps[dx].at(i, k) *
                                                             y.frac_maps[dy].at(j, l) *
                                                             vec[k * Dy + l]) % p);
                        }
                }
        };
        // B[gam] = sum over nonzero deepest pairs with boundary carry 0
        std::vector<std::vector<uint8_t>> base(2, std::vector<uint8_t>(Dxy, 0));
        for (int gam = 0; gam < 2; ++gam)
            for (int dx = 0; dx < p; ++dx)
                for (int dy = 0; dy < p; ++dy) {
                    if (dx == 0 && dy == 0) continue;
                    if (dx + dy != p * gam) continue;
                    apply_pair(dx, dy, v0, base[gam]);
                }
        // N <- B + P N until the partial sums cycle
        std::vector<std::vector<uint8_t>> n(2, std::vector<uint8_t>(Dxy, 0));
        auto key = [&](const std::vector<std::vector<uint8_t>>& v) {
            std::vector<uint8_t> k = v[0];
            k.insert(k.end(), v[1].begin(), v[1].end());
            return k;
        };
        std::set<std::vector<uint8_t>> seen;
        seen.insert(key(n));
        for (size_t iter = 0; iter < cap; ++iter) {
            std::vector<std::vector<uint8_t>> nxt = base;
            for (int gam = 0; gam < 2; ++gam)
                for (int cb = 0; cb < 2; ++cb)
                    for (int dx = 0; dx < p; ++dx)
                        for (int dy = 0; dy < p; ++dy) {
                            if (dx + dy + cb != p * gam) continue;
                            apply_pair(dx, dy, n[cb], nxt[gam]);
                        }
            bool repeated = !seen.insert(key(nxt)).second;
            n = std::move(nxt);
            if (repeated) break;
        }
        r.out.assign(dim, 0);
        for (int gam = 0; gam < 2; ++gam) {
            size_t blk = frac_idx(gam);
            for (size_t i = 0; i < Dxy; ++i)
                r.out[blk * Dxy + i] = (uint8_t)((((gam == 0 ? v0[i] : 0) + n[gam][i])) % p);
        }
    }
    return r;
}

Dfao dfao_from_linrep(const LinRep& x, std::vector<FqElement>& out_values, size_t cap) {
    int p = x.p();
    const FqFieldPtr& f = x.field;
    // state: phase 0 = before mark, 1 = after, 2 = dead; plus the row vector
    struct Key {
        int phase;
        std::vector<long long> row;
        bool operator<(const Key& o) const {
            if (phase != o.phase) return phase < o.phase;
            return row < o.row;
        }
    };
    auto rowkey = [&](const std::vector<FqElement>& row) {
        std::vector<long long> k;
        k.reserve(row.size());
        for (auto& v : row) k.push_back(v.index());
        return k;
    };
    std::map<Key, int> ids;
    std::vector<std::pair<int, std::vector<FqElement>>> pool;
    auto get = [&](int phase, const std::vector<FqElement>& row) {
        Key k{phase, rowkey(row)};
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        if (pool.size() >= cap) throw ResourceError("dfao_from_linrep: state cap exceeded");
        int id = (int)pool.size();
        ids[k] = id;
        pool.push_back({phase, row});
        return id;
    };
    std::map<long long, int> outid;
    std::vector<int> outs;
    auto out_of = [&](const FqElement& v) {
        auto it = outid.find(v.index());
        if (it != outid.end()) return it->second;
        int id = (int)out_values.size();
        out_values.push_back(v);
        outid[v.index()] = id;
        return id;
    };
    Dfao m;
    m.alphabet = p + 1;
    m.q0 = get(0, x.start);
    for (size_t i = 0; i < pool.size(); ++i) {
        auto [phase, row] = pool[i];
        m.delta.push_back(std::vector<int>(p + 1, 0));
        FqElement val = f->zero();
        if (phase == 0) val = row_dot_out(row_times_mat(row, x.dot_map, f), x.out, f);
        else if (phase == 1) val = row_dot_out(row, x.out, f);
        m.outputs.push_back(out_of(val));
        for (int a = 0; a <= p; ++a) {
            if (phase == 2) { m.delta[i][a] = (int)i; continue; }
            if (a == p) {
                if (phase == 0)
                    m.delta[i][a] = get(1, row_times_mat(row, x.dot_map, f));
                else {
                    std::vector<FqElement> zrow(x.dim, f->zero());
                    m.delta[i][a] = get(2, zrow);
                }
            } else {
                const FpMat& mm = phase == 0 ? x.int_maps[a] : x.frac_maps[a];
                m.delta[i][a] = get(phase, row_times_mat(row, mm, f));
            }
        }
    }
    return m;
}

Dfao dfao_computation_to_display(const Dfao& m, int p) {
    for (int o : m.outputs)
        if (o != 0 && o != 1)
            throw std::invalid_argument("dfao_computation_to_display: boolean outputs required");
    size_t n = m.states();
    // NFA over display words: integer phase states (y, qstar) meaning the
    // backward walk sits at y and entered at qstar; fraction phase = plain
    // forward states of m shifted by n*n.
    auto enc_int = [&](size_t y, size_t qs) { return (int)(y * n + qs); };
    auto enc_frac = [&](size_t q) { return (int)(n * n + q); };
    std::vector<std::vector<std::set<int>>> edges(n * n + n,
                                                  std::vector<std::set<int>>(p + 1));
    for (size_t y = 0; y < n; ++y)
        for (size_t qs = 0; qs < n; ++qs) {
            for (int a = 0; a < p; ++a)
                for (size_t y2 = 0; y2 < n; ++y2)
                    if ((size_t)m.delta[y2][a] == y) edges[enc_int(y, qs)][a].insert(enc_int(y2, qs));
            if (y == (size_t)m.q0)
                edges[enc_int(y, qs)][p].insert(enc_frac((size_t)m.delta[qs][p]));
        }
    for (size_t q = 0; q < n; ++q)
        for (int a = 0; a < p; ++a) edges[enc_frac(q)][a].insert(enc_frac((size_t)m.delta[q][a]));
    std::set<int> starts;
    for (size_t qs = 0; qs < n; ++qs) starts.insert(enc_int(qs, qs));
    const auto& outs = m.outputs;
    size_t base = n * n;
    std::map<std::set<int>, int> ids;
    std::vector<std::set<int>> pool;
    auto get = [&](const std::set<int>& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        if (pool.size() >= kSubsetCap)
            throw ResourceError("dfao_computation_to_display: subset cap exceeded");
        int id = (int)pool.size();
        ids[s] = id;
        pool.push_back(s);
        return id;
    };
    Dfao out;
    out.alphabet = p + 1;
    out.q0 = get(starts);
    for (size_t i = 0; i < pool.size(); ++i) {
        std::set<int> cur = pool[i];
        out.delta.push_back(std::vector<int>(p + 1, 0));
        bool acc = false;
        for (int s : cur)
            if ((size_t)s >= base && outs[(size_t)s - base]) acc = true;
        out.outputs.push_back(acc ? 1 : 0);
        for (int a = 0; a <= p; ++a) {
            std::set<int> nxt;
            for (int s : cur)
                for (int t : edges[s][a]) nxt.insert(t);
            out.delta[i][a] = get(nxt);
        }
    }
    return minimize(out);
}

} // namespace pseries

#include "pseries/dfao.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pseries {

int Dfao::step(int q, int a) const {
    if (a < 0 || a >= alphabet) throw std::invalid_argument("Dfao: symbol outside alphabet");
    return delta[q][a];
}

int Dfao::run_state(const std::vector<int>& symbols) const {
    int q = q0;
    for (int a : symbols) q = step(q, a);
    return q;
}

int Dfao::run(const std::vector<int>& symbols) const { return outputs[run_state(symbols)]; }

int Dfao::run_word(const Word& w, int p) const {
    std::vector<int> syms;
    for (size_t i = 0; i <= w.digits.size(); ++i) {
        if (w.mark && *w.mark == i) syms.push_back(p);
        if (i == w.digits.size()) break;
        syms.push_back(w.digits[i]);
    }
    return run(syms);
}

namespace {

std::vector<int> reachable_states(const Dfao& m) {
    std::vector<int> order;
    std::vector<bool> seen(m.states(), false);
    std::queue<int> bfs;
    bfs.push(m.q0);
    seen[m.q0] = true;
    while (!bfs.empty()) {
        int q = bfs.front();
        bfs.pop();
        order.push_back(q);
        for (int a = 0; a < m.alphabet; ++a) {
            int t = m.delta[q][a];
            if (!seen[t]) { seen[t] = true; bfs.push(t); }
        }
    }
    return order;
}

} // namespace

Dfao minimize(const Dfao& m) {
    // restrict to reachable states
    auto reach = reachable_states(m);
    std::vector<int> idx(m.states(), -1);
    for (size_t i = 0; i < reach.size(); ++i) idx[reach[i]] = (int)i;
    size_t n = reach.size();

    // Moore partition refinement, initial partition by output
    std::vector<int> cls(n);
    {
        std::map<int, int> by_out;
        for (size_t i = 0; i < n; ++i) {
            int o = m.outputs[reach[i]];
            auto it = by_out.find(o);
            if (it == by_out.end()) { int c = (int)by_out.size(); by_out[o] = c; cls[i] = c; }
            else cls[i] = it->second;
        }
    }
    for (;;) {
        std::map<std::vector<int>, int> sig_to_new;
        std::vector<int> next(n);
        for (size_t i = 0; i < n; ++i) {
            std::vector<int> sig;
            sig.reserve(m.alphabet + 1);
            sig.push_back(cls[i]);
            for (int a = 0; a < m.alphabet; ++a) sig.push_back(cls[idx[m.delta[reach[i]][a]]]);
            auto it = sig_to_new.find(sig);
            if (it == sig_to_new.end()) { int c = (int)sig_to_new.size(); sig_to_new[sig] = c; next[i] = c; }
            else next[i] = it->second;
        }
        bool changed = false;
        for (size_t i = 0; i < n; ++i) if (next[i] != cls[i]) { changed = true; break; }
        cls = std::move(next);
        if (!changed) break;
    }

    // BFS canonical numbering of classes, digit-ordered edges
    int nclasses = *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<int> class_rep(nclasses, -1);
    for (size_t i = 0; i < n; ++i) if (class_rep[cls[i]] < 0) class_rep[cls[i]] = (int)i;
    std::vector<int> renum(nclasses, -1);
    std::vector<int> order;
    std::queue<int> bfs;
    int c0 = cls[idx[m.q0]];
    renum[c0] = 0;
    order.push_back(c0);
    bfs.push(c0);
    while (!bfs.empty()) {
        int c = bfs.front();
        bfs.pop();
        int rep = class_rep[c];
        for (int a = 0; a < m.alphabet; ++a) {
            int tc = cls[idx[m.delta[reach[rep]][a]]];
            if (renum[tc] < 0) {
                renum[tc] = (int)order.size();
                order.push_back(tc);
                bfs.push(tc);
            }
        }
    }
    Dfao out;
    out.alphabet = m.alphabet;
    out.q0 = 0;
    out.delta.assign(order.size(), std::vector<int>(m.alphabet, 0));
    out.outputs.assign(order.size(), 0);
    for (size_t i = 0; i < order.size(); ++i) {
        int rep = class_rep[order[i]];
        out.outputs[i] = m.outputs[reach[rep]];
        for (int a = 0; a < m.alphabet; ++a)
            out.delta[i][a] = renum[cls[idx[m.delta[reach[rep]][a]]]];
    }
    return out;
}

Dfao product(const Dfao& a, const Dfao& b, const std::function<int(int, int)>& combine) {
    if (a.alphabet != b.alphabet) throw std::invalid_argument("product: alphabet mismatch");
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> pool;
    auto get = [&](int qa, int qb) {
        auto key = std::make_pair(qa, qb);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = (int)pool.size();
        ids[key] = id;
        pool.push_back(key);
        return id;
    };
    Dfao out;
    out.alphabet = a.alphabet;
    out.q0 = get(a.q0, b.q0);
    for (size_t i = 0; i < pool.size(); ++i) {
        auto [qa, qb] = pool[i];
        out.delta.push_back(std::vector<int>(out.alphabet, 0));
        out.outputs.push_back(combine(a.outputs[qa], b.outputs[qb]));
        for (int s = 0; s < out.alphabet; ++s)
            out.delta[i][s] = get(a.delta[qa][s], b.delta[qb][s]);
    }
    return out;
}

Dfao complement(const Dfao& m) {
    Dfao out = m;
    for (auto& o : out.outputs) o = o ? 0 : 1;
    return out;
}

bool is_empty_language(const Dfao& m) {
    for (int q : reachable_states(m))
        if (m.outputs[q]) return false;
    return true;
}

bool same_language(const Dfao& a, const Dfao& b) {
    Dfao diff = product(a, b, [](int x, int y) { return (x != 0) != (y != 0) ? 1 : 0; });
    return is_empty_language(diff);
}

namespace {

// subset construction over an NFA given by (starts, edges[q][a] = set, accept)
Dfao determinize(int alphabet, const std::set<int>& starts,
                 const std::vector<std::vector<std::set<int>>>& edges,
                 const std::function<bool(const std::set<int>&)>& accepting) {
    std::map<std::set<int>, int> ids;
    std::vector<std::set<int>> pool;
    auto get = [&](const std::set<int>& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        if (pool.size() >= kSubsetCap) throw ResourceError("subset construction exceeded state cap");
        int id = (int)pool.size();
        ids[s] = id;
        pool.push_back(s);
        return id;
    };
    Dfao out;
    out.alphabet = alphabet;
    out.q0 = get(starts);
    for (size_t i = 0; i < pool.size(); ++i) {
        std::set<int> cur = pool[i];
        out.delta.push_back(std::vector<int>(alphabet, 0));
        out.outputs.push_back(accepting(cur) ? 1 : 0);
        for (int a = 0; a < alphabet; ++a) {
            std::set<int> nxt;
            for (int q : cur)
                for (int t : edges[q][a]) nxt.insert(t);
            out.delta[i][a] = get(nxt);
        }
    }
    return out;
}

} // namespace

Dfao reverse_language(const Dfao& m) {
    for (int o : m.outputs)
        if (o != 0 && o != 1) throw std::invalid_argument("reverse_language: boolean output required");
    std::vector<std::vector<std::set<int>>> redges(m.states(),
                                                   std::vector<std::set<int>>(m.alphabet));
    for (size_t q = 0; q < m.states(); ++q)
        for (int a = 0; a < m.alphabet; ++a) redges[m.delta[q][a]][a].insert((int)q);
    std::set<int> starts;
    for (size_t q = 0; q < m.states(); ++q)
        if (m.outputs[q]) starts.insert((int)q);
    int q0 = m.q0;
    Dfao det = determinize(m.alphabet, starts, redges,
                           [q0](const std::set<int>& s) { return s.count(q0) > 0; });
    return minimize(det);
}

Dfao project_forall(const Dfao& m, int sigma, int sigma_prime) {
    if (m.alphabet != sigma * sigma_prime)
        throw std::invalid_argument("project_forall: alphabet is not the requested product");
    // complement, image under the projection transducer, complement
    Dfao comp = complement(m);
    std::vector<std::vector<std::set<int>>> edges(comp.states(), std::vector<std::set<int>>(sigma));
    for (size_t q = 0; q < comp.states(); ++q)
        for (int a = 0; a < sigma; ++a)
            for (int b = 0; b < sigma_prime; ++b)
                edges[q][a].insert(comp.delta[q][a + sigma * b]);
    std::set<int> starts{comp.q0};
    const auto& outs = comp.outputs;
    Dfao image = determinize(sigma, starts, edges, [&outs](const std::set<int>& s) {
        for (int q : s)
            if (outs[q]) return true;
        return false;
    });
    return minimize(complement(image));
}

Dfao canonical_lp0_dfao(int p) {
    // states: 0 start (accept: empty word = 0), 1 in-number (accept), 2 dead
    Dfao m;
    m.alphabet = p;
    m.q0 = 0;
    m.delta = {std::vector<int>(p, 1), std::vector<int>(p, 1), std::vector<int>(p, 2)};
    m.delta[0][0] = 2;
    m.outputs = {1, 1, 0};
    return m;
}

Dfao canonical_lp_dfao(int p) {
    // symbols 0..p-1 digits, p = mark
    // states: 0 start, 1 int-started, 2 post-mark clean (accept),
    //         3 post-mark pending-zero, 4 dead
    Dfao m;
    m.alphabet = p + 1;
    m.q0 = 0;
    m.delta.assign(5, std::vector<int>(p + 1, 4));
    m.outputs = {0, 0, 1, 0, 0};
    for (int d = 1; d < p; ++d) m.delta[0][d] = 1;
    m.delta[0][0] = 4;
    m.delta[0][p] = 2;
    for (int d = 0; d < p; ++d) m.delta[1][d] = 1;
    m.delta[1][p] = 2;
    m.delta[2][0] = 3;
    for (int d = 1; d < p; ++d) m.delta[2][d] = 2;
    m.delta[3][0] = 3;
    for (int d = 1; d < p; ++d) m.delta[3][d] = 2;
    return m;
}

namespace {

struct PostMarkGraph {
    // states of the original automaton that sit strictly after the mark,
    // restricted to live (reachable & co-accessible) ones
    std::vector<int> live;                         // original ids
    std::vector<int> pos;                          // original id -> index or -1
    std::vector<std::vector<std::pair<int, int>>> edges; // index -> (digit, index)
};

PostMarkGraph post_mark_live_graph(const Dfao& m, int p) {
    // reachable via some path containing the mark
    std::vector<bool> reach_pre(m.states(), false), reach_post(m.states(), false);
    std::queue<std::pair<int, bool>> bfs;
    bfs.push({m.q0, false});
    reach_pre[m.q0] = true;
    while (!bfs.empty()) {
        auto [q, post] = bfs.front();
        bfs.pop();
        for (int a = 0; a <= p; ++a) {
            int t = m.delta[q][a];
            bool tpost = post || a == p;
            auto& mark = tpost ? reach_post : reach_pre;
            if (!mark[t]) {
                mark[t] = true;
                bfs.push({t, tpost});
            }
        }
    }
    // co-accessible: can reach an accepting state using digit edges only
    // (no second mark on a valid L_p continuation)
    std::vector<bool> co(m.states(), false);
    std::queue<int> rq;
    for (size_t q = 0; q < m.states(); ++q)
        if (m.outputs[q]) { co[q] = true; rq.push((int)q); }
    std::vector<std::vector<int>> rev_digit(m.states());
    for (size_t q = 0; q < m.states(); ++q)
        for (int a = 0; a < p; ++a) rev_digit[m.delta[q][a]].push_back((int)q);
    while (!rq.empty()) {
        int q = rq.front();
        rq.pop();
        for (int s : rev_digit[q])
            if (!co[s]) { co[s] = true; rq.push(s); }
    }
    PostMarkGraph g;
    g.pos.assign(m.states(), -1);
    for (size_t q = 0; q < m.states(); ++q)
        if (reach_post[q] && co[q]) {
            g.pos[q] = (int)g.live.size();
            g.live.push_back((int)q);
        }
    g.edges.resize(g.live.size());
    for (size_t i = 0; i < g.live.size(); ++i)
        for (int a = 0; a < p; ++a) {
            int t = m.delta[g.live[i]][a];
            if (g.pos[t] >= 0) g.edges[i].push_back({a, g.pos[t]});
        }
    return g;
}

// value of the infinite greedy (max-digit) path from node i; exact rational
Rat greedy_sup_tail(const PostMarkGraph& g, int start, int p) {
    std::vector<int> path{start};
    std::vector<int> digits;
    std::map<int, size_t> seen{{start, 0}};
    int cur = start;
    for (;;) {
        int best_d = -1, best_t = -1;
        for (auto [d, t] : g.edges[cur])
            if (d > best_d) { best_d = d; best_t = t; }
        if (best_d < 0) return Rat(0); // no live continuation: only the empty completion
        digits.push_back(best_d);
        cur = best_t;
        auto it = seen.find(cur);
        if (it != seen.end()) {
            size_t cyc_start = it->second;
            // value = sum_{j < cyc_start} d_j p^-(j+1) + p^-cyc_start * lambda
            // lambda = cycle value / (1 - p^-g)
            Rat head(0), place(1, p);
            for (size_t j = 0; j < cyc_start; ++j) {
                head += Rat(digits[j]) * place;
                place = place * Rat(1, p);
            }
            Rat cyc(0), cplace(1, p);
            size_t glen = digits.size() - cyc_start;
            for (size_t j = cyc_start; j < digits.size(); ++j) {
                cyc += Rat(digits[j]) * cplace;
                cplace = cplace * Rat(1, p);
            }
            Rat lambda = cyc / (Rat(1) - Rat(1, ipow(p, (int)glen)));
            return head + Rat(1, ipow(p, (int)cyc_start)) * lambda;
        }
        seen[cur] = path.size();
        path.push_back(cur);
    }
}

// Tarjan SCC on the live graph
std::vector<std::vector<int>> sccs_of(const PostMarkGraph& g) {
    int n = (int)g.live.size();
    std::vector<int> low(n, -1), disc(n, -1), stk;
    std::vector<bool> on(n, false);
    std::vector<std::vector<int>> out;
    int timer = 0;
    // iterative tarjan
    for (int s = 0; s < n; ++s) {
        if (disc[s] >= 0) continue;
        std::vector<std::pair<int, size_t>> call{{s, 0}};
        while (!call.empty()) {
            auto& [v, ei] = call.back();
            if (ei == 0) {
                disc[v] = low[v] = timer++;
                stk.push_back(v);
                on[v] = true;
            }
            bool descended = false;
            while (ei < g.edges[v].size()) {
                int w = g.edges[v][ei].second;
                ++ei;
                if (disc[w] < 0) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on[w]) low[v] = std::min(low[v], disc[w]);
            }
            if (descended) continue;
            if (low[v] == disc[v]) {
                std::vector<int> comp;
                for (;;) {
                    int w = stk.back();
                    stk.pop_back();
                    on[w] = false;
                    comp.push_back(w);
                    if (w == v) break;
                }
                out.push_back(std::move(comp));
            }
            int vv = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[vv]);
        }
    }
    return out;
}

// enumerate simple cycles inside one SCC, capped; each cycle is the digit word
// starting from some node
struct Cycle {
    int node;               // index in live graph where the cycle starts
    std::vector<int> digits;
};

void enumerate_cycles(const PostMarkGraph& g, const std::vector<int>& comp, size_t cap,
                      std::vector<Cycle>& out, bool& truncated) {
    std::set<int> inside(comp.begin(), comp.end());
    // Johnson-style bounded DFS from each root; cycles through the root only
    for (size_t ri = 0; ri < comp.size(); ++ri) {
        int root = comp[ri];
        std::vector<std::pair<int, size_t>> stack{{root, 0}};
        std::vector<int> digit_path;
        std::set<int> onpath{root};
        while (!stack.empty()) {
            auto& [v, ei] = stack.back();
            if (ei < g.edges[v].size()) {
                auto [d, t] = g.edges[v][ei];
                ++ei;
                if (!inside.count(t)) continue;
                // avoid cycles through nodes earlier than root (canonical start)
                bool earlier = false;
                for (size_t k = 0; k < ri; ++k)
                    if (comp[k] == t) { earlier = true; break; }
                if (earlier) continue;
                if (t == root) {
                    Cycle c;
                    c.node = root;
                    c.digits = digit_path;
                    c.digits.push_back(d);
                    out.push_back(std::move(c));
                    if (out.size() >= cap) { truncated = true; return; }
                    continue;
                }
                if (onpath.count(t)) continue;
                onpath.insert(t);
                digit_path.push_back(d);
                stack.push_back({t, 0});
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    onpath.erase(v);
                    digit_path.pop_back();
                }
            }
        }
    }
}

Rat cycle_limit_value(const std::vector<int>& digits, int p) {
    Rat v(0), place(1, p);
    for (int d : digits) {
        v += Rat(d) * place;
        place = place * Rat(1, p);
    }
    return v / (Rat(1) - Rat(1, ipow(p, (int)digits.size())));
}

} // namespace

WellOrderedResult well_ordered_check(const Dfao& m, int p) {
    if (m.alphabet != p + 1)
        throw std::invalid_argument("well_ordered_check: expected alphabet Sigma_p plus mark");
    {
        Dfao lp = canonical_lp_dfao(p);
        Dfao outside = product(m, lp, [](int x, int y) { return (x != 0) && !(y != 0) ? 1 : 0; });
        if (!is_empty_language(outside))
            throw std::invalid_argument("well_ordered_check: L(M) not contained in L_p");
    }
    PostMarkGraph g = post_mark_live_graph(m, p);
    auto comps = sccs_of(g);

    bool multi_cycle = false;
    bool cycles_truncated = false;
    for (auto& comp : comps) {
        // count internal edges
        size_t internal = 0;
        std::set<int> inside(comp.begin(), comp.end());
        bool has_cycle = false;
        for (int v : comp)
            for (auto [d, t] : g.edges[v])
                if (inside.count(t)) {
                    ++internal;
                    if (comp.size() > 1 || t == v) has_cycle = true;
                }
        if (!has_cycle) continue;
        bool simple = internal == comp.size();
        if (!simple) multi_cycle = true;
        std::vector<Cycle> cycles;
        bool trunc = false;
        enumerate_cycles(g, comp, 256, cycles, trunc);
        cycles_truncated = cycles_truncated || trunc;
        for (auto& c : cycles) {
            Rat lambda = cycle_limit_value(c.digits, p);
            Rat sup = greedy_sup_tail(g, c.node, p);
            if (sup > lambda) {
                std::ostringstream os;
                os << "pumping witness: cycle value limit " << lambda.str()
                   << " approached from above (sup of continuations " << sup.str() << ")";
                return {WellOrderedVerdict::CertifiedNot, os.str()};
            }
        }
    }
    if (!multi_cycle && !cycles_truncated)
        return {WellOrderedVerdict::CertifiedWellOrdered,
                "every live post-mark state lies on at most one simple cycle"};
    return {WellOrderedVerdict::Inconclusive,
            "multiple cycles share a strongly connected component; no witness found"};
}

std::string Dfao::json() const {
    std::ostringstream os;
    os << "{\"alphabet\":" << alphabet << ",\"delta\":[";
    for (size_t q = 0; q < states(); ++q) {
        if (q) os << ",";
        os << "[";
        for (int a = 0; a < alphabet; ++a) os << (a ? "," : "") << delta[q][a];
        os << "]";
    }
    os << "],\"outputs\":[";
    for (size_t q = 0; q < states(); ++q) os << (q ? "," : "") << outputs[q];
    os << "],\"q0\":" << q0 << ",\"states\":" << states() << "}";
    return os.str();
}

std::string Dfao::dot(const std::function<std::string(int)>& symbol_name) const {
    std::ostringstream os;
    os << "digraph dfao {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  init [shape=point];\n  init -> q" << q0 << ";\n";
    for (size_t q = 0; q < states(); ++q)
        os << "  q" << q << " [label=\"" << q << "/" << outputs[q] << "\"];\n";
    for (size_t q = 0; q < states(); ++q) {
        // group parallel edges
        std::map<int, std::vector<int>> by_target;
        for (int a = 0; a < alphabet; ++a) by_target[delta[q][a]].push_back(a);
        for (auto& [t, syms] : by_target) {
            os << "  q" << q << " -> q" << t << " [label=\"";
            for (size_t i = 0; i < syms.size(); ++i) {
                if (i) os << ",";
                if (symbol_name) os << symbol_name(syms[i]);
                else os << syms[i];
            }
            os << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace pseries

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pseries/rat.hpp"
#include "pseries/words.hpp"

namespace pseries {

// Deterministic finite automaton with output. Symbols are dense ints
// 0..alphabet-1; for automata over Sigma_p u {.} the mark is the symbol p.
// Outputs are dense ints whose meaning (bool, F_q index, part label) belongs
// to the caller.
struct Dfao {
    int alphabet = 0;
    int q0 = 0;
    std::vector<std::vector<int>> delta; // delta[q][a]
    std::vector<int> outputs;            // tau[q]

    size_t states() const { return delta.size(); }

    int step(int q, int a) const;
    int run_state(const std::vector<int>& symbols) const;
    int run(const std::vector<int>& symbols) const; // f_M
    // For word automata over Sigma_p u {.}: mark encoded as symbol p.
    int run_word(const Word& w, int p) const;

    std::string json() const;
    std::string dot(const std::function<std::string(int)>& symbol_name = nullptr) const;
};

// Subset-construction resource cap ("reversal may require as many as 2^n states").
inline constexpr size_t kSubsetCap = size_t(1) << 20;

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical minimization: partition refinement on outputs, reachable states
// only, BFS numbering with digit-ordered edges. Idempotent; equal functions
// yield structurally equal automata.
Dfao minimize(const Dfao& m);

// combine(out1, out2) -> output of the product automaton.
Dfao product(const Dfao& a, const Dfao& b, const std::function<int(int, int)>& combine);

// Boolean helpers (outputs {0,1}).
Dfao complement(const Dfao& m);
bool is_empty_language(const Dfao& m);
bool same_language(const Dfao& a, const Dfao& b);

// Accepts exactly { rev(s) : s in L(m) }. Boolean outputs required.
Dfao reverse_language(const Dfao& m);

// m runs over the product alphabet sigma x sigma' (symbol = a + sigma*b).
// Returns the automaton of { s : every lift of s lies in L(m) }.
Dfao project_forall(const Dfao& m, int sigma, int sigma_prime);

// Membership automaton of canonical L_p words (display order, mark = symbol p).
Dfao canonical_lp_dfao(int p);
// Membership automaton of canonical L_p^0 words (no mark, alphabet p).
Dfao canonical_lp0_dfao(int p);

enum class WellOrderedVerdict { CertifiedWellOrdered, CertifiedNot, Inconclusive };

struct WellOrderedResult {
    WellOrderedVerdict verdict;
    std::string detail;
};

// Semi-decision for well-orderedness of ||L(m)||, m a boolean DFAO over
// Sigma_p u {.} with L(m) inside L_p (checked; throws otherwise).
WellOrderedResult well_ordered_check(const Dfao& m, int p);

} // namespace pseries

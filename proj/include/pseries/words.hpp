#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pseries/rat.hpp"

namespace pseries {

// A word over Sigma_p, optionally containing one radix mark. Digits are stored
// in display order: integer part most-significant first, then the mark, then
// fractional digits most-significant first.
struct Word {
    std::vector<int> digits;           // all digits, display order
    std::optional<size_t> mark;        // index in [0, digits.size()]: mark sits before digits[mark]

    bool has_mark() const { return mark.has_value(); }
    size_t int_len() const { return mark ? *mark : digits.size(); }
    size_t frac_len() const { return mark ? digits.size() - *mark : 0; }
    std::vector<int> int_part() const {
        return {digits.begin(), digits.begin() + (long)int_len()};
    }
    std::vector<int> frac_part() const {
        if (!mark) return {};
        return {digits.begin() + (long)*mark, digits.end()};
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.digits == b.digits && a.mark == b.mark;
    }

    std::string str() const;           // "10.1"; digits >= 10 appear as "[11]"
    static Word parse(const std::string& s, int p); // throws with position on malformed input
};

// L_p^0 side: canonical base-p words for nonnegative integers (no mark, no
// leading zero; zero is the empty word).
Word encode_int(long long m, int p);
long long decode_int(const Word& s, int p); // rejects leading zeros / marks

// (n, k) with value n/p^k, k minimal (k = 0 or p does not divide n).
struct PAdicNonneg {
    long long n = 0;
    int k = 0;
    Rat value(int p) const { return Rat(n, ipow(p, k)); }
    static PAdicNonneg from_rat(const Rat& r, int p); // throws if not p-power denominator or negative
};

// L_p side: canonical words "s1.s2" for Z[1/p]_{>=0}; integers get a trailing
// mark and no fractional digits.
Word encode_frac(const PAdicNonneg& r, int p);
PAdicNonneg decode_frac(const Word& s, int p); // rejects non-canonical words, reports position

Word reverse(const Word& s);

// Value of an arbitrary (possibly non-canonical) marked word.
Rat word_value(const Word& s, int p);

// Canonical-form test for L_p words: no leading zero before the mark, no
// trailing zero after it, exactly one mark.
bool is_canonical_lp(const Word& s, int p);

} // namespace pseries

#pragma once

#include "pseries/words.hpp"

namespace pseries {

// Finite-state machine computing x -> a*x + b on base-p expansions read
// least-significant-digit first (the reversal of display order). The state is
// the pending carry; it stays below a before the radix crossing and below
// a + b after it.
class AffineTransducer {
  public:
    AffineTransducer(int p, long long a, long long b);

    int p() const { return p_; }
    long long carry_bound() const { return a_ + b_; }

    // Input: rev(s) for a canonical s in L_p (fraction deepest-digit first,
    // then the mark, then integer least-significant first). Output in the
    // same orientation; display form is rev(output), canonicalized.
    Word apply_reversed(const Word& rev_word) const;

    // Convenience: canonical display word in, canonical display word out.
    Word apply(const Word& display_word) const;

  private:
    int p_;
    long long a_, b_;
};

} // namespace pseries

#include "pseries/transducer.hpp"

#include <stdexcept>

namespace pseries {

AffineTransducer::AffineTransducer(int p, long long a, long long b) : p_(p), a_(a), b_(b) {
    if (a < 1 || b < 0) throw std::invalid_argument("AffineTransducer: need a >= 1, b >= 0");
}

Word AffineTransducer::apply_reversed(const Word& rev_word) const {
    if (!rev_word.has_mark())
        throw std::invalid_argument("AffineTransducer: input must contain the radix mark");
    Word out;
    long long carry = 0;
    bool crossed = false;
    for (size_t i = 0; i <= rev_word.digits.size(); ++i) {
        if (rev_word.mark && *rev_word.mark == i) {
            // crossing the radix point: inject the +b term
            carry += b_;
            out.mark = out.digits.size();
            crossed = true;
        }
        if (i == rev_word.digits.size()) break;
        long long t = a_ * rev_word.digits[i] + carry;
        out.digits.push_back((int)(t % p_));
        carry = t / p_;
    }
    if (!crossed) { carry += b_; out.mark = out.digits.size(); }
    while (carry > 0) {
        out.digits.push_back((int)(carry % p_));
        carry /= p_;
    }
    return out;
}

Word AffineTransducer::apply(const Word& display_word) const {
    Word rev_out = apply_reversed(reverse(display_word));
    Word disp = reverse(rev_out);
    // canonicalize: strip leading integer zeros and trailing fractional zeros
    size_t il = disp.int_len();
    size_t lead = 0;
    while (lead < il && disp.digits[lead] == 0) ++lead;
    std::vector<int> digs(disp.digits.begin() + (long)lead, disp.digits.end());
    size_t new_mark = il - lead;
    while (digs.size() > new_mark && digs.back() == 0) digs.pop_back();
    Word w;
    w.digits = std::move(digs);
    w.mark = new_mark;
    return w;
}

} // namespace pseries

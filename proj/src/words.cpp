#include "pseries/words.hpp"

#include <sstream>
#include <stdexcept>

namespace pseries {

std::string Word::str() const {
    std::ostringstream os;
    for (size_t i = 0; i <= digits.size(); ++i) {
        if (mark && *mark == i) os << '.';
        if (i == digits.size()) break;
        int d = digits[i];
        if (d < 10) os << d;
        else os << '[' << d << ']';
    }
    return os.str();
}

Word Word::parse(const std::string& s, int p) {
    Word w;
    size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (ch == '.') {
            if (w.mark) throw std::invalid_argument("Word::parse: second radix mark at position " + std::to_string(i));
            w.mark = w.digits.size();
            ++i;
        } else if (ch >= '0' && ch <= '9') {
            int d = ch - '0';
            if (d >= p) throw std::invalid_argument("Word::parse: digit out of range at position " + std::to_string(i));
            w.digits.push_back(d);
            ++i;
        } else if (ch == '[') {
            size_t j = s.find(']', i);
            if (j == std::string::npos) throw std::invalid_argument("Word::parse: unterminated bracket at position " + std::to_string(i));
            int d = std::stoi(s.substr(i + 1, j - i - 1));
            if (d < 0 || d >= p) throw std::invalid_argument("Word::parse: digit out of range at position " + std::to_string(i));
            w.digits.push_back(d);
            i = j + 1;
        } else {
            throw std::invalid_argument("Word::parse: unexpected character at position " + std::to_string(i));
        }
    }
    return w;
}

Word encode_int(long long m, int p) {
    if (m < 0) throw std::invalid_argument("encode_int: negative input");
    Word w;
    while (m > 0) { w.digits.push_back((int)(m % p)); m /= p; }
    std::reverse(w.digits.begin(), w.digits.end());
    return w;
}

long long decode_int(const Word& s, int p) {
    if (s.has_mark()) throw std::invalid_argument("decode_int: word contains a radix mark");
    if (!s.digits.empty() && s.digits[0] == 0)
        throw std::invalid_argument("decode_int: leading zero at position 0");
    long long v = 0;
    for (int d : s.digits) {
        if (d < 0 || d >= p) throw std::invalid_argument("decode_int: digit out of range");
        v = v * p + d;
    }
    return v;
}

PAdicNonneg PAdicNonneg::from_rat(const Rat& r, int p) {
    if (r.num < 0) throw std::invalid_argument("PAdicNonneg: negative value");
    long long n;
    int k;
    if (!p_power_denominator(r, p, n, k))
        throw std::invalid_argument("PAdicNonneg: denominator is not a power of p");
    return PAdicNonneg{n, k};
}

Word encode_frac(const PAdicNonneg& r, int p) {
    // n / p^k: integer part n div p^k, fractional digits from n mod p^k.
    long long pk = ipow(p, r.k);
    long long intpart = r.n / pk;
    long long rem = r.n % pk;
    Word w = encode_int(intpart, p);
    w.mark = w.digits.size();
    // fractional digits most-significant first: rem / p^k = 0.d1 d2 ... dk
    std::vector<int> frac(r.k);
    for (int i = r.k - 1; i >= 0; --i) { frac[i] = (int)(rem % p); rem /= p; }
    // canonical form: no trailing zeros (k minimal guarantees frac.back() != 0 when k > 0)
    while (!frac.empty() && frac.back() == 0) frac.pop_back();
    for (int d : frac) w.digits.push_back(d);
    return w;
}

PAdicNonneg decode_frac(const Word& s, int p) {
    if (!s.has_mark())
        throw std::invalid_argument("decode_frac: missing radix mark at position " + std::to_string(s.digits.size()));
    auto ip = s.int_part();
    if (!ip.empty() && ip[0] == 0)
        throw std::invalid_argument("decode_frac: leading zero at position 0");
    auto fp = s.frac_part();
    if (!fp.empty() && fp.back() == 0)
        throw std::invalid_argument("decode_frac: trailing zero at position " + std::to_string(s.digits.size() - 1));
    long long n = 0;
    for (int d : ip) {
        if (d < 0 || d >= p) throw std::invalid_argument("decode_frac: digit out of range");
        n = n * p + d;
    }
    for (int d : fp) {
        if (d < 0 || d >= p) throw std::invalid_argument("decode_frac: digit out of range");
        n = n * p + d;
    }
    return PAdicNonneg{n, (int)fp.size()};
}

Word reverse(const Word& s) {
    Word w;
    w.digits.assign(s.digits.rbegin(), s.digits.rend());
    if (s.mark) w.mark = s.digits.size() - *s.mark;
    return w;
}

Rat word_value(const Word& s, int p) {
    Rat v(0);
    size_t il = s.int_len();
    for (size_t i = 0; i < il; ++i) v = v * Rat(p) + Rat(s.digits[i]);
    Rat place(1, p);
    for (size_t i = il; i < s.digits.size(); ++i) {
        v += Rat(s.digits[i]) * place;
        place = place * Rat(1, p);
    }
    return v;
}

bool is_canonical_lp(const Word& s, int p) {
    if (!s.has_mark()) return false;
    auto ip = s.int_part();
    if (!ip.empty() && ip[0] == 0) return false;
    auto fp = s.frac_part();
    if (!fp.empty() && fp.back() == 0) return false;
    for (int d : s.digits)
        if (d < 0 || d >= p) return false;
    return true;
}

} // namespace pseries

#include "cantor/base4.hpp"

#include <charconv>
#include <sstream>

namespace cantor {

DigitWord word(std::initializer_list<int> ds) {
    DigitWord w;
    w.reserve(ds.size());
    for (int d : ds) w.push_back(Digit(d));
    return w;
}

std::string to_string(const DigitWord& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += static_cast<char>('0' + w[i].value());
    }
    return s;
}

bool Code::canonical() const {
    return prefix.empty() || prefix.back().value() != tail_digit(tail);
}

void Code::canonicalize() {
    while (!prefix.empty() && prefix.back().value() == tail_digit(tail)) prefix.pop_back();
}

BigInt floor_div_pow4(const BigInt& k, std::size_t n) {
    if (k >= 0) return k >> (2 * n);  // shifts are safe on nonnegative cpp_int
    BigInt p = BigInt(1) << (2 * n);
    BigInt q = k / p;                 // truncates toward zero
    if (q * p != k) --q;
    return q;
}

BigInt mod_pow4(const BigInt& k, std::size_t n) {
    BigInt p = BigInt(1) << (2 * n);
    BigInt r = k % p;
    if (r < 0) r += p;
    return r;
}

Code encode(const BigInt& k) {
    Code c;
    c.tail = k >= 0 ? TailKind::Zero : TailKind::Three;
    BigInt stop = k >= 0 ? 0 : -1;
    BigInt v = k;
    while (v != stop) {
        int d = static_cast<int>(mod_pow4(v, 1));
        c.prefix.push_back(Digit(d));
        v = (v - d) / 4;  // exact division
    }
    // the loop stops the moment the tail starts, so c is canonical already
    return c;
}

BigInt decode(const Code& c) {
    Code n = c;
    n.canonicalize();
    BigInt v = 0, p = 1;
    for (Digit d : n.prefix) {
        v += p * d.value();
        p *= 4;
    }
    if (n.tail == TailKind::Three) v -= p;  // p = 4^{prefix length}
    return v;
}

Digit digit_at(const BigInt& k, std::size_t n) {
    return Digit(static_cast<int>(mod_pow4(floor_div_pow4(k, n), 1)));
}

std::size_t lng(const BigInt& k) {
    BigInt m = k >= 0 ? k : -k - 1;  // base-4 complement maps tail 3~ to 0~
    if (m == 0) return 0;
    return boost::multiprecision::msb(m) / 2 + 1;
}

BigInt prepend_value(const DigitWord& w, const BigInt& b) {
    BigInt v = 0, p = 1;
    for (Digit d : w) {
        v += p * d.value();
        p *= 4;
    }
    return v + p * b;
}

std::string to_string(const Code& c) {
    std::string s = to_string(c.prefix);
    if (!s.empty()) s += ' ';
    s += '|';
    s += ' ';
    s += static_cast<char>('0' + tail_digit(c.tail));
    s += '~';
    return s;
}

Code parse_code(std::string_view s) {
    Code c;
    std::size_t i = 0;
    bool seen_bar = false, seen_tail = false;
    while (i < s.size()) {
        if (s[i] == ' ' || s[i] == '\t') {
            ++i;
            continue;
        }
        std::size_t col = i + 1;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        std::string_view tok = s.substr(i, j - i);
        i = j;
        if (seen_tail) throw parse_error(1, col, "trailing input after tail");
        if (tok == "|") {
            if (seen_bar) throw parse_error(1, col, "duplicate '|'");
            seen_bar = true;
        } else if (!seen_bar) {
            if (tok.size() != 1 || tok[0] < '0' || tok[0] > '3')
                throw parse_error(1, col, "expected digit 0-3 or '|'");
            c.prefix.push_back(Digit(tok[0] - '0'));
        } else {
            if (tok != "0~" && tok != "3~")
                throw parse_error(1, col, "expected tail '0~' or '3~'");
            c.tail = tok[0] == '0' ? TailKind::Zero : TailKind::Three;
            seen_tail = true;
        }
    }
    if (!seen_tail) throw parse_error(1, s.size() + 1, "missing tail");
    return c;
}

} // namespace cantor

#pragma once

// Base-4 integer codec.  Every integer k has a unique expansion
//   k = sum_{n>=0} d_n 4^n       with d_n eventually 0  (k >= 0), or
//   k = sum_{n<=N} d_n 4^n - 4^{N+1}  i.e. d_n eventually 3  (k < 0).
// A Code stores the finite prefix before the constant tail begins.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cantor/errors.hpp"

namespace cantor {

using BigInt = boost::multiprecision::cpp_int;

class Digit {
  public:
    Digit() = default;
    constexpr explicit Digit(int v) : v_(static_cast<std::uint8_t>(v)) {
        if (v < 0 || v > 3) throw invalid_params("digit out of range [0,3]");
    }
    constexpr int value() const { return v_; }
    constexpr bool even() const { return (v_ & 1) == 0; }
    friend constexpr bool operator==(Digit a, Digit b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Digit a, Digit b) { return a.v_ != b.v_; }
    friend constexpr bool operator<(Digit a, Digit b) { return a.v_ < b.v_; }

  private:
    std::uint8_t v_ = 0;
};

using DigitWord = std::vector<Digit>;

DigitWord word(std::initializer_list<int> ds);
std::string to_string(const DigitWord& w);   // "2 1", "" for empty

enum class TailKind { Zero, Three };

constexpr int tail_digit(TailKind t) { return t == TailKind::Zero ? 0 : 3; }

// prefix + infinitely repeated tail digit; canonical iff the prefix does not
// end in the tail digit (so each integer has exactly one canonical Code).
struct Code {
    DigitWord prefix;
    TailKind tail = TailKind::Zero;

    bool canonical() const;
    void canonicalize();
    // digit at position n, tail included
    Digit digit(std::size_t n) const {
        return n < prefix.size() ? prefix[n] : Digit(tail_digit(tail));
    }
    friend bool operator==(const Code& a, const Code& b) {
        return a.tail == b.tail && a.prefix == b.prefix;
    }
};

// floor semantics for negatives (cpp_int / and % truncate toward zero)
BigInt floor_div_pow4(const BigInt& k, std::size_t n);  // floor(k / 4^n)
BigInt mod_pow4(const BigInt& k, std::size_t n);        // k mod 4^n in [0, 4^n)

Code encode(const BigInt& k);
BigInt decode(const Code& c);                      // canonicalizes first
Digit digit_at(const BigInt& k, std::size_t n);
std::size_t lng(const BigInt& k);                  // canonical prefix length
BigInt prepend_value(const DigitWord& w, const BigInt& b);  // sum 4^k w_k + 4^|w| b

// textual form: "d0 d1 ... dN | 0~"  /  "... | 3~"; empty prefix: "| 0~"
std::string to_string(const Code& c);
Code parse_code(std::string_view s);               // throws parse_error

} // namespace cantor

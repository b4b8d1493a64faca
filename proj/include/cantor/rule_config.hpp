#pragma once

// Textual descriptions of labeling rules: a line-oriented config-file format
// and a compact inline shorthand, shared by the CLI and the tests.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "cantor/labeling.hpp"

namespace cantor {

// parse result: the tree rule, plus the pieces some commands need directly
// (expansions want the digit system itself, gap reports want the gap law)
struct ParsedRule {
    RulePtr rule;
    std::optional<DigitSystem> system;
    std::optional<GapFunction> gap;
    std::string source;  // normalized description, echoed in output headers
};

// Line-oriented "key=value" format, one key per line, '#' comments.  Keys:
//   rule=JP | ExR4 | UniformPairPerLevel | DigitSystemRule | Counterexample
//        | Compose                                     (required, first)
//   pairs.level.<n>=<d1>,<d2>   UniformPairPerLevel; n consecutive from 0
//   digits.default=0,<a>        DigitSystemRule; a odd
//   digits.prefix.<w>=0,<a>     DigitSystemRule; w = chosen digits joined
//                               by '_', empty w = root
//   gap=paper | poly:<c>        Counterexample (default paper)
//   graft.<e>=<inline-rule>     Compose; exactly two edges, distinct parity
// Errors are parse_error carrying "origin:line:col: message".
ParsedRule parse_rule_config(std::istream& in, const std::string& origin);
ParsedRule parse_rule_file(const std::string& path);

// Inline shorthand:
//   jp | exr4 | uniform:<d1>,<d2>[+<d1>,<d2>...] | digits:<a0>[,<a1>...]
//   | counterexample[:paper|:poly:<c>] | compose:<e1>=<ref>,<e2>=<ref>
// where <ref> is any non-compose shorthand.
ParsedRule parse_rule_inline(std::string_view text);

// treats `arg` as a file when one exists at that path, else as shorthand
ParsedRule resolve_rule(const std::string& arg);

// "paper" or "poly:<c>" with c >= 1
GapFunction parse_gap(std::string_view text);

} // namespace cantor

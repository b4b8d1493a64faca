#include "cantor/rule_config.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& origin,
                       const std::string& msg) {
    throw parse_error(line, col, origin.empty() ? msg : origin + ": " + msg);
}

bool is_int_text(std::string_view s) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt parse_bigint(std::string_view s, std::size_t line, std::size_t col,
                    const std::string& origin) {
    if (!is_int_text(s)) fail(line, col, origin, "expected an integer, got '" + std::string(s) + "'");
    return BigInt(std::string(s));
}

int parse_small_digit(std::string_view s, std::size_t line, std::size_t col,
                      const std::string& origin) {
    if (s.size() != 1 || s[0] < '0' || s[0] > '3')
        fail(line, col, origin, "expected a base-4 digit (0..3), got '" + std::string(s) + "'");
    return s[0] - '0';
}

DigitPair parse_pair_text(std::string_view s, std::size_t line, std::size_t col,
                          const std::string& origin) {
    auto comma = s.find(',');
    if (comma == std::string_view::npos)
        fail(line, col, origin, "expected '<d1>,<d2>', got '" + std::string(s) + "'");
    int d1 = parse_small_digit(s.substr(0, comma), line, col, origin);
    int d2 = parse_small_digit(s.substr(comma + 1), line, col + comma + 1, origin);
    if ((d1 & 1) == (d2 & 1))
        fail(line, col, origin,
             "pair digits must have different parity: " + std::string(s));
    return DigitPair(Digit(d1), Digit(d2));
}

// "0,<a>" with a odd
BigInt parse_zero_odd(std::string_view s, std::size_t line, std::size_t col,
                      const std::string& origin) {
    auto comma = s.find(',');
    if (comma == std::string_view::npos || s.substr(0, comma) != "0")
        fail(line, col, origin, "expected '0,<odd digit>', got '" + std::string(s) + "'");
    BigInt a = parse_bigint(s.substr(comma + 1), line, col + comma + 1, origin);
    if (a % 2 == 0)
        fail(line, col + comma + 1, origin, "the paired digit must be odd");
    return a;
}

struct ConfigLine {
    std::size_t no = 0;
    std::size_t keycol = 0;
    std::size_t valcol = 0;
    std::string key;
    std::string val;
};

ParsedRule from_inline(std::string_view text, std::size_t line, std::size_t col,
                       const std::string& origin, bool allow_compose);

ParsedRule build_uniform(const std::vector<ConfigLine>& lines, const std::string& origin) {
    std::map<std::size_t, DigitPair> by_level;
    std::size_t last_line = 1;
    for (const auto& l : lines) {
        if (l.key.rfind("pairs.level.", 0) != 0)
            fail(l.no, l.keycol, origin, "key '" + l.key + "' is not valid for rule UniformPairPerLevel");
        std::string_view idx = std::string_view(l.key).substr(12);
        if (!is_int_text(idx) || (idx.size() > 1 && idx[0] == '0') || idx[0] == '-' ||
            idx[0] == '+' || idx.size() > 6)
            fail(l.no, l.keycol + 12, origin, "expected a level number after 'pairs.level.'");
        std::size_t n = std::stoul(std::string(idx));
        if (by_level.count(n))
            fail(l.no, l.keycol, origin, "duplicate pair for level " + std::string(idx));
        by_level.emplace(n, parse_pair_text(l.val, l.no, l.valcol, origin));
        last_line = l.no;
    }
    if (by_level.empty())
        fail(last_line, 1, origin, "rule UniformPairPerLevel needs at least pairs.level.0");
    std::vector<DigitPair> cycle;
    for (std::size_t n = 0; n < by_level.size(); ++n) {
        auto it = by_level.find(n);
        if (it == by_level.end())
            fail(last_line, 1, origin,
                 "pairs.level entries must be consecutive from 0; missing level " + std::to_string(n));
        cycle.push_back(it->second);
    }
    ParsedRule r;
    r.rule = uniform_pair_per_level_rule(std::move(cycle));
    r.source = r.rule->id();
    return r;
}

ParsedRule build_digit_system(const std::vector<ConfigLine>& lines, const std::string& origin) {
    std::optional<BigInt> fallback;
    std::map<std::vector<BigInt>, BigInt> table;
    std::size_t last_line = 1;
    for (const auto& l : lines) {
        last_line = l.no;
        if (l.key == "digits.default") {
            if (fallback)
                fail(l.no, l.keycol, origin, "duplicate digits.default");
            fallback = parse_zero_odd(l.val, l.no, l.valcol, origin);
        } else if (l.key.rfind("digits.prefix.", 0) == 0) {
            std::string w = l.key.substr(14);
            std::vector<BigInt> prefix;
            std::size_t at = l.keycol + 14;
            std::size_t start = 0;
            while (!w.empty()) {
                std::size_t us = w.find('_', start);
                std::string part = w.substr(start, us == std::string::npos ? us : us - start);
                prefix.push_back(parse_bigint(part, l.no, at + start, origin));
                if (us == std::string::npos) break;
                start = us + 1;
            }
            if (table.count(prefix))
                fail(l.no, l.keycol, origin, "duplicate digits.prefix entry");
            table.emplace(std::move(prefix), parse_zero_odd(l.val, l.no, l.valcol, origin));
        } else {
            fail(l.no, l.keycol, origin, "key '" + l.key + "' is not valid for rule DigitSystemRule");
        }
    }
    if (!fallback)
        fail(last_line, 1, origin, "rule DigitSystemRule needs digits.default");
    ParsedRule r;
    r.system = table.empty() ? DigitSystem::constant(*fallback)
                             : DigitSystem::per_prefix(std::move(table), *fallback);
    r.rule = digitsystem_to_rule(*r.system);
    r.source = r.rule->id();
    return r;
}

ParsedRule build_counterexample(const std::vector<ConfigLine>& lines, const std::string& origin) {
    std::optional<GapFunction> gap;
    for (const auto& l : lines) {
        if (l.key != "gap")
            fail(l.no, l.keycol, origin, "key '" + l.key + "' is not valid for rule Counterexample");
        if (gap) fail(l.no, l.keycol, origin, "duplicate gap");
        try {
            gap = parse_gap(l.val);
        } catch (const parse_error&) {
            fail(l.no, l.valcol, origin, "expected 'paper' or 'poly:<c>', got '" + l.val + "'");
        }
    }
    ParsedRule r;
    r.gap = gap.value_or(GapFunction::paper());
    r.rule = counterexample_rule(*r.gap);
    r.source = r.rule->id();
    return r;
}

ParsedRule build_compose(const std::vector<ConfigLine>& lines, const std::string& origin) {
    std::vector<std::pair<Digit, RulePtr>> grafts;
    std::size_t last_line = 1;
    for (const auto& l : lines) {
        last_line = l.no;
        if (l.key.rfind("graft.", 0) != 0)
            fail(l.no, l.keycol, origin, "key '" + l.key + "' is not valid for rule Compose");
        int e = parse_small_digit(std::string_view(l.key).substr(6), l.no, l.keycol + 6, origin);
        for (const auto& g : grafts)
            if (g.first == Digit(e))
                fail(l.no, l.keycol, origin, "duplicate graft edge " + std::to_string(e));
        ParsedRule sub = from_inline(l.val, l.no, l.valcol, origin, /*allow_compose=*/false);
        grafts.emplace_back(Digit(e), sub.rule);
    }
    if (grafts.size() != 2)
        fail(last_line, 1, origin, "rule Compose needs exactly two graft.<edge> entries");
    if (grafts[0].first.even() == grafts[1].first.even())
        fail(last_line, 1, origin, "graft edges must have different parity");
    ParsedRule r;
    r.rule = compose(grafts[0].first, grafts[0].second, grafts[1].first, grafts[1].second);
    r.source = r.rule->id();
    return r;
}

ParsedRule from_inline(std::string_view text, std::size_t line, std::size_t col,
                       const std::string& origin, bool allow_compose) {
    auto head_is = [&](std::string_view name) {
        return text == name || text.rfind(std::string(name) + ":", 0) == 0;
    };
    ParsedRule r;
    if (text == "jp") {
        r.rule = jp_rule();
    } else if (text == "exr4") {
        r.rule = exr4_rule();
    } else if (head_is("uniform")) {
        if (text.size() <= 8) fail(line, col, origin, "uniform: needs '<d1>,<d2>[+...]'");
        std::vector<DigitPair> cycle;
        std::string_view body = text.substr(8);
        std::size_t start = 0;
        while (true) {
            std::size_t plus = body.find('+', start);
            std::string_view part = body.substr(start, plus == std::string_view::npos
                                                           ? plus : plus - start);
            cycle.push_back(parse_pair_text(part, line, col + 8 + start, origin));
            if (plus == std::string_view::npos) break;
            start = plus + 1;
        }
        r.rule = uniform_pair_per_level_rule(std::move(cycle));
    } else if (head_is("digits")) {
        if (text.size() <= 7) fail(line, col, origin, "digits: needs '<a0>[,<a1>...]'");
        std::vector<BigInt> levels;
        std::string_view body = text.substr(7);
        std::size_t start = 0;
        while (true) {
            std::size_t comma = body.find(',', start);
            std::string_view part = body.substr(start, comma == std::string_view::npos
                                                           ? comma : comma - start);
            BigInt a = parse_bigint(part, line, col + 7 + start, origin);
            if (a % 2 == 0) fail(line, col + 7 + start, origin, "digit system digits must be odd");
            levels.push_back(std::move(a));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        r.system = levels.size() == 1 ? DigitSystem::constant(levels[0])
                                      : DigitSystem::level_dependent(std::move(levels));
        r.rule = digitsystem_to_rule(*r.system);
    } else if (head_is("counterexample")) {
        std::string_view body = text == "counterexample" ? "paper" : text.substr(15);
        try {
            r.gap = parse_gap(body);
        } catch (const parse_error&) {
            fail(line, col + 15, origin,
                 "expected 'paper' or 'poly:<c>', got '" + std::string(body) + "'");
        }
        r.rule = counterexample_rule(*r.gap);
    } else if (head_is("compose")) {
        if (!allow_compose)
            fail(line, col, origin, "compose references cannot be nested");
        if (text.size() <= 8) fail(line, col, origin, "compose: needs '<e1>=<ref>,<e2>=<ref>'");
        std::string_view body = text.substr(8);
        // split on commas, but commas inside a <ref> (no '=' after them)
        // belong to the previous segment
        std::vector<std::pair<std::size_t, std::string>> segs;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = body.find(',', start);
            std::string part(body.substr(start, comma == std::string_view::npos
                                                    ? comma : comma - start));
            if (!segs.empty() && part.find('=') == std::string::npos)
                segs.back().second += "," + part;
            else
                segs.emplace_back(col + 8 + start, std::move(part));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (segs.size() != 2)
            fail(line, col + 8, origin, "compose: needs exactly two '<edge>=<ref>' entries");
        Digit edges[2];
        RulePtr subs[2];
        for (int i = 0; i < 2; ++i) {
            const std::string& s = segs[i].second;
            std::size_t eq = s.find('=');
            if (eq == std::string::npos)
                fail(line, segs[i].first, origin, "expected '<edge>=<ref>', got '" + s + "'");
            edges[i] = Digit(parse_small_digit(std::string_view(s).substr(0, eq), line,
                                               segs[i].first, origin));
            subs[i] = from_inline(std::string_view(s).substr(eq + 1), line,
                                  segs[i].first + eq + 1, origin, false).rule;
        }
        if (edges[0].even() == edges[1].even())
            fail(line, col + 8, origin, "compose edges must have different parity");
        r.rule = compose(edges[0], subs[0], edges[1], subs[1]);
    } else {
        fail(line, col, origin, "unknown rule '" + std::string(text) + "'");
    }
    r.source = r.rule->id();
    return r;
}

} // namespace

GapFunction parse_gap(std::string_view text) {
    if (text == "paper") return GapFunction::paper();
    if (text.rfind("poly:", 0) == 0) {
        std::string_view c = text.substr(5);
        if (!is_int_text(c) || c[0] == '-' || c[0] == '+' || c.size() > 2)
            throw parse_error(1, 6, "expected a degree (1..99) after 'poly:'");
        unsigned long deg = std::stoul(std::string(c));
        if (deg < 1) throw parse_error(1, 6, "polynomial gap degree must be >= 1");
        return GapFunction::poly(static_cast<unsigned>(deg));
    }
    throw parse_error(1, 1, "expected 'paper' or 'poly:<c>', got '" + std::string(text) + "'");
}

ParsedRule parse_rule_inline(std::string_view text) {
    return from_inline(text, 1, 1, "", /*allow_compose=*/true);
}

ParsedRule parse_rule_config(std::istream& in, const std::string& origin) {
    std::vector<ConfigLine> lines;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        std::string text = raw.substr(0, raw.find('#'));
        std::size_t b = text.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = text.find_last_not_of(" \t\r");
        std::size_t eq = text.find('=');
        if (eq == std::string::npos || eq < b)
            fail(no, b + 1, origin, "expected 'key=value'");
        ConfigLine l;
        l.no = no;
        std::size_t kend = text.find_last_not_of(" \t", eq - 1);
        if (kend == std::string::npos || kend < b)
            fail(no, b + 1, origin, "empty key");
        l.key = text.substr(b, kend - b + 1);
        l.keycol = b + 1;
        std::size_t vb = text.find_first_not_of(" \t", eq + 1);
        if (vb == std::string::npos || vb > e) {
            l.val = "";
            l.valcol = eq + 2;
        } else {
            l.val = text.substr(vb, e - vb + 1);
            l.valcol = vb + 1;
        }
        lines.push_back(std::move(l));
    }
    if (lines.empty()) fail(no ? no : 1, 1, origin, "empty rule config");
    if (lines[0].key != "rule")
        fail(lines[0].no, lines[0].keycol, origin, "the first key must be 'rule'");
    for (std::size_t i = 1; i < lines.size(); ++i)
        if (lines[i].key == "rule")
            fail(lines[i].no, lines[i].keycol, origin, "duplicate 'rule' key");
    const ConfigLine& head = lines[0];
    std::vector<ConfigLine> rest(lines.begin() + 1, lines.end());
    if (head.val == "JP" || head.val == "ExR4") {
        if (!rest.empty())
            fail(rest[0].no, rest[0].keycol, origin,
                 "key '" + rest[0].key + "' is not valid for rule " + head.val);
        ParsedRule r;
        r.rule = head.val == "JP" ? jp_rule() : exr4_rule();
        r.source = r.rule->id();
        return r;
    }
    if (head.val == "UniformPairPerLevel") return build_uniform(rest, origin);
    if (head.val == "DigitSystemRule") return build_digit_system(rest, origin);
    if (head.val == "Counterexample") return build_counterexample(rest, origin);
    if (head.val == "Compose") return build_compose(rest, origin);
    fail(head.no, head.valcol, origin, "unknown rule '" + head.val + "'");
}

ParsedRule parse_rule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_params("cannot open rule config '" + path + "'");
    return parse_rule_config(in, std::filesystem::path(path).filename().string());
}

ParsedRule resolve_rule(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return parse_rule_file(arg);
    return parse_rule_inline(arg);
}

} // namespace cantor

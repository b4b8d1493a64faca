#include "doctest.h"

#include <algorithm>
#include <set>

#include "cantor/labeling.hpp"
#include "cantor/measure.hpp"
#include "test_rng.hpp"

using namespace cantor;

namespace {

DigitWord w(std::initializer_list<int> ds) {
    DigitWord out;
    for (int d : ds) out.push_back(Digit(d));
    return out;
}

std::vector<BigInt> big(std::initializer_list<long long> vs) {
    return std::vector<BigInt>(vs.begin(), vs.end());
}

DigitPair dp(int a, int b) { return DigitPair(Digit(a), Digit(b)); }

} // namespace

TEST_CASE("DigitPair: ordering, accessors, parity rejection") {
    DigitPair p = dp(3, 0);
    CHECK(p.low().value() == 0);
    CHECK(p.high().value() == 3);
    CHECK(p.even().value() == 0);
    CHECK(p.odd().value() == 3);
    CHECK(p.offers(Digit(0)));
    CHECK(p.offers(Digit(3)));
    CHECK_FALSE(p.offers(Digit(1)));
    CHECK(to_string(dp(1, 2)) == "{1,2}");
    CHECK_THROWS_AS(dp(0, 2), invalid_params);
    CHECK_THROWS_AS(dp(1, 3), invalid_params);
    CHECK_THROWS_AS(dp(2, 2), invalid_params);
}

TEST_CASE("jp_rule: {0,1} everywhere, exact tails") {
    RulePtr jp = jp_rule();
    CHECK(jp->pair(w({})) == dp(0, 1));
    CHECK(jp->pair(w({1, 0, 1, 1})) == dp(0, 1));
    CHECK(jp->has_tail_certificate());
    CHECK(jp->tail_feasible(w({}), Digit(0)) == TailFeasibility::Yes);
    CHECK(jp->tail_feasible(w({1, 1}), Digit(0)) == TailFeasibility::Yes);
    CHECK(jp->tail_feasible(w({}), Digit(3)) == TailFeasibility::No);
    CHECK(jp->id() == "JP");
}

TEST_CASE("uniform_pair_per_level_rule: cycle semantics") {
    RulePtr alt = uniform_pair_per_level_rule({dp(0, 1), dp(0, 3)});
    CHECK(alt->pair(w({})) == dp(0, 1));
    CHECK(alt->pair(w({0})) == dp(0, 3));
    CHECK(alt->pair(w({0, 3})) == dp(0, 1));
    CHECK(alt->pair(w({0, 3, 1})) == dp(0, 3));
    // every level offers 0, no level run offers 3 forever
    CHECK(alt->tail_feasible(w({}), Digit(0)) == TailFeasibility::Yes);
    CHECK(alt->tail_feasible(w({0}), Digit(3)) == TailFeasibility::No);
    CHECK(alt->has_tail_certificate());
    CHECK_THROWS_AS(uniform_pair_per_level_rule({}), invalid_params);

    RulePtr c03 = uniform_pair_per_level_rule({dp(0, 3)});
    CHECK(c03->tail_feasible(w({3, 3}), Digit(3)) == TailFeasibility::Yes);
}

TEST_CASE("exr4_rule: frozen vertex pairs") {
    RulePtr r = exr4_rule();
    CHECK(r->pair(w({})) == dp(0, 1));               // root
    CHECK(r->pair(w({1})) == dp(1, 2));              // spine
    CHECK(r->pair(w({1, 1})) == dp(1, 2));
    CHECK(r->pair(w({1, 1, 1, 1, 1})) == dp(1, 2));
    CHECK(r->pair(w({0})) == dp(0, 1));              // plain {0,1} subtree
    CHECK(r->pair(w({0, 1, 0})) == dp(0, 1));
    CHECK(r->pair(w({1, 2})) == dp(0, 1));           // region after 1 one ends at depth 2
    CHECK(r->pair(w({1, 1, 2})) == dp(1, 2));        // region after 2 ones runs to depth 3
    CHECK(r->pair(w({1, 1, 2, 1})) == dp(0, 1));     // ... and ends at depth 4
    CHECK(r->pair(w({1, 1, 1, 2, 1, 2})) == dp(0, 1));
    CHECK(r->pair(w({1, 1, 1, 2, 1})) == dp(1, 2));  // depth 5 < 6
    CHECK(r->has_tail_certificate());
    // all-0 continuation exists exactly once past the alternation region
    CHECK(r->tail_feasible(w({0}), Digit(0)) == TailFeasibility::Yes);
    CHECK(r->tail_feasible(w({1}), Digit(0)) == TailFeasibility::No);
    CHECK(r->tail_feasible(w({1, 2}), Digit(0)) == TailFeasibility::Yes);
    CHECK(r->tail_feasible(w({1, 1, 2}), Digit(0)) == TailFeasibility::No);
    CHECK(r->tail_feasible(w({1, 1, 2, 1}), Digit(0)) == TailFeasibility::Yes);
    CHECK(r->tail_feasible(w({1, 1}), Digit(1)) == TailFeasibility::Yes);  // spine forever
    CHECK(r->tail_feasible(w({1, 1}), Digit(3)) == TailFeasibility::No);
    CHECK(r->id() == "ExR4");
}

TEST_CASE("counterexample_rule: trigger levels follow the branch history") {
    RulePtr paper = counterexample_rule();
    // first relabeling depth is 100: any desk-scale vertex sees {0,1}
    for (int len = 0; len <= 24; ++len) {
        DigitWord v;
        for (int i = 0; i < len; ++i) v.push_back(Digit(i % 2));
        CHECK(paper->pair(v) == dp(0, 1));
    }
    CHECK(paper->has_tail_certificate());
    CHECK(paper->tail_feasible(w({0, 0}), Digit(0)) == TailFeasibility::Yes);
    // an upper choice at position 0 forces {1,2} at depth 100, killing the 0-tail
    CHECK(paper->tail_feasible(w({1}), Digit(0)) == TailFeasibility::No);
    CHECK(paper->tail_feasible(w({1}), Digit(1)) == TailFeasibility::Yes);
    CHECK(paper->id() == "Counterexample(paper)");

    // poly gap (k+2)^2: triggers at 4, 9, 16, ...
    RulePtr p2 = counterexample_rule(GapFunction::poly(2));
    CHECK(p2->id() == "Counterexample(poly:2)");
    CHECK(p2->pair(w({1, 0, 0, 0})) == dp(1, 2));        // depth 4 = gap(0), upper at 0
    CHECK(p2->pair(w({0, 0, 0, 0})) == dp(0, 1));        // lower at 0: no trigger
    CHECK(p2->pair(w({0, 1, 0, 0})) == dp(0, 1));        // upper at 1 triggers depth 9 only
    CHECK(p2->pair(w({0, 1, 0, 0, 0, 0, 0, 0, 0})) == dp(1, 2));  // depth 9 = gap(1)
    // taking the lower branch (digit 1) of a triggered pair does not re-trigger
    CHECK(p2->pair(w({1, 0, 0, 0, 1, 0, 0, 0, 0})) == dp(0, 1));
    // taking the upper branch (digit 2) schedules a trigger at gap(4) = 36
    DigitWord deep = w({1, 0, 0, 0, 2});
    while (deep.size() < 36) deep.push_back(Digit(0));
    CHECK(p2->pair(deep) == dp(1, 2));
    CHECK(p2->tail_feasible(w({1, 0, 0, 0, 1}), Digit(0)) == TailFeasibility::Yes);
    CHECK(p2->tail_feasible(w({1, 0, 0, 0, 2}), Digit(0)) == TailFeasibility::No);
    CHECK(p2->tail_feasible(w({1}), Digit(2)) == TailFeasibility::No);

    CHECK_THROWS_AS(GapFunction::poly(0), invalid_params);
}

TEST_CASE("gap functions: values") {
    CHECK(GapFunction::paper()(0) == 100);
    CHECK(GapFunction::paper()(3) == 100000);
    CHECK(GapFunction::poly(2)(0) == 4);
    CHECK(GapFunction::poly(2)(2) == 16);
    CHECK(GapFunction::poly(3)(1) == 27);
    CHECK(GapFunction::paper().name() == "paper");
    CHECK(GapFunction::poly(5).name() == "poly:5");
}

TEST_CASE("override_rule: table wins, fallback elsewhere") {
    std::map<DigitWord, DigitPair> table;
    table.emplace(w({1}), dp(0, 3));
    RulePtr r = override_rule(table, jp_rule());
    CHECK(r->pair(w({1})) == dp(0, 3));
    CHECK(r->pair(w({})) == dp(0, 1));
    CHECK(r->pair(w({1, 3})) == dp(0, 1));
    CHECK(r->tail_feasible(w({1, 3}), Digit(0)) == TailFeasibility::Yes);
    CHECK(r->tail_feasible(w({}), Digit(0)) == TailFeasibility::Yes);
    // 1-tail from root passes through the overridden vertex, which lacks 1
    CHECK(r->tail_feasible(w({}), Digit(1)) == TailFeasibility::No);
    CHECK(r->has_tail_certificate());
}

TEST_CASE("validate_rule: verdicts") {
    ValidationReport ok = validate_rule(*jp_rule(), 16);
    CHECK(ok.status == ValidationReport::Status::Verified);
    CHECK(ok.depth == 16);

    // {1,2} forever: parity fine, but no path ever settles on 0 or 3
    ValidationReport stuck = validate_rule(*uniform_pair_per_level_rule({dp(1, 2)}), 16);
    CHECK(stuck.status == ValidationReport::Status::Inconclusive);
    CHECK(stuck.failing_vertex.has_value());

    CHECK(validate_rule(*counterexample_rule(), 12).verified());
    CHECK(validate_rule(*counterexample_rule(GapFunction::poly(2)), 12).verified());
    CHECK(validate_rule(*exr4_rule(), 16).verified());
    CHECK_THROWS_AS(validate_rule(*jp_rule(), 0), invalid_params);
}

TEST_CASE("enumerate: frozen small truncations") {
    SpectrumSet jp2 = enumerate(*jp_rule(), 2);
    CHECK(jp2.values() == big({0, 1, 4, 5}));
    CHECK(jp2.rule_id == "JP");
    CHECK(jp2.length_bound == 2);

    CHECK(enumerate(*jp_rule(), 3).values() == big({0, 1, 4, 5, 16, 17, 20, 21}));

    SpectrumSet c03 = enumerate(*uniform_pair_per_level_rule({dp(0, 3)}), 1);
    CHECK(c03.values() == big({-4, -1, 0, 3}));

    CHECK(enumerate(*uniform_pair_per_level_rule({dp(0, 1), dp(0, 3)}), 2).values() ==
          big({0, 1, 12, 13}));

    CHECK(enumerate(*exr4_rule(), 3).values() == big({0, 4, 9, 16, 20, 25}));
    CHECK(enumerate(*exr4_rule(), 4).values() ==
          big({0, 4, 9, 16, 20, 25, 64, 68, 73, 80, 84, 89, 101, 165}));

    std::map<DigitWord, DigitPair> table;
    table.emplace(w({1}), dp(0, 3));
    CHECK(enumerate(*override_rule(table, jp_rule()), 2).values() == big({0, 1, 4, 13}));
}

TEST_CASE("enumerate: counterexample truncations match the closed-form elements") {
    // members are sums over S of (4^gap(k) + 4^k), k in S
    auto expected = [](const GapFunction& g, int kmax, std::size_t L) {
        std::set<BigInt> vals;
        for (unsigned mask = 0; mask < (1u << (kmax + 1)); ++mask) {
            BigInt v = 0;
            for (int k = 0; k <= kmax; ++k)
                if (mask & (1u << k)) v += pow(BigInt(4), (unsigned)g(k).convert_to<unsigned>()) + pow(BigInt(4), k);
            if (lng(v) <= L) vals.insert(v);
        }
        return std::vector<BigInt>(vals.begin(), vals.end());
    };

    GapFunction g2 = GapFunction::poly(2);
    CHECK(enumerate(*counterexample_rule(g2), 6).values() == expected(g2, 4, 6));
    CHECK(enumerate(*counterexample_rule(g2), 10).values() == expected(g2, 6, 10));
    CHECK(enumerate(*counterexample_rule(g2), 10).values() ==
          big({0, 257, 262148, 262405}));
    // paper gaps put every nonzero member beyond desk scale
    CHECK(enumerate(*counterexample_rule(), 12).values() == big({0}));

    GapFunction g3 = GapFunction::poly(3);
    CHECK(enumerate(*counterexample_rule(g3), 9).values() == expected(g3, 4, 9));
}

TEST_CASE("enumerate: structural invariants and budget") {
    for (RulePtr r : {jp_rule(), exr4_rule(), counterexample_rule(GapFunction::poly(2)),
                      uniform_pair_per_level_rule({dp(0, 3), dp(0, 1)})}) {
        SpectrumSet s = enumerate(*r, 7);
        REQUIRE(!s.elements.empty());
        for (std::size_t i = 0; i < s.elements.size(); ++i) {
            const SpectrumEntry& e = s.elements[i];
            CHECK(decode(e.path) == e.value);
            CHECK(lng(e.value) <= 7);
            if (i > 0) CHECK(s.elements[i - 1].value < e.value);
        }
        CHECK(s.contains(s.elements.front().value));
        CHECK_FALSE(s.contains(BigInt(4) * s.elements.back().value + 7777));
    }
    CHECK_THROWS_AS(enumerate(*jp_rule(), 20, 1000), budget_exceeded);
}

TEST_CASE("pairwise orthogonality of enumerated families") {
    std::vector<RulePtr> rules = {
        jp_rule(),
        uniform_pair_per_level_rule({dp(0, 3)}),
        uniform_pair_per_level_rule({dp(0, 1), dp(0, 3)}),
        exr4_rule(),
        counterexample_rule(GapFunction::poly(2)),
        digitsystem_to_rule(DigitSystem::level_dependent({15, 9})),
    };
    for (const RulePtr& r : rules) {
        std::vector<BigInt> vs = enumerate(*r, 8).values();
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                REQUIRE(orthogonal(vs[i], vs[j]));
            }
    }
}

TEST_CASE("digit systems: construction and digit lookup") {
    DigitSystem c3 = DigitSystem::constant(3);
    CHECK(c3.odd_digit({}) == 3);
    CHECK(c3.odd_digit({0, 3, 3}) == 3);
    CHECK(c3.stabilization_depth() == 0);

    DigitSystem s159 = DigitSystem::level_dependent({15, 9});
    CHECK(s159.odd_digit({}) == 15);
    CHECK(s159.odd_digit({15}) == 9);
    CHECK(s159.odd_digit({0, 9, 15}) == 9);
    CHECK(s159.magnitude_bound() == 15);

    std::map<std::vector<BigInt>, BigInt> table;
    table[{}] = 15;
    table[{15, 9}] = 21;
    DigitSystem pp = DigitSystem::per_prefix(table, 9);
    CHECK(pp.odd_digit({}) == 15);
    CHECK(pp.odd_digit({15, 9}) == 21);
    CHECK(pp.odd_digit({15}) == 9);
    CHECK(pp.odd_digit({15, 9, 21}) == 9);
    CHECK(pp.stabilization_depth() == 3);

    CHECK_THROWS_AS(DigitSystem::constant(6), invalid_params);
    CHECK_THROWS_AS(DigitSystem::constant(0), invalid_params);
    CHECK_THROWS_AS(DigitSystem::level_dependent({}), invalid_params);
    CHECK_THROWS_AS(DigitSystem::level_dependent({3, 4}), invalid_params);
}

TEST_CASE("a_expansion: frozen examples") {
    DigitSystem s159 = DigitSystem::level_dependent({15, 9});
    ExpansionResult r3 = a_expansion(s159, 3);
    REQUIRE(r3.is_member());
    CHECK(r3.prefix == big({15}));
    CHECK(r3.cycle == big({9}));

    ExpansionResult r2 = a_expansion(s159, 2);
    CHECK_FALSE(r2.is_member());
    CHECK(r2.failure_position == 0);
    CHECK(r2.residual == 2);

    ExpansionResult rm1 = a_expansion(DigitSystem::constant(3), -1);
    REQUIRE(rm1.is_member());
    CHECK(rm1.prefix.empty());
    CHECK(rm1.cycle == big({3}));

    // 12 = 0 + 3*4, then the residual hits the all-zero fixed point
    ExpansionResult r12 = a_expansion(DigitSystem::constant(3), 12);
    REQUIRE(r12.is_member());
    CHECK(r12.prefix == big({0, 3}));
    CHECK(r12.cycle == big({0}));

    CHECK_THROWS_AS(a_expansion(s159, 3, 0), invalid_params);
}

TEST_CASE("a_expansion: members reconstruct their input") {
    // value of prefix + repeating cycle: sum of digit*4^k with the cycle summed
    // in closed form: cyc_val * 4^|p| / (1 - 4^|c|)
    auto reconstruct = [](const ExpansionResult& r) -> BigInt {
        BigInt pv = 0, cv = 0;
        for (std::size_t i = 0; i < r.prefix.size(); ++i)
            pv += r.prefix[i] * pow(BigInt(4), (unsigned)i);
        for (std::size_t i = 0; i < r.cycle.size(); ++i)
            cv += r.cycle[i] * pow(BigInt(4), (unsigned)i);
        BigInt den = 1 - pow(BigInt(4), (unsigned)r.cycle.size());
        REQUIRE(cv % den == 0);
        return pv + pow(BigInt(4), (unsigned)r.prefix.size()) * (cv / den);
    };
    std::vector<DigitSystem> systems = {
        DigitSystem::constant(1), DigitSystem::constant(3), DigitSystem::constant(9),
        DigitSystem::constant(-3), DigitSystem::level_dependent({15, 9}),
        DigitSystem::level_dependent({7, 1, 3})};
    testrng::Rng rng(0x1AB5u);
    for (const DigitSystem& s : systems) {
        for (int i = 0; i < 400; ++i) {
            BigInt k = BigInt((std::int64_t)rng.below(400001) - 200000);
            ExpansionResult r = a_expansion(s, k);
            if (r.is_member()) {
                REQUIRE(!r.cycle.empty());
                CHECK(reconstruct(r) == k);
            }
        }
    }
}

TEST_CASE("lambda_A_window: frozen windows") {
    CHECK(lambda_A_window(DigitSystem::constant(3), 16) ==
          big({-16, -13, -4, -1, 0, 3, 12, 15}));
    CHECK(lambda_A_window(DigitSystem::constant(1), 5) == big({0, 1, 4, 5}));
    std::vector<BigInt> w159 = lambda_A_window(DigitSystem::level_dependent({15, 9}), 20);
    CHECK(std::find(w159.begin(), w159.end(), BigInt(3)) != w159.end());
    CHECK(std::find(w159.begin(), w159.end(), BigInt(15)) != w159.end());
}

TEST_CASE("sums of system digits are always members") {
    std::vector<DigitSystem> systems = {
        DigitSystem::constant(3), DigitSystem::constant(9),
        DigitSystem::level_dependent({15, 9}), DigitSystem::level_dependent({7, 1, 3})};
    testrng::Rng rng(0x5EEDu);
    for (const DigitSystem& s : systems) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<BigInt> chosen;
            BigInt v = 0;
            int n = 1 + (int)(rng.next() % 10);
            for (int i = 0; i < n; ++i) {
                bool take_odd = rng.next() & 1;
                BigInt d = take_odd ? s.odd_digit(chosen) : 0;
                v += d * pow(BigInt(4), (unsigned)i);
                chosen.push_back(d);
            }
            CHECK(a_expansion(s, v).is_member());
        }
    }
}

TEST_CASE("digitsystem_to_rule: frozen pairs from the carry construction") {
    RulePtr r01 = digitsystem_to_rule(DigitSystem::constant(1));
    RulePtr r03 = digitsystem_to_rule(DigitSystem::constant(3));
    // constant pair at every in-tree vertex (random offered-edge walks)
    testrng::Rng rng(0xC4AEu);
    for (int i = 0; i < 50; ++i) {
        DigitWord v1, v3;
        for (int j = 0; j < (int)(rng.next() % 10); ++j) {
            bool high = rng.next() & 1;
            DigitPair p1 = r01->pair(v1), p3 = r03->pair(v3);
            CHECK(p1 == dp(0, 1));
            CHECK(p3 == dp(0, 3));
            v1.push_back(high ? p1.high() : p1.low());
            v3.push_back(high ? p3.high() : p3.low());
        }
        CHECK(r01->pair(v1) == dp(0, 1));
        CHECK(r03->pair(v3) == dp(0, 3));
    }

    RulePtr r159 = digitsystem_to_rule(DigitSystem::level_dependent({15, 9}));
    CHECK(r159->pair(w({})) == dp(0, 3));      // 15 mod 4
    CHECK(r159->pair(w({3})) == dp(0, 3));     // carry 3, next digit 9
    CHECK(r159->pair(w({0})) == dp(0, 1));     // no carry, digit 9
    CHECK(r159->pair(w({3, 3})) == dp(0, 1));  // carry consumed by a 0-digit
    CHECK(r159->pair(w({3, 0})) == dp(0, 3));  // carry persists through 9
    CHECK(r159->has_tail_certificate());
    CHECK(r159->id() == "DigitSystemRule(digits:15,9)");
}

TEST_CASE("digitsystem_to_rule: enumerate agrees with direct window membership") {
    std::vector<DigitSystem> systems = {
        DigitSystem::constant(1), DigitSystem::constant(3), DigitSystem::constant(9),
        DigitSystem::constant(-3), DigitSystem::level_dependent({15, 9})};
    for (const DigitSystem& s : systems) {
        RulePtr rule = digitsystem_to_rule(s);
        std::vector<BigInt> via_rule;
        for (const BigInt& v : enumerate(*rule, 8).values())
            if (v >= -1000 && v <= 1000) via_rule.push_back(v);
        std::vector<BigInt> via_window = lambda_A_window(s, 1000);
        CHECK(via_rule == via_window);
    }
}

TEST_CASE("compose: root split and set law") {
    CHECK_THROWS_AS(compose(Digit(1), jp_rule(), Digit(1), jp_rule()), parity_error);
    CHECK_THROWS_AS(compose(Digit(0), jp_rule(), Digit(2), jp_rule()), parity_error);

    RulePtr same = compose(Digit(0), jp_rule(), Digit(1), jp_rule());
    for (std::size_t L = 1; L <= 6; ++L)
        CHECK(enumerate(*same, L).values() == enumerate(*jp_rule(), L).values());

    RulePtr split = compose(Digit(0), jp_rule(), Digit(3), jp_rule());
    CHECK(enumerate(*split, 2).values() == big({0, 3, 4, 7}));

    // generic set law: members at bound L+1 are 4*(members of the subrule at L)
    // plus the root edge
    std::vector<std::pair<RulePtr, RulePtr>> pairs = {
        {jp_rule(), uniform_pair_per_level_rule({dp(0, 3)})},
        {exr4_rule(), jp_rule()},
        {uniform_pair_per_level_rule({dp(0, 3)}), uniform_pair_per_level_rule({dp(0, 3)})},
    };
    for (auto& [r1, r2] : pairs) {
        for (int e1 = 0; e1 <= 3; ++e1)
            for (int e2 = 0; e2 <= 3; ++e2) {
                if ((e1 % 2) == (e2 % 2)) continue;
                RulePtr c = compose(Digit(e1), r1, Digit(e2), r2);
                std::set<BigInt> want;
                for (const BigInt& v : enumerate(*r1, 4).values()) want.insert(4 * v + e1);
                for (const BigInt& v : enumerate(*r2, 4).values()) want.insert(4 * v + e2);
                std::vector<BigInt> got = enumerate(*c, 5).values();
                CHECK(got == std::vector<BigInt>(want.begin(), want.end()));
            }
    }

    RulePtr split2 = compose(Digit(0), jp_rule(), Digit(3), jp_rule());
    CHECK(validate_rule(*split2, 12).verified());
    CHECK(split2->pair(w({})) == dp(0, 3));
    CHECK(split2->pair(w({0})) == dp(0, 1));
    CHECK(split2->pair(w({3})) == dp(0, 1));
}

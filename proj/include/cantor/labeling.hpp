#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cantor/base4.hpp"
#include "cantor/errors.hpp"

namespace cantor {

// An unordered pair of parity-distinct base-4 digits offered at a tree vertex.
// Stored sorted; the constructor rejects equal-parity pairs.
class DigitPair {
public:
    DigitPair(Digit a, Digit b);
    Digit low() const { return lo_; }
    Digit high() const { return hi_; }
    Digit even() const { return lo_.even() ? lo_ : hi_; }
    Digit odd() const { return lo_.even() ? hi_ : lo_; }
    bool offers(Digit d) const { return d == lo_ || d == hi_; }
    bool operator==(const DigitPair& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }
    bool operator!=(const DigitPair& o) const { return !(*this == o); }

private:
    Digit lo_, hi_;
};

std::string to_string(const DigitPair& p);

enum class TailFeasibility { Yes, No, Unknown };

// A deterministic assignment of a digit pair to every vertex of the infinite
// binary tree, identified by its edge-label word from the root.   The set of
// integers read off root paths that become constantly 0 or constantly 3 is
// the generated maximal orthogonal family.
class LabelingRule {
public:
    virtual ~LabelingRule() = default;

    // the pair offered at `vertex`; total and deterministic
    virtual DigitPair pair(const DigitWord& vertex) const = 0;

    // whether an eventually-constant-0-or-3 continuation from every vertex is
    // guaranteed by the rule's structure (no finite search can prove this)
    virtual bool has_tail_certificate() const { return false; }
    virtual std::string tail_certificate_note() const { return {}; }

    // exact decision, where possible, of whether the all-`d` continuation
    // from `vertex` stays inside the labeled tree forever.  The default scans
    // a finite horizon and reports Unknown when the scan is inconclusive.
    virtual TailFeasibility tail_feasible(const DigitWord& vertex, Digit d) const;

    // stable identifier used in generated-set metadata and CLI output
    virtual std::string id() const = 0;
};

using RulePtr = std::shared_ptr<const LabelingRule>;

// ---- builtin rules ----

// {0,1} at every vertex
RulePtr jp_rule();

// pair at level n is cycle[n mod cycle.size()]
RulePtr uniform_pair_per_level_rule(std::vector<DigitPair> cycle);

// one spine of 1s; vertex 1^j (j >= 1) offers {1,2}; leaving the spine at
// 1^j enters a region offering {1,2} down to depth 2j-1, then {0,1} forever
RulePtr exr4_rule();

// growth law for the relabeling depths of counterexample_rule
struct GapFunction {
    enum class Kind { Paper, Poly } kind = Kind::Paper;
    unsigned degree = 2;  // Poly only

    // Paper: 10^(k+2); Poly: (k+2)^degree
    BigInt operator()(std::size_t k) const;
    std::string name() const;

    static GapFunction paper() { return {Kind::Paper, 0}; }
    static GapFunction poly(unsigned degree);
};

// starts from the all-{0,1} tree; whenever the branch choice at position N
// was the upper digit, the pair at depth gap(N) switches to {1,2} (and the
// upper choice there is the digit 2).  Generates a maximal orthogonal family
// that is provably not complete.
RulePtr counterexample_rule(GapFunction gap = GapFunction::paper());

// explicit per-vertex table consulted first, all other vertices delegated
RulePtr override_rule(std::map<DigitWord, DigitPair> table, RulePtr fallback);

// ---- digit systems: per-prefix pairs {0, odd} with arbitrary odd digits ----

class DigitSystem {
public:
    static DigitSystem constant(BigInt odd);
    // level n uses levels[min(n, levels.size()-1)]
    static DigitSystem level_dependent(std::vector<BigInt> levels);
    // exact-prefix table over previously chosen digit values, else fallback
    static DigitSystem per_prefix(std::map<std::vector<BigInt>, BigInt> table, BigInt fallback);

    // the odd digit paired with 0 after the given chosen-digit prefix
    const BigInt& odd_digit(const std::vector<BigInt>& prefix) const;
    // depth at or beyond which odd_digit no longer depends on the prefix
    std::size_t stabilization_depth() const { return stabilization_; }
    const BigInt& stable_digit() const { return fallback_; }
    // largest |digit| the system can emit
    const BigInt& magnitude_bound() const { return bound_; }
    std::string id() const;

private:
    DigitSystem() = default;
    std::vector<BigInt> levels_;
    std::map<std::vector<BigInt>, BigInt> table_;
    BigInt fallback_;
    BigInt bound_;
    std::size_t stabilization_ = 0;
    bool by_level_ = false;
};

// the unique rule whose generated family consists of exactly the integers
// representable as sums sum a_k 4^k with a_k drawn from the system; built by
// tracking the carry between system digits and base-4 tree digits
RulePtr digitsystem_to_rule(const DigitSystem& system);

// root pair {e1,e2}; the subtree under e1 is labeled by r1, under e2 by r2
RulePtr compose(Digit e1, RulePtr r1, Digit e2, RulePtr r2);

// ---- validation ----

struct ValidationReport {
    enum class Status { Verified, Failed, Inconclusive } status;
    std::size_t depth = 0;
    std::optional<DigitWord> failing_vertex;
    std::string note;
    bool verified() const { return status == Status::Verified; }
};

// Checks every tree vertex to depth D for a well-formed pair, and checks that
// from every vertex at depth <= D/2 some descending path reaches a vertex at
// depth <= D/2 from which a constant-0 or constant-3 continuation extends
// through depth D (or the rule's tail certificate covers the property).
ValidationReport validate_rule(const LabelingRule& rule, std::size_t depth);

// ---- enumeration ----

struct SpectrumEntry {
    BigInt value;
    Code path;
};

// finite truncation of a generated family: all members of length <= bound
struct SpectrumSet {
    std::vector<SpectrumEntry> elements;  // strictly increasing by value
    std::string rule_id;
    std::size_t length_bound = 0;

    bool contains(const BigInt& v) const;
    std::vector<BigInt> values() const;
};

inline constexpr std::size_t k_enumerate_default_node_budget = 1u << 26;

// all integers with lng <= length_bound whose full base-4 path (finite word
// padded by the constant tail) stays in the rule's tree
SpectrumSet enumerate(const LabelingRule& rule, std::size_t length_bound,
                      std::size_t node_budget = k_enumerate_default_node_budget);

// ---- expansions over a digit system ----

struct ExpansionResult {
    enum class Kind { Member, NotMember } kind = Kind::NotMember;
    std::vector<BigInt> prefix;        // digits before the repeating block
    std::vector<BigInt> cycle;         // nonempty repeating digit block (Member)
    std::size_t failure_position = 0;  // first step with no matching digit
    BigInt residual;                   // the stuck residual at that step

    bool is_member() const { return kind == Kind::Member; }
};

// Runs the forced-digit recursion r <- (r - a)/4 where a is the unique digit
// of the current pair matching r mod 4.  Declares Member when the residual
// state repeats past the system's stabilization depth, NotMember when no
// digit matches.
ExpansionResult a_expansion(const DigitSystem& system, const BigInt& k,
                            std::size_t max_steps = 10000);

// all k in [-radius, radius] whose expansion succeeds, sorted
std::vector<BigInt> lambda_A_window(const DigitSystem& system, const BigInt& radius);

} // namespace cantor

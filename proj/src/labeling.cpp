#include "cantor/labeling.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cantor {

namespace {

int parity_of(const BigInt& v) { return v % 2 == 0 ? 0 : 1; }

std::string join_pairs(const std::vector<DigitPair>& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += '+';
        out += std::to_string(ps[i].low().value());
        out += ',';
        out += std::to_string(ps[i].high().value());
    }
    return out;
}

} // namespace

DigitPair::DigitPair(Digit a, Digit b) : lo_(a), hi_(b) {
    if (a.even() == b.even())
        throw invalid_params("digit pair must contain one even and one odd digit");
    if (hi_ < lo_) std::swap(lo_, hi_);
}

std::string to_string(const DigitPair& p) {
    return "{" + std::to_string(p.low().value()) + "," + std::to_string(p.high().value()) + "}";
}

TailFeasibility LabelingRule::tail_feasible(const DigitWord& vertex, Digit d) const {
    DigitWord cur = vertex;
    for (int i = 0; i < 96; ++i) {
        if (!pair(cur).offers(d)) return TailFeasibility::No;
        cur.push_back(d);
    }
    return TailFeasibility::Unknown;
}

// ---- builtin: {0,1} everywhere ----

namespace {

class JpRule final : public LabelingRule {
public:
    DigitPair pair(const DigitWord&) const override { return DigitPair(Digit(0), Digit(1)); }
    bool has_tail_certificate() const override { return true; }
    std::string tail_certificate_note() const override {
        return "every vertex offers the digit 0";
    }
    TailFeasibility tail_feasible(const DigitWord&, Digit d) const override {
        return d.value() <= 1 ? TailFeasibility::Yes : TailFeasibility::No;
    }
    std::string id() const override { return "JP"; }
};

// ---- builtin: pair depends only on the level, cyclically ----

class UniformRule final : public LabelingRule {
public:
    explicit UniformRule(std::vector<DigitPair> cycle) : cycle_(std::move(cycle)) {
        if (cycle_.empty()) throw invalid_params("level cycle must be nonempty");
    }
    DigitPair pair(const DigitWord& v) const override { return cycle_[v.size() % cycle_.size()]; }
    bool has_tail_certificate() const override {
        for (Digit d : {Digit(0), Digit(3)}) {
            bool all = true;
            for (const DigitPair& p : cycle_) all = all && p.offers(d);
            if (all) return true;
        }
        return false;
    }
    std::string tail_certificate_note() const override {
        return "a constant digit is offered at every level of the cycle";
    }
    TailFeasibility tail_feasible(const DigitWord& v, Digit d) const override {
        for (std::size_t i = 0; i < cycle_.size(); ++i)
            if (!cycle_[(v.size() + i) % cycle_.size()].offers(d)) return TailFeasibility::No;
        return TailFeasibility::Yes;
    }
    std::string id() const override { return "UniformPairPerLevel(" + join_pairs(cycle_) + ")"; }

private:
    std::vector<DigitPair> cycle_;
};

// ---- builtin: spine of ones with widening {1,2} regions ----

std::size_t leading_ones(const DigitWord& v) {
    std::size_t j = 0;
    while (j < v.size() && v[j].value() == 1) ++j;
    return j;
}

class Exr4Rule final : public LabelingRule {
public:
    DigitPair pair(const DigitWord& v) const override {
        std::size_t j = leading_ones(v);
        if (j >= 1 && v.size() < 2 * j) return DigitPair(Digit(1), Digit(2));
        return DigitPair(Digit(0), Digit(1));
    }
    bool has_tail_certificate() const override { return true; }
    std::string tail_certificate_note() const override {
        return "leaving the spine crosses a bounded {1,2} region, then 0 is always offered";
    }
    TailFeasibility tail_feasible(const DigitWord& v, Digit d) const override {
        std::size_t j = leading_ones(v);
        switch (d.value()) {
            case 0: return (j == 0 || v.size() >= 2 * j) ? TailFeasibility::Yes
                                                         : TailFeasibility::No;
            case 1: return TailFeasibility::Yes;
            default: return TailFeasibility::No;  // 2 dies past the region, 3 never offered
        }
    }
    std::string id() const override { return "ExR4"; }
};

} // namespace

// ---- builtin: scheduled relabelings below upper-branch choices ----

BigInt GapFunction::operator()(std::size_t k) const {
    if (kind == Kind::Paper) return pow(BigInt(10), (unsigned)k + 2);
    return pow(BigInt(k) + 2, degree);
}

std::string GapFunction::name() const {
    if (kind == Kind::Paper) return "paper";
    return "poly:" + std::to_string(degree);
}

GapFunction GapFunction::poly(unsigned degree) {
    if (degree < 1) throw invalid_params("polynomial gap needs degree >= 1");
    return {Kind::Poly, degree};
}

namespace {

class CounterexampleRule final : public LabelingRule {
public:
    explicit CounterexampleRule(GapFunction gap) : gap_(gap) {}

    DigitPair pair(const DigitWord& v) const override {
        std::set<BigInt> pending;
        walk(v, pending);
        return pending.count(BigInt(v.size())) ? DigitPair(Digit(1), Digit(2))
                                               : DigitPair(Digit(0), Digit(1));
    }
    bool has_tail_certificate() const override { return true; }
    std::string tail_certificate_note() const override {
        return "finitely many scheduled {1,2} levels; choosing their lower digit "
               "schedules nothing new, then 0 is always offered";
    }
    TailFeasibility tail_feasible(const DigitWord& v, Digit d) const override {
        std::set<BigInt> pending;
        walk(v, pending);
        switch (d.value()) {
            case 0: return pending.empty() ? TailFeasibility::Yes : TailFeasibility::No;
            case 1: return TailFeasibility::Yes;  // offered whether or not relabeled
            case 2: {
                // needs every future level relabeled; scheduled levels are sparse
                BigInt level = v.size();
                std::size_t guard = v.size() + 4;
                while (guard--) {
                    if (pending.empty() || *pending.begin() != level) return TailFeasibility::No;
                    pending.erase(pending.begin());
                    pending.insert(gap_(level.convert_to<std::size_t>()));
                    ++level;
                }
                return TailFeasibility::Unknown;
            }
            default: return TailFeasibility::No;
        }
    }
    std::string id() const override { return "Counterexample(" + gap_.name() + ")"; }

private:
    // replays the branch history: upper choices at position N schedule a
    // relabeled level at gap(N); at relabeled levels the upper digit is 2.
    // afterwards `pending` holds exactly the scheduled levels >= v.size().
    void walk(const DigitWord& v, std::set<BigInt>& pending) const {
        for (std::size_t n = 0; n < v.size(); ++n) {
            bool relabeled = false;
            if (!pending.empty() && *pending.begin() == n) {
                pending.erase(pending.begin());
                relabeled = true;
            }
            bool upper = v[n].value() == (relabeled ? 2 : 1);
            if (upper) pending.insert(gap_(n));
        }
    }

    GapFunction gap_;
};

// ---- builtin: finite table of overrides over a fallback rule ----

class OverrideRule final : public LabelingRule {
public:
    OverrideRule(std::map<DigitWord, DigitPair> table, RulePtr fallback)
        : table_(std::move(table)), fallback_(std::move(fallback)) {
        if (!fallback_) throw invalid_params("override rule needs a fallback");
        for (const auto& [word, _] : table_) depth_ = std::max(depth_, word.size() + 1);
    }
    DigitPair pair(const DigitWord& v) const override {
        auto it = table_.find(v);
        return it != table_.end() ? it->second : fallback_->pair(v);
    }
    bool has_tail_certificate() const override { return fallback_->has_tail_certificate(); }
    std::string tail_certificate_note() const override {
        return fallback_->tail_certificate_note();
    }
    TailFeasibility tail_feasible(const DigitWord& v, Digit d) const override {
        DigitWord cur = v;
        while (cur.size() < depth_) {
            if (!pair(cur).offers(d)) return TailFeasibility::No;
            cur.push_back(d);
        }
        return fallback_->tail_feasible(cur, d);
    }
    std::string id() const override {
        return "Override(" + std::to_string(table_.size()) + " vertices over " +
               fallback_->id() + ")";
    }

private:
    std::map<DigitWord, DigitPair> table_;
    RulePtr fallback_;
    std::size_t depth_ = 0;
};

} // namespace

RulePtr jp_rule() { return std::make_shared<JpRule>(); }

RulePtr uniform_pair_per_level_rule(std::vector<DigitPair> cycle) {
    return std::make_shared<UniformRule>(std::move(cycle));
}

RulePtr exr4_rule() { return std::make_shared<Exr4Rule>(); }

RulePtr counterexample_rule(GapFunction gap) {
    return std::make_shared<CounterexampleRule>(gap);
}

RulePtr override_rule(std::map<DigitWord, DigitPair> table, RulePtr fallback) {
    return std::make_shared<OverrideRule>(std::move(table), std::move(fallback));
}

// ---- digit systems ----

namespace {

void require_odd(const BigInt& a) {
    if (a % 2 == 0) throw invalid_params("system digit must be odd: " + a.str());
}

} // namespace

DigitSystem DigitSystem::constant(BigInt odd) {
    require_odd(odd);
    DigitSystem s;
    s.by_level_ = true;
    s.levels_ = {odd};
    s.fallback_ = odd;
    s.bound_ = BigInt(abs(odd));
    s.stabilization_ = 0;
    return s;
}

DigitSystem DigitSystem::level_dependent(std::vector<BigInt> levels) {
    if (levels.empty()) throw invalid_params("need at least one level digit");
    DigitSystem s;
    s.by_level_ = true;
    for (const BigInt& a : levels) {
        require_odd(a);
        s.bound_ = std::max(s.bound_, BigInt(abs(a)));
    }
    s.fallback_ = levels.back();
    s.stabilization_ = levels.size() - 1;
    s.levels_ = std::move(levels);
    return s;
}

DigitSystem DigitSystem::per_prefix(std::map<std::vector<BigInt>, BigInt> table,
                                    BigInt fallback) {
    require_odd(fallback);
    DigitSystem s;
    s.by_level_ = false;
    s.bound_ = BigInt(abs(fallback));
    for (const auto& [word, a] : table) {
        require_odd(a);
        s.bound_ = std::max(s.bound_, BigInt(abs(a)));
        s.stabilization_ = std::max(s.stabilization_, word.size() + 1);
    }
    s.fallback_ = std::move(fallback);
    s.table_ = std::move(table);
    return s;
}

const BigInt& DigitSystem::odd_digit(const std::vector<BigInt>& prefix) const {
    if (by_level_) return levels_[std::min(prefix.size(), levels_.size() - 1)];
    auto it = table_.find(prefix);
    return it != table_.end() ? it->second : fallback_;
}

std::string DigitSystem::id() const {
    std::ostringstream os;
    if (by_level_) {
        os << "digits:";
        for (std::size_t i = 0; i < levels_.size(); ++i) os << (i ? "," : "") << levels_[i];
        return os.str();
    }
    os << "digits{";
    for (const auto& [word, a] : table_) {
        for (std::size_t i = 0; i < word.size(); ++i) os << (i ? "_" : "") << word[i];
        os << "=" << a << ";";
    }
    os << "default=" << fallback_ << "}";
    return os.str();
}

// ---- carry-tracking rule induced by a digit system ----

namespace {

class DigitSystemRule final : public LabelingRule {
public:
    explicit DigitSystemRule(DigitSystem system) : sys_(std::move(system)) {}

    DigitPair pair(const DigitWord& v) const override {
        State st = replay(v);
        return offered(st);
    }
    bool has_tail_certificate() const override { return true; }
    std::string tail_certificate_note() const override {
        return "choosing the zero digit forever drives the carry to 0 or -1, "
               "where the offered edge is constantly 0 or constantly 3";
    }
    TailFeasibility tail_feasible(const DigitWord& v, Digit d) const override {
        State st = replay(v);
        std::set<BigInt> seen;
        for (int guard = 0; guard < 100000; ++guard) {
            if (st.n >= sys_.stabilization_depth() && !seen.insert(st.carry).second)
                return TailFeasibility::Yes;  // closed a loop with every step offered
            if (!offered(st).offers(d)) return TailFeasibility::No;
            advance(st, d);
        }
        return TailFeasibility::Unknown;
    }
    std::string id() const override { return "DigitSystemRule(" + sys_.id() + ")"; }

private:
    struct State {
        BigInt carry = 0;
        std::vector<BigInt> chosen;  // capped at the stabilization depth
        std::size_t n = 0;
    };

    DigitPair offered(const State& st) const {
        int e0 = mod_pow4(st.carry, 1).convert_to<int>();
        int ea = mod_pow4(st.carry + sys_.odd_digit(st.chosen), 1).convert_to<int>();
        return DigitPair(Digit(e0), Digit(ea));
    }
    void advance(State& st, Digit edge) const {
        const BigInt& a = sys_.odd_digit(st.chosen);
        bool take_odd = (edge.value() % 2) != parity_of(st.carry);
        BigInt x = take_odd ? a : 0;
        st.carry = floor_div_pow4(st.carry + x - edge.value(), 1);
        if (st.chosen.size() < sys_.stabilization_depth()) st.chosen.push_back(x);
        ++st.n;
    }
    State replay(const DigitWord& v) const {
        State st;
        for (Digit d : v) advance(st, d);
        return st;
    }

    DigitSystem sys_;
};

// ---- root split between two subrules ----

class ComposeRule final : public LabelingRule {
public:
    ComposeRule(Digit e1, RulePtr r1, Digit e2, RulePtr r2)
        : e1_(e1), e2_(e2), r1_(std::move(r1)), r2_(std::move(r2)) {
        if (!r1_ || !r2_) throw invalid_params("compose needs two subrules");
    }
    DigitPair pair(const DigitWord& v) const override {
        if (v.empty()) return DigitPair(e1_, e2_);
        DigitWord rest(v.begin() + 1, v.end());
        return sub(v.front())->pair(rest);
    }
    bool has_tail_certificate() const override {
        return r1_->has_tail_certificate() && r2_->has_tail_certificate();
    }
    std::string tail_certificate_note() const override {
        return "both subtrees carry their own certificate";
    }
    TailFeasibility tail_feasible(const DigitWord& v, Digit d) const override {
        if (v.empty()) {
            if (d != e1_ && d != e2_) return TailFeasibility::No;
            return sub(d)->tail_feasible({}, d);
        }
        DigitWord rest(v.begin() + 1, v.end());
        return sub(v.front())->tail_feasible(rest, d);
    }
    std::string id() const override {
        return "Compose(" + std::to_string(e1_.value()) + "=" + r1_->id() + "," +
               std::to_string(e2_.value()) + "=" + r2_->id() + ")";
    }

private:
    const RulePtr& sub(Digit first) const { return first == e2_ ? r2_ : r1_; }

    Digit e1_, e2_;
    RulePtr r1_, r2_;
};

} // namespace

RulePtr digitsystem_to_rule(const DigitSystem& system) {
    return std::make_shared<DigitSystemRule>(system);
}

RulePtr compose(Digit e1, RulePtr r1, Digit e2, RulePtr r2) {
    if (e1.even() == e2.even())
        throw parity_error("root edges must have different parity: " +
                           std::to_string(e1.value()) + "," + std::to_string(e2.value()));
    return std::make_shared<ComposeRule>(e1, std::move(r1), e2, std::move(r2));
}

// ---- validation ----

namespace {

// does the all-d continuation from `v` stay offered through depth `horizon`?
bool constant_run_through(const LabelingRule& rule, DigitWord v, Digit d,
                          std::size_t horizon) {
    while (v.size() < horizon) {
        if (!rule.pair(v).offers(d)) return false;
        v.push_back(d);
    }
    return true;
}

// every vertex to depth `limit` must reach (within depth `limit`) a vertex
// whose constant-0 or constant-3 continuation extends through `horizon`.
// returns the first vertex with no such path, if any.
std::optional<DigitWord> find_unsettled(const LabelingRule& rule, DigitWord& v,
                                        std::size_t limit, std::size_t horizon,
                                        bool& subtree_ok) {
    bool here = constant_run_through(rule, v, Digit(0), horizon) ||
                constant_run_through(rule, v, Digit(3), horizon);
    bool below = false;
    std::optional<DigitWord> bad;
    if (v.size() < limit) {
        DigitPair p = rule.pair(v);
        for (Digit d : {p.low(), p.high()}) {
            bool ok = false;
            v.push_back(d);
            auto sub_bad = find_unsettled(rule, v, limit, horizon, ok);
            v.pop_back();
            below = below || ok;
            if (!bad && sub_bad) bad = sub_bad;
        }
    }
    subtree_ok = here || below;
    if (!subtree_ok && !bad) bad = v;
    return subtree_ok ? std::nullopt : bad;
}

} // namespace

ValidationReport validate_rule(const LabelingRule& rule, std::size_t depth) {
    if (depth < 1) throw invalid_params("validation depth must be >= 1");
    ValidationReport rep;
    rep.depth = depth;

    // well-formed pair at every tree vertex to the horizon; DigitPair
    // construction enforces parity, so a violation surfaces as an exception
    DigitWord v;
    auto walk = [&](auto&& self) -> bool {
        DigitPair p = rule.pair(v);
        if (v.size() == depth) return true;
        for (Digit d : {p.low(), p.high()}) {
            v.push_back(d);
            bool ok = self(self);
            v.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    try {
        walk(walk);
    } catch (const invalid_params&) {
        rep.status = ValidationReport::Status::Failed;
        rep.failing_vertex = v;
        rep.note = "ill-formed digit pair";
        return rep;
    }

    if (rule.has_tail_certificate()) {
        rep.status = ValidationReport::Status::Verified;
        rep.note = rule.tail_certificate_note();
        return rep;
    }

    DigitWord root;
    bool ok = false;
    auto bad = find_unsettled(rule, root, depth / 2, depth, ok);
    if (!bad) {
        rep.status = ValidationReport::Status::Verified;
        rep.note = "constant continuations found from every vertex to the horizon";
    } else {
        rep.status = ValidationReport::Status::Inconclusive;
        rep.failing_vertex = *bad;
        rep.note = "no constant-0 or constant-3 continuation found within the horizon";
    }
    return rep;
}

// ---- enumeration ----

bool SpectrumSet::contains(const BigInt& v) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), v,
                               [](const SpectrumEntry& e, const BigInt& x) { return e.value < x; });
    return it != elements.end() && it->value == v;
}

std::vector<BigInt> SpectrumSet::values() const {
    std::vector<BigInt> out;
    out.reserve(elements.size());
    for (const SpectrumEntry& e : elements) out.push_back(e.value);
    return out;
}

SpectrumSet enumerate(const LabelingRule& rule, std::size_t length_bound,
                      std::size_t node_budget) {
    if (length_bound >= 62 || (std::size_t(1) << (length_bound + 1)) > node_budget)
        throw budget_exceeded("enumeration needs 2^" + std::to_string(length_bound + 1) +
                              " nodes, budget is " + std::to_string(node_budget));
    SpectrumSet out;
    out.rule_id = rule.id();
    out.length_bound = length_bound;

    DigitWord v;
    auto dfs = [&](auto&& self) -> void {
        if (v.size() == length_bound) {
            for (TailKind tail : {TailKind::Zero, TailKind::Three}) {
                if (rule.tail_feasible(v, Digit(tail_digit(tail))) != TailFeasibility::Yes)
                    continue;
                Code c{v, tail};
                c.canonicalize();
                out.elements.push_back({decode(c), std::move(c)});
            }
            return;
        }
        DigitPair p = rule.pair(v);
        for (Digit d : {p.low(), p.high()}) {
            v.push_back(d);
            self(self);
            v.pop_back();
        }
    };
    dfs(dfs);

    std::sort(out.elements.begin(), out.elements.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    for (std::size_t i = 1; i < out.elements.size(); ++i)
        if (out.elements[i - 1].value == out.elements[i].value)
            throw error("enumeration produced a duplicate value: " +
                        out.elements[i].value.str());
    return out;
}

// ---- expansions ----

ExpansionResult a_expansion(const DigitSystem& system, const BigInt& k,
                            std::size_t max_steps) {
    if (max_steps < 1) throw invalid_params("expansion needs at least one step");
    ExpansionResult out;
    std::vector<BigInt> digits;
    std::map<BigInt, std::size_t> seen;  // residual -> step, past stabilization
    BigInt r = k;
    for (std::size_t n = 0; n < max_steps; ++n) {
        if (n >= system.stabilization_depth()) {
            auto [it, fresh] = seen.emplace(r, n);
            if (!fresh) {
                out.kind = ExpansionResult::Kind::Member;
                out.prefix.assign(digits.begin(), digits.begin() + it->second);
                out.cycle.assign(digits.begin() + it->second, digits.end());
                return out;
            }
        }
        const BigInt& a = system.odd_digit(digits);
        BigInt rm = mod_pow4(r, 1);
        BigInt d;
        if (rm == 0)
            d = 0;
        else if (rm == mod_pow4(a, 1))
            d = a;
        else {
            out.kind = ExpansionResult::Kind::NotMember;
            out.failure_position = n;
            out.residual = r;
            return out;
        }
        digits.push_back(d);
        r = floor_div_pow4(r - d, 1);
    }
    throw step_budget_exceeded("no cycle or failure within " + std::to_string(max_steps) +
                               " expansion steps");
}

std::vector<BigInt> lambda_A_window(const DigitSystem& system, const BigInt& radius) {
    if (radius < 1) throw invalid_params("window radius must be >= 1");
    std::vector<BigInt> out;
    for (BigInt k = -radius; k <= radius; ++k)
        if (a_expansion(system, k).is_member()) out.push_back(k);
    return out;
}

} // namespace cantor

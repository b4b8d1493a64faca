#include "cantor/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cantor {

namespace {

constexpr double k_inf = std::numeric_limits<double>::infinity();

double up(double x) { return std::nextafter(x, k_inf); }
double dn(double x) { return std::nextafter(x, -k_inf); }

// Products with a 0.0 or 1.0 operand and sums with a 0.0 addend are exact in
// IEEE-754; bumping them outward anyway would spoil exact grid points (h(0)
// must come out as literally 1.0 for a complete family).
double mul_dn(double a, double b) {
    double p = a * b;
    return (a == 0.0 || b == 0.0 || a == 1.0 || b == 1.0) ? p : dn(p);
}
double mul_up(double a, double b) {
    double p = a * b;
    return (a == 0.0 || b == 0.0 || a == 1.0 || b == 1.0) ? p : up(p);
}
double add_up(double a, double b) { return b == 0.0 ? a : up(a + b); }

// ---- exact double helpers ----

// s = fl(a+b) and the exact rounding error (Knuth two-sum)
struct SplitSum {
    double s, err;
};
SplitSum two_sum(double a, double b) {
    double s = a + b;
    double bv = s - a;
    double e = (a - (s - bv)) + (b - bv);
    return {s, e};
}

// running sum with a certified bound on the accumulated rounding error
struct CertSum {
    double s = 0.0;
    double e = 0.0;  // >= sum of |rounding errors|, maintained by up-rounding

    void add(double x) {
        SplitSum t = two_sum(s, x);
        s = t.s;
        if (t.err != 0.0) e = up(e + std::abs(t.err));
    }
    void merge(const CertSum& o) {
        add(o.s);
        if (o.e != 0.0) e = up(e + o.e);
    }
    double lower() const { return e == 0.0 ? s : dn(s - e); }
    double upper() const { return e == 0.0 ? s : up(s + e); }
};

bool word_in_tree(const LabelingRule& rule, const DigitWord& v) {
    DigitWord prefix;
    prefix.reserve(v.size());
    for (Digit d : v) {
        if (!rule.pair(prefix).offers(d)) return false;
        prefix.push_back(d);
    }
    return true;
}

// DFS over suffix digit strings of length <= budget; constant tails tried at
// every prefix, Zero before Three, lower digit first
bool suffix_search(const LabelingRule& rule, DigitWord& word, std::size_t budget,
                   DigitWord& suffix, TailKind& tail_out) {
    for (TailKind t : {TailKind::Zero, TailKind::Three})
        if (rule.tail_feasible(word, Digit(tail_digit(t))) == TailFeasibility::Yes) {
            tail_out = t;
            return true;
        }
    if (budget == 0) return false;
    DigitPair p = rule.pair(word);
    for (Digit d : {p.low(), p.high()}) {
        word.push_back(d);
        suffix.push_back(d);
        if (suffix_search(rule, word, budget - 1, suffix, tail_out)) return true;
        word.pop_back();
        suffix.pop_back();
    }
    return false;
}

} // namespace

GoodPathResult good_path_exists(const LabelingRule& rule, const DigitWord& vertex,
                                const GoodPathParams& params) {
    if (params.horizon < params.q + 1)
        throw invalid_params("good_path_exists: horizon must exceed the suffix bound");
    if (!word_in_tree(rule, vertex))
        throw invalid_params("good_path_exists: start vertex is not in the tree");

    DigitWord word = vertex;
    DigitWord chain;  // even-digit segment grown below the vertex
    std::size_t twos = 0;
    for (std::size_t s = 0;; ++s) {
        DigitWord suffix;
        TailKind tail = TailKind::Zero;
        std::size_t budget = std::min(params.q, params.horizon - s);
        if (suffix_search(rule, word, budget, suffix, tail)) {
            DigitWord prefix = chain;
            prefix.insert(prefix.end(), suffix.begin(), suffix.end());
            GoodPathResult r;
            r.found = true;
            r.witness = Code{prefix, tail};
            r.witness.canonicalize();
            return r;
        }
        if (s == params.horizon) break;
        Digit e = rule.pair(word).even();
        if (e.value() == 2) {
            if (twos == params.p) break;
            ++twos;
        }
        word.push_back(e);
        chain.push_back(e);
    }
    GoodPathResult r;
    r.found = false;
    r.horizon = params.horizon;
    return r;
}

namespace {

// shallowest-first, low-digit-first search for a vertex with no good path;
// vertices that lie on one of the given paths are skipped
std::optional<DigitWord> sweep_for_failure(const LabelingRule& rule,
                                           const GoodPathParams& params,
                                           std::size_t depth,
                                           const ExceptionalPathSet& paths) {
    auto on_path = [&](const DigitWord& w) {
        for (const PeriodicPath& p : paths) {
            bool all = true;
            for (std::size_t i = 0; i < w.size() && all; ++i)
                if (w[i] != p.at(i)) all = false;
            if (all) return true;
        }
        return false;
    };
    for (std::size_t level = 0; level <= depth; ++level) {
        DigitWord word;
        std::optional<DigitWord> found;
        auto walk = [&](auto&& self) -> void {
            if (found) return;
            if (word.size() == level) {
                if (!on_path(word) && !good_path_exists(rule, word, params).found)
                    found = word;
                return;
            }
            DigitPair p = rule.pair(word);
            for (Digit d : {p.low(), p.high()}) {
                word.push_back(d);
                self(self);
                word.pop_back();
                if (found) return;
            }
        };
        walk(walk);
        if (found) return found;
    }
    return std::nullopt;
}

} // namespace

VertexSweepReport check_all_vertices(const LabelingRule& rule,
                                     const GoodPathParams& params,
                                     std::size_t depth) {
    if (depth > 20) throw budget_exceeded("check_all_vertices: depth limited to 20");
    VertexSweepReport r;
    r.depth = depth;
    r.failing_vertex = sweep_for_failure(rule, params, depth, {});
    r.all_good = !r.failing_vertex.has_value();
    return r;
}

// ---- exceptional paths ----

Digit PeriodicPath::at(std::size_t n) const {
    if (n < head.size()) return head[n];
    if (cycle.empty()) throw invalid_params("PeriodicPath: empty cycle");
    return cycle[(n - head.size()) % cycle.size()];
}

bool PeriodicPath::eventually_constant() const {
    if (cycle.empty()) throw invalid_params("PeriodicPath: empty cycle");
    for (Digit d : cycle)
        if (d != cycle.front()) return false;
    return true;
}

std::string PeriodicPath::to_string() const {
    std::string out;
    if (!head.empty()) out = cantor::to_string(head) + " | ";
    out += cantor::to_string(cycle) + "~";
    return out;
}

ExceptionalReport check_exceptional_paths(const LabelingRule& rule,
                                          const ExceptionalPathSet& paths,
                                          const GoodPathParams& params,
                                          std::size_t depth) {
    if (depth > 20)
        throw budget_exceeded("check_exceptional_paths: depth limited to 20");
    ExceptionalReport r;
    r.depth = depth;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const PeriodicPath& p = paths[i];
        if (p.cycle.empty())
            throw invalid_params("check_exceptional_paths: empty cycle");
        if (p.eventually_constant() &&
            (p.cycle.front().value() == 0 || p.cycle.front().value() == 3)) {
            r.bad_path = i;
            r.note = "path " + p.to_string() + " is eventually constant " +
                     std::to_string(p.cycle.front().value()) +
                     " and already encodes a member";
            return r;
        }
        DigitWord prefix;
        for (std::size_t n = 0; n < depth; ++n) {
            Digit d = p.at(n);
            if (!rule.pair(prefix).offers(d)) {
                r.bad_path = i;
                r.note = "path " + p.to_string() + " leaves the tree at level " +
                         std::to_string(n);
                return r;
            }
            prefix.push_back(d);
        }
    }
    r.failing_vertex = sweep_for_failure(rule, params, depth, paths);
    if (r.failing_vertex) {
        r.note = "off-path vertex without a good path";
        return r;
    }
    r.certified = true;
    r.note = "every off-path vertex to depth " + std::to_string(depth) +
             " admits a good path";
    return r;
}

// ---- completeness ----

std::vector<double> default_grid(std::size_t n) {
    if (n == 0) throw invalid_params("default_grid: need at least one point");
    int s = 0;
    while ((std::size_t{1} << s) < n) ++s;
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = std::ldexp((double)k, -s);
    return g;
}

namespace {

// certified enclosures of F on a uniform dyadic grid over [-0.2505, 0.2505];
// used to finish truncated products once the argument is small
struct LeafTable {
    static constexpr int k_shift = 22;           // spacing 2^-22
    static constexpr long long k_imax = 1050674; // ceil(0.2505 * 2^22)
    // |F''| <= 8 pi^2/15 + 4 pi^2/9 < 9.65, so the chord on one cell is off
    // by at most 9.65 * (2^-22)^2 / 8
    static constexpr double k_curv = 7e-14;
    std::vector<Enclosure> nodes;

    LeafTable() {
        nodes.resize(2 * k_imax + 1);
        for (long long i = -k_imax; i <= k_imax; ++i)
            nodes[(std::size_t)(i + k_imax)] =
                phi_hat_sq(std::ldexp((double)i, -k_shift));
    }

    Enclosure lookup(double y, double err) const {
        if (y == 0.0 && err == 0.0) return {1.0, 1.0};
        double ylo = y - err, yhi = y + err;
        long long i0 = (long long)std::floor(std::ldexp(ylo, k_shift));
        long long i1 = (long long)std::floor(std::ldexp(yhi, k_shift)) + 1;
        if (i0 < -k_imax || i1 > k_imax)
            throw invalid_params("completeness: truncated argument out of range");
        double lo = 1.0, hi = 0.0;
        for (long long i = i0; i <= i1; ++i) {
            const Enclosure& e = nodes[(std::size_t)(i + k_imax)];
            lo = std::min(lo, e.lo);
            hi = std::max(hi, e.hi);
        }
        return {std::max(0.0, lo - k_curv), std::min(1.0, hi + k_curv)};
    }
};

const LeafTable& leaf_table() {
    static const LeafTable t;
    return t;
}

// one certified factor m((t + val)/4^j) with the argument error tracked
Enclosure factor_at(double t, double val, int j) {
    SplitSum s = two_sum(t, val);
    double scale = std::ldexp(1.0, -2 * j);
    return weight_bracket(s.s * scale, std::abs(s.err) * scale);
}

struct WalkAccum {
    CertSum lo, hi;
    void add(double l, double h) {
        lo.add(l);
        hi.add(h);
    }
    void merge(const WalkAccum& o) {
        lo.merge(o.lo);
        hi.merge(o.hi);
    }
};

struct RuleWalk {
    const LabelingRule& rule;
    double t;
    std::size_t length;
    double prune;
    DigitWord word;

    WalkAccum run() {
        WalkAccum acc;
        descend(0.0, {1.0, 1.0}, acc);
        return acc;
    }

    void leaf(double val, const Enclosure& partial, WalkAccum& acc) {
        for (TailKind tk : {TailKind::Zero, TailKind::Three}) {
            if (rule.tail_feasible(word, Digit(tail_digit(tk))) !=
                TailFeasibility::Yes)
                continue;
            double lam =
                tk == TailKind::Zero ? val : val - std::ldexp(1.0, 2 * (int)length);
            Enclosure f1 = factor_at(t, lam, (int)length + 1);
            Enclosure f2 = factor_at(t, lam, (int)length + 2);
            SplitSum s = two_sum(t, lam);
            double scale = std::ldexp(1.0, -2 * ((int)length + 2));
            Enclosure rest = leaf_table().lookup(s.s * scale,
                                                 std::abs(s.err) * scale);
            double lo = partial.lo;
            double hi = partial.hi;
            for (const Enclosure& f : {f1, f2, rest}) {
                lo = std::max(0.0, mul_dn(lo, f.lo));
                hi = mul_up(hi, f.hi);
            }
            acc.add(lo, hi);
        }
    }

    void descend(double val, Enclosure partial, WalkAccum& acc) {
        if (word.size() == length) {
            leaf(val, partial, acc);
            return;
        }
        DigitPair p = rule.pair(word);
        int d = (int)word.size();
        for (Digit dig : {p.low(), p.high()}) {
            double cval = val + (double)dig.value() * std::ldexp(1.0, 2 * d);
            Enclosure f = factor_at(t, cval, d + 1);
            Enclosure cpart{std::max(0.0, mul_dn(partial.lo, f.lo)),
                            mul_up(partial.hi, f.hi)};
            if (cpart.hi <= prune) continue;  // mass covered by the family tail
            word.push_back(dig);
            descend(cval, cpart, acc);
            word.pop_back();
        }
    }
};

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw invalid_params("completeness: empty grid");
    for (double t : grid)
        if (!std::isfinite(t) || std::abs(t) > 2.0)
            throw invalid_params("completeness: grid points must satisfy |t| <= 2");
}

CertReport finish_report(CertReport&& r, const CompletenessConfig& cfg) {
    r.min_h = *std::min_element(r.h.begin(), r.h.end());
    r.max_h = *std::max_element(r.h.begin(), r.h.end());
    r.margin = std::max(0.0, 1.0 - r.min_h);
    std::size_t worst = 0;
    for (std::size_t i = 1; i < r.h_hi.size(); ++i)
        if (r.h_hi[i] < r.h_hi[worst]) worst = i;
    if (r.tail_certified && r.h_hi[worst] < 1.0) {
        r.verdict = CertReport::Verdict::DeficientAt;
        r.deficient_t = r.grid[worst];
        r.gap = 1.0 - r.h_hi[worst];
    } else if (r.min_h >= 1.0 - cfg.margin) {
        r.verdict = CertReport::Verdict::LooksComplete;
    } else {
        r.verdict = CertReport::Verdict::Inconclusive;
    }
    return std::move(r);
}

// pairwise reduction in index order over per-element certified enclosures
WalkAccum pairwise_sum(const std::vector<Enclosure>& terms, std::size_t a,
                       std::size_t b) {
    WalkAccum acc;
    if (b - a <= 8) {
        for (std::size_t i = a; i < b; ++i) acc.add(terms[i].lo, terms[i].hi);
        return acc;
    }
    std::size_t mid = a + (b - a) / 2;
    acc = pairwise_sum(terms, a, mid);
    acc.merge(pairwise_sum(terms, mid, b));
    return acc;
}

void check_pairwise_orthogonal(const SpectrumSet& set) {
    const auto& el = set.elements;
    std::size_t n = el.size();
    auto bad = [&](std::size_t i, std::size_t j) {
        return !orthogonal(el[i].value, el[j].value);
    };
    if (n <= 4096) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (bad(i, j))
                    throw orthogonality_violation(
                        "completeness: set is not pairwise orthogonal");
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t step = 1; i + step < n; step <<= 1)
            if (bad(i, i + step))
                throw orthogonality_violation(
                    "completeness: set is not pairwise orthogonal");
}

} // namespace

CertReport completeness(const LabelingRule& rule, std::size_t length_bound,
                        const std::vector<double>& grid,
                        const CompletenessConfig& cfg) {
    validate_grid(grid);
    if (length_bound < 1 || length_bound > 24)
        throw invalid_params("completeness: length bound must be in [1, 24]");
    CertReport r;
    r.grid = grid;
    r.length_bound = length_bound;
    r.tail_certified = true;  // the rule's own family is the orthogonal superset
    for (double t : grid) {
        RuleWalk walk{rule, t, length_bound, cfg.prune, {}};
        WalkAccum acc = walk.run();
        double lo = std::max(0.0, acc.lo.lower());
        double tail = lo >= 1.0 ? 0.0 : up(1.0 - lo);
        r.h.push_back(lo);
        r.h_hi.push_back(add_up(acc.hi.upper(), tail));
    }
    return finish_report(std::move(r), cfg);
}

CertReport completeness(const SpectrumSet& set, const std::vector<double>& grid,
                        const CompletenessConfig& cfg) {
    validate_grid(grid);
    if (set.elements.empty()) throw invalid_params("completeness: empty set");
    check_pairwise_orthogonal(set);
    if (cfg.tail_superset) check_pairwise_orthogonal(*cfg.tail_superset);

    CertReport r;
    r.grid = grid;
    r.length_bound = set.length_bound;
    r.tail_certified = cfg.tail_superset != nullptr;
    std::vector<Enclosure> terms(set.elements.size());
    for (double t : grid) {
        for (std::size_t i = 0; i < terms.size(); ++i)
            terms[i] = phi_hat_sq_shift(t, set.elements[i].value);
        WalkAccum acc = pairwise_sum(terms, 0, terms.size());
        double lo = std::max(0.0, acc.lo.lower());
        double hi = acc.hi.upper();
        if (cfg.tail_superset) {
            std::vector<Enclosure> sup(cfg.tail_superset->elements.size());
            for (std::size_t i = 0; i < sup.size(); ++i)
                sup[i] = phi_hat_sq_shift(t, cfg.tail_superset->elements[i].value);
            WalkAccum sacc = pairwise_sum(sup, 0, sup.size());
            double slo = std::max(0.0, sacc.lo.lower());
            double tail = slo >= 1.0 ? 0.0 : up(1.0 - slo);
            hi = add_up(hi, tail);
        }
        r.h.push_back(lo);
        r.h_hi.push_back(hi);
    }
    return finish_report(std::move(r), cfg);
}

std::string CertReport::verdict_string() const {
    char buf[96];
    switch (verdict) {
        case Verdict::LooksComplete:
            std::snprintf(buf, sizeof buf, "LooksComplete(min_h=%.12g)", min_h);
            break;
        case Verdict::DeficientAt:
            std::snprintf(buf, sizeof buf, "DeficientAt(t=%.6g, gap=%.6g)",
                          deficient_t, gap);
            break;
        case Verdict::Inconclusive:
            std::snprintf(buf, sizeof buf, "Inconclusive(min_h=%.12g)", min_h);
            break;
    }
    return buf;
}

// ---- maximality ----

namespace {

MaximalityOutcome classify_outsider(const SpectrumSet& set, const BigInt& k,
                                    const LabelingRule* rule) {
    MaximalityOutcome o;
    o.k = k;
    for (const SpectrumEntry& e : set.elements)
        if (!orthogonal(k, e.value)) {
            o.kind = MaximalityOutcome::Kind::Witnessed;
            o.witness = e.value;
            return o;
        }
    o.kind = MaximalityOutcome::Kind::Undominated;
    if (!rule) {
        o.note = "orthogonal to the whole window";
        return o;
    }
    Code c = encode(k);
    Digit taild = Digit(tail_digit(c.tail));
    DigitWord prefix;
    bool tail_checked = false;
    constexpr std::size_t k_walk_cap = 200000;
    for (std::size_t n = 0; n <= k_walk_cap; ++n) {
        if (n >= c.prefix.size() && !tail_checked) {
            tail_checked = true;
            TailFeasibility tf = rule->tail_feasible(prefix, taild);
            if (tf == TailFeasibility::Yes) {
                // k itself belongs to the untruncated family, so it extends
                // the window set: report the truncation as non-maximal
                // rather than inventing a certificate
                o.note = "member of the untruncated family";
                return o;
            }
            if (tf == TailFeasibility::Unknown) {
                o.note = "constant-tail feasibility undecided";
                return o;
            }
        }
        if (n == k_walk_cap) break;
        Digit d = c.digit(n);
        if (!rule->pair(prefix).offers(d)) {
            // the offered digit of the same parity differs by exactly 2, so
            // k minus any member through that branch has odd 2-adic valuation
            o.kind = MaximalityOutcome::Kind::DominatedByRule;
            o.exit_level = n;
            o.note = "tree exit at level " + std::to_string(n) +
                     " certifies a non-orthogonal member beyond the window";
            return o;
        }
        prefix.push_back(d);
    }
    o.note = "no tree exit within the walk cap";
    return o;
}

} // namespace

MaximalityReport maximality_window(const SpectrumSet& set, const BigInt& radius,
                                   const LabelingRule* rule) {
    if (radius < 1) throw invalid_params("maximality_window: radius must be >= 1");
    MaximalityReport r;
    r.radius = radius;
    for (BigInt k = -radius; k <= radius; ++k) {
        if (set.contains(k)) continue;
        MaximalityOutcome o = classify_outsider(set, k, rule);
        switch (o.kind) {
            case MaximalityOutcome::Kind::Witnessed: ++r.witnessed; break;
            case MaximalityOutcome::Kind::DominatedByRule: ++r.dominated; break;
            case MaximalityOutcome::Kind::Undominated: ++r.undominated; break;
        }
        r.outcomes.push_back(std::move(o));
    }
    return r;
}

// ---- scheduled-relabeling deficiency bound ----

SpectrumSet counterexample_family(const GapFunction& gap, std::size_t n_max) {
    if (n_max > 16)
        throw budget_exceeded("counterexample_family: too many indices");
    BigInt top = gap(n_max);
    if (top > 4194304)
        throw budget_exceeded("counterexample_family: members exceed size budget");

    std::vector<BigInt> units;
    for (std::size_t k = 0; k <= n_max; ++k) {
        BigInt g = gap(k);
        units.push_back(BigInt(pow(BigInt(4), g.convert_to<unsigned>()) +
                               pow(BigInt(4), (unsigned)k)));
    }
    std::vector<BigInt> values;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n_max + 1)); ++mask) {
        BigInt v = 0;
        for (std::size_t k = 0; k <= n_max; ++k)
            if ((mask >> k) & 1) v += units[k];
        values.push_back(v);
    }
    std::sort(values.begin(), values.end());

    SpectrumSet s;
    s.rule_id = "Counterexample(" + gap.name() + ")";
    for (const BigInt& v : values) s.elements.push_back({v, encode(v)});
    s.length_bound = lng(values.back());
    return s;
}

CounterexampleBound counterexample_sum(const GapFunction& gap, std::size_t n_max,
                                       const EvalConfig& cfg) {
    SpectrumSet fam = counterexample_family(gap, n_max);
    CounterexampleBound b;
    b.n_max = n_max;
    b.terms = fam.elements.size();

    CertSum sum;
    for (const SpectrumEntry& e : fam.elements)
        sum.add(phi_hat_sq_shift(1.0, e.value, cfg).hi);
    b.numeric_sum = sum.upper();

    // per-index bound: the largest member digit sits at position g(N) with
    // gamma_N = g(N) - max(g(N-1), N) zero digits at and below it, so the
    // factor at level g(N)+1 is sin^2(2 pi eps) <= 4 pi^2 4^(-2 gamma_N) and
    // the 2^N subsets with max index N contribute 2^N 4 pi^2 4^(-2 gamma_N).
    // The ratio between consecutive bounds is 2 * 4^(-2 (gamma_{N+1} -
    // gamma_N)) <= 1/8: for the 10^(k+2) law gamma_N = 9*10^(N+1), and for
    // (k+2)^c with c >= 2 gamma_N = (N+2)^c - (N+1)^c has second difference
    // >= 2.  Degree-1 gaps give gamma constant and a divergent series.
    bool decays = gap.kind == GapFunction::Kind::Paper ||
                  (gap.kind == GapFunction::Kind::Poly && gap.degree >= 2);
    if (!decays) {
        b.tail_bound = k_inf;
        return b;
    }
    const double log2_4pi2 = 5.3030;  // rounded up
    double total = 0.0;
    double last = 0.0;
    for (std::size_t n = n_max + 1; n <= n_max + 64; ++n) {
        BigInt gamma = gap(n) - std::max(gap(n - 1), BigInt(n));
        double glo = dn(gamma.convert_to<double>());
        double l2 = (double)n + log2_4pi2 - 4.0 * glo;
        last = l2 > -1070.0 ? up(std::exp2(l2) * (1.0 + 4e-16)) : 0.0;
        total = up(total + last);
    }
    total = up(total + up(last / 7.0));  // geometric remainder, ratio <= 1/8
    b.tail_bound = std::max(total, 1e-300);
    return b;
}

// ---- partition identity ----

double partition_identity_residual(const LabelingRule& rule, double x,
                                   std::size_t n) {
    if (n > 14)
        throw budget_exceeded("partition_identity_residual: depth limited to 14");
    if (!std::isfinite(x))
        throw invalid_params("partition_identity_residual: x must be finite");
    if (n == 0) return 0.0;
    double sum = 0.0;
    DigitWord word;
    // s carries (x + value(word)) / 4^|word|
    auto walk = [&](auto&& self, double s, double prod) -> void {
        if (word.size() == n) {
            sum += prod;
            return;
        }
        DigitPair p = rule.pair(word);
        for (Digit d : {p.low(), p.high()}) {
            double u = (s + (double)d.value()) * 0.25;
            word.push_back(d);
            self(self, u, prod * weight(u));
            word.pop_back();
        }
    };
    walk(walk, x, 1.0);
    return std::abs(sum - 1.0);
}

} // namespace cantor

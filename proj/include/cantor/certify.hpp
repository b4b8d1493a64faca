#pragma once

// Certification machinery on top of the labeling and measure modules:
//   - good-path search: the sufficiency condition for a labeled tree to
//     generate a spectrum (an even-label segment with a bounded number of 2s
//     followed by a short suffix),
//   - completeness: certified lower/upper bounds on h(t) = sum over the
//     family of |phi(t+lambda)|^2, with a Bessel-based tail bound when a
//     spectral superset is supplied,
//   - maximality windows: every integer outside the family is non-orthogonal
//     to some member, witnessed explicitly or by an exit-level certificate,
//   - the scheduled-relabeling deficiency bound: a certified proof that the
//     gap-family sum at t = 1 stays strictly below 1,
//   - exceptional-path certification: spectrum-hood via finitely many
//     non-terminating paths whose complement subtrees all pass the good-path
//     sweep,
//   - the depth-N partition identity: the tree slices of F sum to 1.

#include <optional>
#include <string>
#include <vector>

#include "cantor/labeling.hpp"
#include "cantor/measure.hpp"

namespace cantor {

// ---- good paths ----

struct GoodPathParams {
    std::size_t p = 0;        // max occurrences of the label 2 in the even segment
    std::size_t q = 0;        // max length of the trailing suffix integer
    std::size_t horizon = 64; // cap on the explored depth below the start vertex
};
// requires horizon >= q + 1

struct GoodPathResult {
    bool found = false;
    Code witness;             // label stream read from the start vertex
    std::size_t horizon = 0;  // the search cap that was exhausted when !found
};

// Searches below `vertex` for a path  omega_0 omega_1 ...  such that for some
// split point the leading labels are all in {0,2} with at most p twos and the
// remaining labels, read as an integer, have lng <= q.  The even segment may
// be empty.  Witnesses are reported shortest-segment-first, low-digit-first.
GoodPathResult good_path_exists(const LabelingRule& rule, const DigitWord& vertex,
                                const GoodPathParams& params);

struct VertexSweepReport {
    bool all_good = false;
    std::size_t depth = 0;
    std::optional<DigitWord> failing_vertex;  // shallowest, low-digit-first
};

// good_path_exists from every in-tree vertex with |v| <= depth (depth <= 20)
VertexSweepReport check_all_vertices(const LabelingRule& rule,
                                     const GoodPathParams& params, std::size_t depth);

// ---- exceptional paths ----

// eventually periodic infinite digit stream: head, then cycle repeated forever
struct PeriodicPath {
    DigitWord head;
    DigitWord cycle;  // nonempty

    Digit at(std::size_t n) const;
    bool eventually_constant() const;  // cycle all one digit value
    std::string to_string() const;     // "1~", "0 1 | 2 1~"
};

using ExceptionalPathSet = std::vector<PeriodicPath>;

struct ExceptionalReport {
    bool certified = false;
    std::size_t depth = 0;
    std::optional<std::size_t> bad_path;      // index of an invalid path
    std::optional<DigitWord> failing_vertex;  // off-path vertex with no good path
    std::string note;
};

// Certifies to `depth`: (1) every path stays in-tree and is not eventually
// constant 0 or 3; (2) every in-tree vertex |v| <= depth that lies on none of
// the paths admits a (p,q)-good path.  An empty set degenerates to
// check_all_vertices.
ExceptionalReport check_exceptional_paths(const LabelingRule& rule,
                                          const ExceptionalPathSet& paths,
                                          const GoodPathParams& params,
                                          std::size_t depth);

// ---- completeness ----

struct CompletenessConfig {
    double margin = 1e-3;      // LooksComplete needs min_h >= 1 - margin
    double prune = 1e-30;      // drop subtrees whose partial product is below this
    // spectral superset of the evaluated family at the same length bound;
    // enables the certified tail bound  sum_{lng>L} <= 1 - sum_{superset,<=L} lo
    const SpectrumSet* tail_superset = nullptr;
};

struct CertReport {
    enum class Verdict { LooksComplete, DeficientAt, Inconclusive };

    std::vector<double> grid;
    std::vector<double> h;      // certified lower bounds on the family sum
    std::vector<double> h_hi;   // certified upper bounds (tail included if certified)
    std::size_t length_bound = 0;
    double min_h = 0.0;
    double max_h = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    double margin = 0.0;       // 1 - min_h when LooksComplete
    double deficient_t = 0.0;  // grid point with the largest certified gap
    double gap = 0.0;          // 1 - h_hi at that point
    bool tail_certified = false;

    std::string verdict_string() const;
};

// evenly spaced exact dyadic grid: n points k/2^s covering [0,1), 2^s >= n
std::vector<double> default_grid(std::size_t n);

// h(t) = sum over the generated family (members of length <= length_bound) of
// certified enclosures of F(t+lambda), evaluated by a shared-prefix walk of
// the rule's tree; requires |t| <= 2 for every grid point
CertReport completeness(const LabelingRule& rule, std::size_t length_bound,
                        const std::vector<double>& grid,
                        const CompletenessConfig& cfg = {});

// same over an explicit family; pairwise orthogonality is asserted (throws
// orthogonality_violation), exhaustively up to 4096 elements, sampled beyond
CertReport completeness(const SpectrumSet& set, const std::vector<double>& grid,
                        const CompletenessConfig& cfg = {});

// ---- maximality ----

struct MaximalityOutcome {
    enum class Kind {
        Witnessed,        // explicit set member non-orthogonal to k
        DominatedByRule,  // k accounted for by the infinite family (see note)
        Undominated       // maximality violation at this truncation
    };
    BigInt k;
    Kind kind = Kind::Undominated;
    BigInt witness;         // Witnessed: the set member
    std::size_t exit_level = 0;  // DominatedByRule: tree exit position (non-members)
    std::string note;
};

struct MaximalityReport {
    BigInt radius;
    std::size_t witnessed = 0;
    std::size_t dominated = 0;
    std::size_t undominated = 0;
    std::vector<MaximalityOutcome> outcomes;  // every outsider, ascending k

    bool all_accounted() const { return undominated == 0; }
    bool all_witnessed() const { return dominated == 0 && undominated == 0; }
};

// For every k in [-radius, radius] outside the set: search the set for a
// member lambda with k - lambda not in the zero set (an explicit
// non-orthogonality witness).  When none exists and `rule` is given, k is
// checked against the infinite family: either k extends to a member beyond
// the truncation, or its digit path exits the tree at a level where the
// offered same-parity digit differs by 2, which forces an odd 2-adic
// valuation against every completion through that branch -- a certified
// witness that merely exceeds representable size.  Everything else is
// flagged Undominated.
MaximalityReport maximality_window(const SpectrumSet& set, const BigInt& radius,
                                   const LabelingRule* rule = nullptr);

// ---- scheduled-relabeling deficiency bound ----

struct CounterexampleBound {
    double numeric_sum = 0.0;  // certified upper bound over max index <= n_max
    double tail_bound = 0.0;   // rounded-up bound for larger indices (inf if none)
    std::size_t n_max = 0;
    std::size_t terms = 0;

    bool deficient() const { return numeric_sum + tail_bound < 1.0; }
};

// the family of the gap construction, truncated at max index n_max:
// all sums over S subset of {0..n_max} of 4^g(k) + 4^k
SpectrumSet counterexample_family(const GapFunction& gap, std::size_t n_max);

// Evaluates sum over the truncated family of certified upper bounds of
// F(1 + lambda) (exact big-integer argument reduction), plus a tail bound
// 2^N 4pi^2 4^{-2(G_N+1)} per index N > n_max, where G_N is the run of zero
// digits below the top digit of the corresponding members.  The tail is
// +infinity when the per-index bounds do not decay geometrically.
CounterexampleBound counterexample_sum(const GapFunction& gap, std::size_t n_max,
                                       const EvalConfig& cfg = {});

// ---- partition identity ----

// | sum over all depth-n in-tree words of partial_product(x, w)  -  1 |
// (the depth-n slices of the family sum telescope to exactly 1); n <= 14
double partition_identity_residual(const LabelingRule& rule, double x, std::size_t n);

} // namespace cantor

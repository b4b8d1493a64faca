// cantor-spectra: command-line front end for constructing, enumerating, and
// numerically certifying orthogonal exponential families of the scale-4
// Cantor measure.  All output is deterministic given flags and seed; lines
// starting with '#' are header comments recording version and parameters.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cantor/base4.hpp"
#include "cantor/certify.hpp"
#include "cantor/errors.hpp"
#include "cantor/labeling.hpp"
#include "cantor/measure.hpp"
#include "cantor/rule_config.hpp"

namespace {

using namespace cantor;

constexpr const char* k_version = "0.1.0";

std::string fmt(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

void banner(std::ostream& os) { os << "# cantor-spectra " << k_version << "\n"; }

int thread_budget(int flag) {
    if (const char* env = std::getenv("CANTOR_SPECTRA_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return flag >= 1 ? flag : 1;
}

bool integer_text(std::string_view s) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

BigInt to_bigint(const std::string& s, const std::string& what) {
    if (!integer_text(s)) throw invalid_params(what + ": expected an integer, got '" + s + "'");
    return BigInt(s);
}

std::vector<BigInt> read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_params("cannot open set file '" + path + "'");
    std::vector<BigInt> out;
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        std::string text = raw.substr(0, raw.find('#'));
        std::size_t b = text.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = text.find_last_not_of(" \t\r");
        std::string tok = text.substr(b, e - b + 1);
        if (!integer_text(tok))
            throw parse_error(no, b + 1, path + ": expected one integer per line, got '" + tok + "'");
        out.push_back(BigInt(tok));
    }
    if (out.empty()) throw invalid_params("set file '" + path + "' has no elements");
    return out;
}

SpectrumSet explicit_set(std::vector<BigInt> vals, const std::string& id) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    SpectrumSet s;
    s.rule_id = id;
    for (BigInt& v : vals) {
        std::size_t l = lng(v);
        s.length_bound = std::max(s.length_bound, l);
        s.elements.push_back({std::move(v), Code{}});
        s.elements.back().path = encode(s.elements.back().value);
    }
    return s;
}

DigitWord parse_vertex(const std::string& text) {
    DigitWord w;
    for (char c : text) {
        if (c == ' ' || c == ',' || c == '\t') continue;
        if (c < '0' || c > '3')
            throw invalid_params("vertex: expected digits 0..3, got '" + text + "'");
        w.push_back(Digit(c - '0'));
    }
    return w;
}

const char* verdict_word(CertReport::Verdict v) {
    switch (v) {
        case CertReport::Verdict::LooksComplete: return "LooksComplete";
        case CertReport::Verdict::DeficientAt: return "DeficientAt";
        default: return "Inconclusive";
    }
}

// ---- subcommand handlers ----

int run_encode(const std::vector<std::string>& ints, std::ostream& os) {
    banner(os);
    for (const std::string& s : ints)
        os << to_string(encode(to_bigint(s, "encode"))) << "\n";
    return 0;
}

int run_decode(const std::vector<std::string>& codes, std::ostream& os) {
    banner(os);
    for (const std::string& s : codes) os << decode(parse_code(s)) << "\n";
    return 0;
}

int run_zeros(const std::string& lo_s, const std::string& hi_s, std::ostream& os) {
    BigInt lo = to_bigint(lo_s, "--min"), hi = to_bigint(hi_s, "--max");
    if (lo > hi) throw invalid_params("zeros: --min must be <= --max");
    banner(os);
    os << "# window: [" << lo << ", " << hi << "]\n";
    for (BigInt k = lo; k <= hi; ++k)
        if (in_zero_set(k)) os << k << "\n";
    return 0;
}

int run_phi(double t, double tol, std::ostream& os) {
    EvalConfig cfg;
    cfg.abs_tol = tol;
    Amplitude a = phi_hat(t, cfg);
    banner(os);
    os << "# t: " << fmt(t) << "\n# tol: " << fmt(tol) << "\n";
    os << "re = " << fmt(a.re) << "\n";
    os << "im = " << fmt(a.im) << "\n";
    os << "sq = [" << fmt(a.sq_modulus.lo) << ", " << fmt(a.sq_modulus.hi) << "]\n";
    return 0;
}

int run_gen(const std::string& rule_arg, std::size_t levels, std::ostream& os) {
    ParsedRule pr = resolve_rule(rule_arg);
    SpectrumSet set = enumerate(*pr.rule, levels);
    banner(os);
    os << "# rule: " << pr.source << "\n# levels: " << levels
       << "\n# count: " << set.elements.size() << "\n";
    for (const auto& e : set.elements) os << e.value << "\n";
    return 0;
}

int run_ortho(const std::string& set_path, std::ostream& os) {
    std::vector<BigInt> vals = read_set_file(set_path);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    banner(os);
    os << "# set: " << set_path << "\n# elements: " << vals.size() << "\n";
    std::size_t bad = 0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            if (!orthogonal(vals[i], vals[j])) {
                os << "violation: " << vals[i] << " " << vals[j]
                   << " (difference has odd 2-adic valuation)\n";
                ++bad;
            }
    if (bad == 0) {
        os << "all pairs orthogonal\n";
        return 0;
    }
    os << "violations: " << bad << "\n";
    return 2;
}

int run_maximal(const std::string& set_path, const std::string& window, std::ostream& os) {
    SpectrumSet set = explicit_set(read_set_file(set_path), "file:" + set_path);
    BigInt m = to_bigint(window, "--window");
    MaximalityReport r = maximality_window(set, m);
    banner(os);
    os << "# set: " << set_path << "\n# elements: " << set.elements.size()
       << "\n# window: [-" << m << ", " << m << "]\n";
    os << "# witnessed: " << r.witnessed << "\n# undominated: " << r.undominated << "\n";
    for (const auto& o : r.outcomes)
        if (o.kind == MaximalityOutcome::Kind::Undominated)
            os << "undominated: " << o.k << " (" << o.note << ")\n";
    if (r.undominated == 0) {
        os << "maximal within window\n";
        return 0;
    }
    os << "not maximal within window\n";
    return 2;
}

int run_goodpath(const std::string& rule_arg, std::size_t p, std::size_t q,
                 std::size_t depth, std::size_t horizon, const std::string& vertex,
                 bool have_vertex, std::ostream& os) {
    ParsedRule pr = resolve_rule(rule_arg);
    GoodPathParams params{p, q, std::max(horizon, q + 1)};
    banner(os);
    os << "# rule: " << pr.source << "\n# p: " << p << "\n# q: " << q
       << "\n# horizon: " << params.horizon << "\n";
    if (have_vertex) {
        DigitWord v = parse_vertex(vertex);
        os << "# vertex: " << (v.empty() ? std::string("(root)") : to_string(v)) << "\n";
        GoodPathResult r = good_path_exists(*pr.rule, v, params);
        if (r.found) {
            os << "witness: " << to_string(r.witness) << "\n";
            return 0;
        }
        os << "no good path within horizon " << r.horizon << "\n";
        return 2;
    }
    VertexSweepReport r = check_all_vertices(*pr.rule, params, depth);
    os << "# depth: " << depth << "\n";
    if (r.all_good) {
        os << "all vertices good to depth " << r.depth << "\n";
        return 0;
    }
    os << "failing vertex: " << to_string(*r.failing_vertex) << "\n";
    return 2;
}

int run_certify(const std::string& rule_arg, std::size_t levels, std::size_t grid_n,
                bool have_span, double tmin, double tmax, double margin, int threads,
                std::ostream& os) {
    ParsedRule pr = resolve_rule(rule_arg);
    std::vector<double> grid;
    if (have_span) {
        if (grid_n < 1) throw invalid_params("certify: --grid must be >= 1");
        if (tmax < tmin) throw invalid_params("certify: --tmax must be >= --tmin");
        for (std::size_t i = 0; i < grid_n; ++i)
            grid.push_back(grid_n == 1 ? tmin
                                       : tmin + (tmax - tmin) * double(i) / double(grid_n - 1));
    } else {
        grid = default_grid(grid_n);
    }
    CompletenessConfig cfg;
    cfg.margin = margin;
    CertReport r = completeness(*pr.rule, levels, grid, cfg);
    banner(os);
    os << "# rule: " << pr.source << "\n# levels: " << levels << "\n# margin: "
       << fmt(margin) << "\n# threads: " << thread_budget(threads) << "\n";
    os << "# min_h: " << fmt(r.min_h) << "\n# max_h: " << fmt(r.max_h) << "\n";
    os << "# verdict: " << r.verdict_string() << "\n";
    os << "t,h_lower,L,verdict\n";
    for (std::size_t i = 0; i < r.grid.size(); ++i)
        os << fmt(r.grid[i]) << "," << fmt(r.h[i]) << "," << levels << ","
           << verdict_word(r.verdict) << "\n";
    return r.verdict == CertReport::Verdict::LooksComplete ? 0 : 2;
}

int run_counterexample(const std::string& gaps, std::size_t nmax, std::ostream& os) {
    GapFunction gap = parse_gap(gaps);
    CounterexampleBound b = counterexample_sum(gap, nmax);
    banner(os);
    os << "# gap: " << gap.name() << "\n# nmax: " << nmax
       << "\n# terms: " << b.terms << "\n";
    os << "numeric_sum = " << fmt(b.numeric_sum) << "\n";
    os << "tail_bound = " << fmt(b.tail_bound) << "\n";
    if (b.deficient())
        os << "NOT A SPECTRUM: sum+tail < 1\n";
    else
        os << "no spectrum verdict (tail bound not certified)\n";
    return 0;
}

int run_member(const std::string& system_arg, const std::string& k_s, std::ostream& os) {
    ParsedRule pr = resolve_rule(system_arg);
    if (!pr.system)
        throw invalid_params("member: '" + system_arg + "' does not describe a digit system");
    BigInt k = to_bigint(k_s, "--k");
    ExpansionResult r = a_expansion(*pr.system, k);
    banner(os);
    os << "# system: " << pr.system->id() << "\n";
    if (r.is_member()) {
        os << k << " =";
        for (const BigInt& d : r.prefix) os << " " << d;
        for (std::size_t i = 0; i < r.cycle.size(); ++i) os << " " << r.cycle[i];
        os << "~\n";
        return 0;
    }
    os << "not a member: stuck at step " << r.failure_position << " with residual "
       << r.residual << "\n";
    return 2;
}

int run_sample(std::size_t count, std::uint64_t seed, const std::vector<double>& ts,
               std::ostream& os) {
    if (ts.empty()) throw invalid_params("sample: need at least one --t value");
    std::vector<SamplePoint> pts = chaos_sample(count, seed);
    banner(os);
    os << "# count: " << count << "\n# seed: " << seed << "\n";
    os << "t,emp_re,emp_im,ref_re,ref_im,abs_err\n";
    for (double t : ts) {
        std::complex<double> e = empirical_cf(pts, t);
        Amplitude a = phi_hat(t);
        double err = std::hypot(e.real() - a.re, e.imag() - a.im);
        os << fmt(t) << "," << fmt(e.real()) << "," << fmt(e.imag()) << ","
           << fmt(a.re) << "," << fmt(a.im) << "," << fmt(err) << "\n";
    }
    return 0;
}

// ---- recipes ----

int recipe_jp_spectrum(std::ostream& os) {
    CertReport r = completeness(*jp_rule(), 12, default_grid(64));
    os << "# rule: JP\n# levels: 12\n# grid: 64\n";
    os << "min_h = " << fmt(r.min_h) << "\n";
    os << "max_h = " << fmt(r.max_h) << "\n";
    os << "verdict: " << r.verdict_string() << "\n";
    return r.verdict == CertReport::Verdict::LooksComplete ? 0 : 2;
}

int recipe_corollary_03(std::ostream& os) {
    RulePtr rule = parse_rule_inline("uniform:0,3").rule;
    VertexSweepReport sweep = check_all_vertices(*rule, GoodPathParams{0, 0, 64}, 12);
    os << "# rule: " << rule->id() << "\n";
    os << (sweep.all_good ? "(0,0)-good paths exist from every vertex to depth 12\n"
                          : "good-path sweep FAILED\n");
    CertReport r = completeness(*rule, 12, default_grid(16));
    os << "min_h = " << fmt(r.min_h) << "\n";
    os << "verdict: " << r.verdict_string() << "\n";
    return sweep.all_good && r.verdict == CertReport::Verdict::LooksComplete ? 0 : 2;
}

int recipe_digits_0_3_incomplete(std::ostream& os) {
    RulePtr rule = parse_rule_inline("uniform:0,3").rule;
    SpectrumSet full = enumerate(*rule, 12);
    std::vector<BigInt> pos_vals;
    for (const auto& e : full.elements)
        if (e.value >= 0) pos_vals.push_back(e.value);
    SpectrumSet pos = explicit_set(pos_vals, "nonnegative {0,3} sums");
    os << "# rule: " << rule->id() << "\n# levels: 12\n# t: -0.5\n";

    CompletenessConfig cfg;
    cfg.tail_superset = &full;
    CertReport trunc = completeness(pos, {-0.5}, cfg);
    os << "finite sums only:  h in [" << fmt(trunc.h[0]) << ", " << fmt(trunc.h_hi[0])
       << "]  " << trunc.verdict_string() << "\n";

    CertReport comp = completeness(full, {-0.5});
    os << "signed completion: h in [" << fmt(comp.h[0]) << ", " << fmt(comp.h_hi[0])
       << "]  " << comp.verdict_string() << "\n";
    bool ok = trunc.verdict == CertReport::Verdict::DeficientAt &&
              comp.verdict == CertReport::Verdict::LooksComplete;
    os << (ok ? "deficiency certified; completion restores the sum\n"
              : "UNEXPECTED verdicts\n");
    return ok ? 0 : 2;
}

int recipe_digits_15_9_nonmaximal(std::ostream& os) {
    ParsedRule pr = parse_rule_inline("digits:15,9");
    os << "# system: " << pr.system->id() << "\n";
    ExpansionResult ex = a_expansion(*pr.system, 3);
    if (!ex.is_member() || ex.prefix != std::vector<BigInt>{15} ||
        ex.cycle != std::vector<BigInt>{9}) {
        os << "UNEXPECTED expansion for 3\n";
        return 2;
    }
    os << "3 = 15 9~\n";

    // the plain finite sums (no infinite-tail members): a0 in {0,15},
    // a1..a5 in {0,9}
    std::vector<BigInt> sums;
    for (unsigned mask = 0; mask < 64; ++mask) {
        BigInt v = (mask & 1) ? 15 : 0;
        for (unsigned k = 1; k < 6; ++k)
            if (mask & (1u << k)) v += BigInt(9) * pow(BigInt(4), k);
        sums.push_back(v);
    }
    SpectrumSet set = explicit_set(sums, "finite {0,15}/{0,9} sums");
    MaximalityReport r = maximality_window(set, 20, pr.rule.get());
    os << "window [-20, 20]: witnessed " << r.witnessed << ", undominated "
       << r.undominated << "\n";
    bool saw3 = false;
    for (const auto& o : r.outcomes)
        if (o.k == 3 && o.kind == MaximalityOutcome::Kind::Undominated) {
            saw3 = true;
            os << "3 is orthogonal to every finite sum (" << o.note << ")\n";
        }
    os << (saw3 ? "the finite sums are not maximal\n" : "UNEXPECTED: 3 accounted for\n");
    return saw3 ? 0 : 2;
}

int recipe_counterexample_paper(std::ostream& os) {
    SpectrumSet fam = counterexample_family(GapFunction::paper(), 2);
    RulePtr rule = counterexample_rule();
    MaximalityReport m = maximality_window(fam, 50, rule.get());
    os << "# rule: " << rule->id() << "\n# nmax: 2\n";
    os << "maximality window [-50, 50]: witnessed " << m.witnessed << ", dominated "
       << m.dominated << ", undominated " << m.undominated << "\n";
    CounterexampleBound b = counterexample_sum(GapFunction::paper(), 2);
    os << "numeric_sum = " << fmt(b.numeric_sum) << "\n";
    os << "tail_bound = " << fmt(b.tail_bound) << "\n";
    bool ok = m.all_accounted() && b.deficient();
    os << (ok ? "maximal within window, yet NOT A SPECTRUM: sum+tail < 1\n"
              : "UNEXPECTED outcome\n");
    return ok ? 0 : 2;
}

int recipe_exr4_propr2(std::ostream& os) {
    ExceptionalPathSet paths{PeriodicPath{{}, word({1})}};
    ExceptionalReport r =
        check_exceptional_paths(*exr4_rule(), paths, GoodPathParams{0, 8, 64}, 10);
    os << "# rule: ExR4\n# exceptional path: " << paths[0].to_string()
       << "\n# p: 0\n# q: 8\n";
    if (r.certified) {
        os << "certified to depth " << r.depth
           << ": every off-path vertex has a (0,8)-good path\n";
        return 0;
    }
    os << "NOT certified: " << r.note << "\n";
    return 2;
}

int recipe_compose_propr1(std::ostream& os) {
    RulePtr comp = parse_rule_inline("compose:0=jp,1=jp").rule;
    std::vector<double> grid = default_grid(32);
    CertReport a = completeness(*comp, 12, grid);
    CertReport b = completeness(*jp_rule(), 12, grid);
    double dmax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        dmax = std::max(dmax, std::abs(a.h[i] - b.h[i]));
    os << "# rule: " << comp->id() << "\n# levels: 12\n# grid: 32\n";
    os << "min_h(compose) = " << fmt(a.min_h) << "\n";
    os << "min_h(jp)      = " << fmt(b.min_h) << "\n";
    os << "max pointwise difference = " << fmt(dmax) << "\n";
    bool ok = a.verdict == CertReport::Verdict::LooksComplete && dmax <= 1e-9;
    os << (ok ? "grafting two copies reproduces the original spectrum\n"
              : "UNEXPECTED divergence\n");
    return ok ? 0 : 2;
}

struct Recipe {
    const char* name;
    const char* blurb;
    int (*run)(std::ostream&);
};

const Recipe k_recipes[] = {
    {"jp-spectrum", "completeness of the {0,1}-digit family on a 64-point grid",
     recipe_jp_spectrum},
    {"corollary-03", "the constant {0,3} system: good paths and completeness",
     recipe_corollary_03},
    {"digits-0-3-incomplete",
     "finite {0,3} sums are deficient at t=-0.5; the signed completion is not",
     recipe_digits_0_3_incomplete},
    {"digits-15-9-nonmaximal",
     "3 = 15 9~ joins the {0,15}/{0,9} family, so its finite sums are not maximal",
     recipe_digits_15_9_nonmaximal},
    {"counterexample-paper",
     "the gap family: maximal in a window, yet the t=1 sum stays below 1",
     recipe_counterexample_paper},
    {"exr4-propr2", "exceptional-path certification for the one-spine rule",
     recipe_exr4_propr2},
    {"compose-propr1", "grafting two copies of the {0,1} rule onto a root",
     recipe_compose_propr1},
};

int run_recipes(const std::string& run_name, std::ostream& os) {
    banner(os);
    if (run_name.empty()) {
        for (const Recipe& r : k_recipes) {
            char line[120];
            std::snprintf(line, sizeof line, "%-24s %s", r.name, r.blurb);
            os << line << "\n";
        }
        return 0;
    }
    for (const Recipe& r : k_recipes)
        if (run_name == r.name) {
            os << "# recipe: " << r.name << "\n";
            return r.run(os);
        }
    throw invalid_params("unknown recipe '" + run_name + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthogonal exponential families for the scale-4 Cantor measure"};
    app.set_version_flag("--version", std::string("cantor-spectra ") + k_version);
    app.require_subcommand(1);
    int threads = 1;

    std::vector<std::string> enc_ints;
    auto* enc = app.add_subcommand("encode", "base-4 codes of integers");
    enc->add_option("ints", enc_ints, "integers")->required();

    std::vector<std::string> dec_codes;
    auto* dec = app.add_subcommand("decode", "integers of base-4 codes");
    dec->add_option("codes", dec_codes, "codes like '2 1 | 3~' (quoted)")->required();

    std::string z_min, z_max;
    auto* zer = app.add_subcommand("zeros", "transform zeros in an integer window");
    zer->add_option("--min", z_min, "window lower end")->required();
    zer->add_option("--max", z_max, "window upper end")->required();

    double phi_t = 0.0, phi_tol = 1e-12;
    auto* phi = app.add_subcommand("phi", "transform value at one point");
    phi->add_option("--t", phi_t, "evaluation point")->required();
    phi->add_option("--tol", phi_tol, "target enclosure width");

    std::string gen_rule;
    std::size_t gen_levels = 0;
    auto* gen = app.add_subcommand("gen", "enumerate a rule's family");
    gen->add_option("--rule", gen_rule, "rule name, shorthand, or config file")->required();
    gen->add_option("--levels", gen_levels, "length bound")->required();

    std::string ortho_set;
    auto* ort = app.add_subcommand("ortho", "pairwise orthogonality of a set file");
    ort->add_option("--set", ortho_set, "file with one integer per line")->required();

    std::string max_set, max_window;
    auto* mx = app.add_subcommand("maximal", "window maximality scan of a set file");
    mx->add_option("--set", max_set, "file with one integer per line")->required();
    mx->add_option("--window", max_window, "scan radius")->required();

    std::string gp_rule, gp_vertex;
    std::size_t gp_p = 0, gp_q = 0, gp_depth = 8, gp_horizon = 64;
    auto* gp = app.add_subcommand("goodpath", "good-path search / vertex sweep");
    gp->add_option("--rule", gp_rule, "rule")->required();
    gp->add_option("--p", gp_p, "max twos in the even segment");
    gp->add_option("--q", gp_q, "max suffix length");
    gp->add_option("--depth", gp_depth, "sweep depth (without --vertex)");
    gp->add_option("--horizon", gp_horizon, "search horizon below each vertex");
    auto* gp_v = gp->add_option("--vertex", gp_vertex, "single start vertex, e.g. '1,1'");

    std::string ct_rule;
    std::size_t ct_levels = 0, ct_grid = 64;
    double ct_tmin = 0.0, ct_tmax = 0.0, ct_margin = 1e-3;
    auto* ct = app.add_subcommand("certify", "completeness certificate as CSV");
    ct->add_option("--rule", ct_rule, "rule")->required();
    ct->add_option("--levels", ct_levels, "length bound")->required();
    ct->add_option("--grid", ct_grid, "number of grid points");
    auto* ct_a = ct->add_option("--tmin", ct_tmin, "grid start (with --tmax)");
    auto* ct_b = ct->add_option("--tmax", ct_tmax, "grid end (with --tmin)");
    ct->add_option("--margin", ct_margin, "LooksComplete needs min_h >= 1 - margin");
    ct->add_option("--threads", threads, "worker cap; CANTOR_SPECTRA_THREADS overrides");
    ct_a->needs(ct_b);
    ct_b->needs(ct_a);

    std::string cx_gaps = "paper";
    std::size_t cx_nmax = 0;
    auto* cx = app.add_subcommand("counterexample", "gap-family deficiency bound");
    cx->add_option("--gaps", cx_gaps, "paper or poly:<c>");
    cx->add_option("--nmax", cx_nmax, "largest included index")->required();

    std::string mem_system, mem_k;
    auto* mem = app.add_subcommand("member", "digit-system expansion of an integer");
    mem->add_option("--system", mem_system, "digit system (e.g. digits:15,9)")->required();
    mem->add_option("--k", mem_k, "integer to expand")->required();

    std::size_t sm_count = 100000;
    std::uint64_t sm_seed = 1;
    std::vector<double> sm_ts;
    auto* sm = app.add_subcommand("sample", "chaos-game empirical transform check");
    sm->add_option("--count", sm_count, "sample count")->required();
    sm->add_option("--seed", sm_seed, "RNG seed");
    sm->add_option("--t", sm_ts, "evaluation points")->required()->delimiter(',');

    std::string rc_run;
    auto* rc = app.add_subcommand("recipes", "canned reproductions of the worked examples");
    rc->add_option("--run", rc_run, "execute one recipe by name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::ostream& os = std::cout;
        if (*enc) return run_encode(enc_ints, os);
        if (*dec) return run_decode(dec_codes, os);
        if (*zer) return run_zeros(z_min, z_max, os);
        if (*phi) return run_phi(phi_t, phi_tol, os);
        if (*gen) return run_gen(gen_rule, gen_levels, os);
        if (*ort) return run_ortho(ortho_set, os);
        if (*mx) return run_maximal(max_set, max_window, os);
        if (*gp)
            return run_goodpath(gp_rule, gp_p, gp_q, gp_depth, gp_horizon, gp_vertex,
                                gp_v->count() > 0, os);
        if (*ct)
            return run_certify(ct_rule, ct_levels, ct_grid, ct_a->count() > 0, ct_tmin,
                               ct_tmax, ct_margin, threads, os);
        if (*cx) return run_counterexample(cx_gaps, cx_nmax, os);
        if (*mem) return run_member(mem_system, mem_k, os);
        if (*sm) return run_sample(sm_count, sm_seed, sm_ts, os);
        if (*rc) return run_recipes(rc_run, os);
    } catch (const cantor::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

#include "cantor/measure.hpp"

#include <cfloat>
#include <cmath>

namespace cantor {

namespace {

constexpr double k_two_pi = 6.283185307179586476925287;
// conservative absolute slop of a double evaluation of cos^2(2 pi u), |u| <= 1.1:
// covers the 2*pi constant, argument rounding, libm cos, and the squaring
constexpr double k_weight_slop = 5e-15;
// slop for distance-to-lattice computations built from floor/subtract
constexpr double k_dist_slop = 2e-16;

// ---- directed rounding helpers (all operands nonnegative) ----

double up(double x) { return std::nextafter(x, HUGE_VAL); }
double dn(double x) { return x <= 0.0 ? 0.0 : std::nextafter(x, 0.0); }

double mul_up(double a, double b) {
    double p = a * b;
    if (p == 0.0) return (a > 0.0 && b > 0.0) ? DBL_TRUE_MIN : 0.0;
    return up(p);
}
double mul_dn(double a, double b) { return dn(a * b); }

// ---- certified bracket of sin^2(x) over x in [xlo, xhi], xlo >= 0 ----

Enclosure sin_sq_bracket(double xlo, double xhi) {
    // x^2 (1 - x^2/3) <= sin^2 x <= min(1, x^2) for all x >= 0
    double s_hi = std::min(1.0, mul_up(xhi, xhi));
    double q = mul_dn(xlo, xlo);
    double s_lo = dn(q * (1.0 - mul_up(xlo, xlo) / 3.0));
    if (s_lo < 0.0) s_lo = 0.0;
    return {s_lo, s_hi};
}

// certified bracket of m(u) for distance-to-half-integer in [dlo, dhi]
// (m has period 1/2 and m(1/2 +- d) = m(d) = 1 - sin^2(2 pi d))
Enclosure near_half_bracket(double dlo, double dhi) {
    if (dhi == 0.0) return {1.0, 1.0};  // exact peak
    Enclosure s = sin_sq_bracket(mul_dn(dlo, dn(k_two_pi)), mul_up(dhi, up(k_two_pi)));
    double lo = std::max(0.0, dn(1.0 - s.hi));
    double hi = s.lo == 0.0 ? 1.0 : std::min(1.0, up(1.0 - s.lo));
    return {lo, hi};
}

// distance of u to the nearest half-integer, and whether that point is an
// odd multiple of 1/2 (where the cosine is negative)
double dist_half(double u, bool* at_odd_half = nullptr) {
    double r = u - std::floor(u);
    double d0 = std::min(r, std::abs(1.0 - r));
    double dh = std::abs(r - 0.5);
    if (at_odd_half) *at_odd_half = dh < d0;
    return std::min(d0, dh);
}

// distance to the nearest odd quarter (the zeros 1/4, 3/4 of m)
double dist_quarter(double u) {
    double r = u - std::floor(u);
    return std::min(std::abs(r - 0.25), std::abs(r - 0.75));
}

// generic certified bracket of m over |x - u| <= err
Enclosure generic_bracket(double u, double err) {
    double c = std::cos(k_two_pi * u);
    double m = c * c;
    double e = k_weight_slop + 7.0 * err;  // |m'| = |2 pi sin(4 pi x)| <= 2 pi < 7
    return {std::max(0.0, m - e), std::min(1.0, m + e)};
}

// ---- scaled nonnegative interval: value = [lo, hi] * 2^e2 ----

struct Scaled {
    double lo = 1.0;
    double hi = 1.0;
    long long e2 = 0;

    void normalize() {
        if (hi <= 0.0) {
            lo = hi = 0.0;
            e2 = 0;
            return;
        }
        int k = 0;
        std::frexp(hi, &k);
        if (k != 0) {
            hi = std::ldexp(hi, -k);  // exact
            lo = std::ldexp(lo, -k);
            if (lo > 0.0 && lo < DBL_MIN) lo = 0.0;  // subnormal ratio: drop, still sound
            e2 += k;
        }
    }
    void mul(double flo, double fhi) {
        lo = flo == 1.0 ? lo : (lo > 0.0 && flo > 0.0 ? mul_dn(lo, flo) : 0.0);
        hi = fhi == 1.0 ? hi : (fhi > 0.0 ? mul_up(hi, fhi) : 0.0);
        normalize();
    }
    void mul(const Scaled& f) {
        mul(f.lo, f.hi);
        e2 += f.e2;
    }
    double hi_double() const {
        if (hi == 0.0) return 0.0;
        if (e2 > 1024) return HUGE_VAL;
        if (e2 < -1200) return DBL_TRUE_MIN;
        double v = std::ldexp(hi, (int)e2);
        return v == 0.0 ? DBL_TRUE_MIN : up(v);
    }
    double lo_double() const {
        if (lo <= 0.0 || e2 < -1200) return 0.0;
        return dn(std::ldexp(lo, (int)e2));
    }
};

// ---- exact near-zero factor: m(u) = sin^2(2 pi d), d = num / 2^shift ----

struct TinyFactor {
    Scaled value;
    bool exact_zero = false;
};

TinyFactor tiny_factor_from_distance(const BigInt& num, long long shift) {
    TinyFactor out;
    if (num == 0) {
        out.exact_zero = true;
        return out;
    }
    double dlo, dhi;
    long long e;
    long long mb = (long long)boost::multiprecision::msb(num);
    if (mb <= 52) {
        double v = num.convert_to<double>();  // exact small integer
        dlo = dhi = v;
        e = -shift;
    } else {
        BigInt t = num >> (unsigned)(mb - 52);
        double v = t.convert_to<double>();  // in [2^52, 2^53), exact
        dlo = v;
        dhi = v + 1.0;
        e = mb - 52 - shift;
    }
    // x = 2 pi d with d = [dlo, dhi] * 2^e; callers guarantee x <= 7e-5, so
    // the cubic correction x^2/3 of sin^2 x is below 2e-9 relative
    double xlo = mul_dn(dlo, dn(k_two_pi));
    double xhi = mul_up(dhi, up(k_two_pi));
    Scaled s;
    s.lo = dn(mul_dn(xlo, xlo) * (1.0 - 2e-9));
    s.hi = mul_up(xhi, xhi);
    s.e2 = 2 * e;
    s.normalize();
    out.value = s;
    return out;
}

// ---- digit access for the sliding-window path ----

struct DigitStream {
    DigitWord prefix;
    int tail = 0;

    int at(std::size_t n) const { return n < prefix.size() ? prefix[n].value() : tail; }
};

// ---- the evaluation engine ----

struct EvalResult {
    Enclosure enc;
    int sign = 1;  // sign of the full cosine product (the far tail is positive)
    bool exact_zero = false;
};

constexpr int k_window = 26;  // base-4 digits per sliding window (52 bits)

EvalResult eval_engine(double tp, const BigInt& k, const EvalConfig& cfg) {
    // evaluates F(tp + k) for exact dyadic tp in [0, 1)
    EvalResult res;
    if (tp == 0.0) {
        if (k == 0) {
            res.enc = {1.0, 1.0};
            return res;
        }
        if (in_zero_set(k)) {
            res.enc = {0.0, 0.0};
            res.sign = 0;
            res.exact_zero = true;
            return res;
        }
    }

    // tp = a / 2^s with a odd (or a = 0, s = 0)
    BigInt a = 0;
    long long s = 0;
    if (tp != 0.0) {
        int ex = 0;
        double mant = std::frexp(tp, &ex);
        long long ai = (long long)std::ldexp(mant, 53);  // exact integer
        s = 53 - ex;
        while ((ai & 1) == 0) {
            ai >>= 1;
            --s;
        }
        a = ai;
    }

    const std::size_t L = lng(k);
    const bool small = L <= 22;  // whole reduction fits in int64/double exactly
    const long long kk = small ? k.convert_to<long long>() : 0;
    const double v = small ? tp + (double)kk : 0.0;  // rel err <= 2^-53

    DigitStream ds;
    std::uint64_t win = 0;
    if (!small) {
        Code c = encode(k);
        ds.prefix = std::move(c.prefix);
        ds.tail = tail_digit(c.tail);
    }

    const double tail_budget = std::min(cfg.abs_tol * 0.25, 1e-13);
    Scaled prod;

    for (std::size_t j = 1;; ++j) {
        if (j > cfg.max_factors)
            throw tolerance_not_reached("factor budget exhausted before reaching tolerance");

        // --- certified u interval for this factor ---
        double ulo, uhi;
        const bool stable = j > L;  // digits below j are final
        if (small) {
            if (stable) {
                double d = std::abs(v) * std::ldexp(1.0, -2 * (int)j);
                double dlo = dn(d * (1.0 - 4e-16));
                double dhi = up(d * (1.0 + 4e-16));
                if (v >= 0.0) {
                    ulo = dlo;
                    uhi = dhi;
                } else {
                    ulo = std::max(0.0, dn(1.0 - dhi));
                    uhi = up(1.0 - dlo);
                }
            } else {
                std::uint64_t r = (std::uint64_t)kk & ((1ull << (2 * j)) - 1ull);
                double u = (tp + (double)r) * std::ldexp(1.0, -2 * (int)j);
                ulo = std::max(0.0, u - 3e-16);
                uhi = up(u + 3e-16);
            }
        } else {
            // sliding window over the base-4 digits of k mod 4^j, top first
            win = (win >> 2) + ((std::uint64_t)ds.at(j - 1) << (2 * (k_window - 1)));
            double w = std::ldexp((double)win, -2 * k_window);  // exact
            int jc = (int)std::min<std::size_t>(j, 600);
            double u = w + tp * std::ldexp(1.0, -2 * jc);
            double rem = j > (std::size_t)k_window ? std::ldexp(2.0, -2 * k_window) : 0.0;
            ulo = std::max(0.0, u - 3e-16);
            uhi = up(up(u + rem) + 3e-16);
        }

        // --- close with the geometric tail bound once past the prefix ---
        if (stable) {
            double dz_hi = std::min(uhi, up(1.0 - ulo));  // dist to nearest integer
            double x = mul_up(up(k_two_pi), std::max(0.0, dz_hi));
            if (x < 0.5) {
                double S = mul_up(mul_up(x, x), 16.0 / 15.0);
                if (S <= tail_budget) {
                    // remaining product in [prod_{i>=j} (1 - (2 pi d/4^{i-j})^2), 1]
                    prod.mul(std::max(0.0, dn(1.0 - S)), 1.0);
                    break;
                }
            }
        }

        // --- one factor ---
        // the quadratic half/quarter brackets beat the generic cosine bracket
        // (absolute slop ~5e-15) only very close to the lattice points
        double err = (uhi - ulo) / 2 + k_dist_slop;
        double umid = ulo + (uhi - ulo) / 2;
        bool odd_half = false;
        double dh = dist_half(umid, &odd_half);
        if (dh <= 3e-5 + err) {
            if (odd_half) res.sign = -res.sign;
            Enclosure f = near_half_bracket(std::max(0.0, dh - err), up(dh + err));
            prod.mul(f.lo, f.hi);
        } else if (dist_quarter(umid) <= 1e-5 + err) {
            // resolve exactly: u = (a + r 2^s) / 2^{s+2j}; distance to the
            // nearer cosine zero o/4, o in {1,3}, as an exact big integer
            BigInt r = mod_pow4(k, j);
            BigInt n4 = (a + (r << (unsigned)s)) << 2;
            BigInt c1 = BigInt(1) << (unsigned)(s + 2 * (long long)j);
            BigInt d1 = n4 - c1;
            BigInt d3 = n4 - 3 * c1;
            bool near_oq = abs(d1) <= abs(d3);
            BigInt dd = near_oq ? d1 : d3;
            // cos(2 pi u) = -sin(2 pi (u - 1/4)) near 1/4, +sin(2 pi (u - 3/4)) near 3/4
            if (near_oq ? dd > 0 : dd < 0) res.sign = -res.sign;
            TinyFactor tf = tiny_factor_from_distance(abs(dd), s + 2 * (long long)j + 2);
            if (tf.exact_zero) {
                res.enc = {0.0, 0.0};
                res.sign = 0;
                res.exact_zero = true;
                return res;
            }
            prod.mul(tf.value);
        } else {
            double c = std::cos(k_two_pi * umid);
            if (c < 0.0) res.sign = -res.sign;
            Enclosure f = generic_bracket(umid, err);
            prod.mul(f.lo, f.hi);
        }
    }

    res.enc = {std::min(1.0, prod.lo_double()), std::min(1.0, prod.hi_double())};
    if (res.enc.width() > cfg.abs_tol)
        throw tolerance_not_reached("enclosure width exceeds requested tolerance");
    return res;
}

// split a double into exact integer + fractional parts and run the engine
EvalResult eval_split(double t, const BigInt& shift, const EvalConfig& cfg) {
    if (!std::isfinite(t)) throw invalid_params("argument must be finite");
    double fl = std::floor(t);
    double tp = t - fl;  // exact
    BigInt k = shift;
    if (fl != 0.0) {
        if (std::abs(fl) < 9.007199254740992e15)
            k += (long long)fl;
        else
            k += BigInt(fl);  // exact: doubles this large are integers
    }
    return eval_engine(tp, k, cfg);
}

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

// ---- public API ----

double weight(double x) {
    double c = std::cos(k_two_pi * x);
    return c * c;
}

Enclosure weight_bracket(double u, double err) {
    if (!(err >= 0.0) || !std::isfinite(u))
        throw invalid_params("weight_bracket: bad arguments");
    bool odd_half = false;
    double dh = dist_half(u, &odd_half);
    double e = err + k_dist_slop;
    // a computed zero distance is exact (IEEE subtraction is exact at zero)
    if (dh == 0.0 && err == 0.0) return {1.0, 1.0};
    if (dh <= 3e-5 + e) return near_half_bracket(std::max(0.0, dh - e), up(dh + e));
    double dq = dist_quarter(u);
    if (dq == 0.0 && err == 0.0) return {0.0, 0.0};
    if (dq <= 3e-5 + e)
        return sin_sq_bracket(mul_dn(std::max(0.0, dq - e), dn(k_two_pi)),
                              mul_up(up(dq + e), up(k_two_pi)));
    return generic_bracket(u, err);
}

bool in_zero_set(const BigInt& k) {
    if (k == 0) return false;
    unsigned v2 = boost::multiprecision::lsb(abs(k));
    return v2 % 2 == 0;
}

bool orthogonal(const BigInt& a, const BigInt& b) { return in_zero_set(a - b); }

Enclosure phi_hat_sq_shift(double t, const BigInt& lam, const EvalConfig& cfg) {
    if (!std::isfinite(t) || std::abs(t) > 2.0)
        throw invalid_params("phi_hat_sq_shift: |t| must be <= 2");
    return eval_split(t, lam, cfg).enc;
}

Enclosure phi_hat_sq(double t, const EvalConfig& cfg) { return eval_split(t, 0, cfg).enc; }

Amplitude phi_hat(double t, const EvalConfig& cfg) {
    EvalResult r = eval_split(t, 0, cfg);
    Amplitude a;
    a.sq_modulus = r.enc;
    if (r.exact_zero) return a;  // re = im = 0 exactly
    if (t == 0.0) {
        a.re = 1.0;
        return a;
    }
    double mag = std::sqrt(r.enc.mid()) * (double)r.sign;
    double phase = k_two_pi * t / 3.0;
    a.re = mag * std::cos(phase);
    a.im = mag * std::sin(phase);
    return a;
}

double partial_product(double x, const DigitWord& w) {
    if (w.empty()) throw invalid_params("partial_product: need at least one digit");
    double ratio = 0.0, xs = x, p = 1.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        ratio = (ratio + w[j].value()) * 0.25;
        xs *= 0.25;
        double c = std::cos(k_two_pi * (xs + ratio));
        p *= c * c;
    }
    return p;
}

std::vector<SamplePoint> chaos_sample(std::size_t count, std::uint64_t seed) {
    if (count == 0) throw invalid_params("chaos_sample: count must be >= 1");
    std::vector<SamplePoint> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t z = splitmix(seed ^ (0xD1B54A32D192ED03ull * (i + 1)));
        double x = 0.0;
        for (int b = 0; b < 64; ++b) {
            double d = (z >> b) & 1ull ? 2.0 : 0.0;
            x = (x + d) * 0.25;
        }
        out[i].x = x;
    }
    return out;
}

std::complex<double> empirical_cf(const std::vector<SamplePoint>& samples, double t) {
    if (samples.empty()) throw invalid_params("empirical_cf: empty sample set");
    double re = 0.0, im = 0.0;
    for (const auto& p : samples) {
        double th = k_two_pi * t * p.x;
        re += std::cos(th);
        im += std::sin(th);
    }
    double m = (double)samples.size();
    return {re / m, im / m};
}

} // namespace cantor

#pragma once

// Fourier side of the scale-4 Cantor measure.  The transform is
//   phi(t) = e^{2 pi i t/3} prod_{j>=1} cos(2 pi t/4^j)
// and its squared modulus F(t) = prod cos^2(2 pi t/4^j) vanishes exactly on
// Z = {4^j (2m+1)} and nowhere else.  Everything here either is exact integer
// logic (zero set, orthogonality) or returns certified enclosures whose
// argument reduction stays exact for integer shifts of any size.

#include <complex>
#include <cstdint>
#include <vector>

#include "cantor/base4.hpp"

namespace cantor {

// closed interval bracketing a squared modulus; 0 <= lo <= hi <= 1
struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return lo + (hi - lo) / 2; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

struct EvalConfig {
    double abs_tol = 1e-12;
    std::size_t max_factors = 1000000;
};

struct Amplitude {
    double re = 0.0;
    double im = 0.0;
    Enclosure sq_modulus;
};

// m(x) = cos^2(2 pi x), the one-step subdivision weight (plain double)
double weight(double x);

// certified enclosure of m over {x : |x - u| <= err}; exact at exact inputs
// (err = 0 and 4u integral gives a point interval)
Enclosure weight_bracket(double u, double err);

// k in Z = {4^j(2m+1)}, i.e. k != 0 with even 2-adic valuation (exact)
bool in_zero_set(const BigInt& k);

// e_a orthogonal to e_b in L^2(mu), i.e. a - b in Z
bool orthogonal(const BigInt& a, const BigInt& b);

// certified enclosure of F(t + lam) with |t| <= 2 and lam of any size; the
// reduction (t + lam)/4^j mod 1 is done in exact integer arithmetic, so
// precision does not degrade for astronomically large lam
Enclosure phi_hat_sq_shift(double t, const BigInt& lam, const EvalConfig& cfg = {});

// certified enclosure of F(t) for a plain double argument
Enclosure phi_hat_sq(double t, const EvalConfig& cfg = {});

// phi(t): certified squared modulus plus an approximate complex value whose
// sign/phase come from the certified factor signs; re = im = 0 exactly at
// integer zeros
Amplitude phi_hat(double t, const EvalConfig& cfg = {});

// prod_{j=1}^{|w|} m((x + w_0 + 4 w_1 + ... + 4^{j-1} w_{j-1}) / 4^j)
double partial_product(double x, const DigitWord& w);

struct SamplePoint {
    double x = 0.0;
};

// chaos game for the invariant measure of {x/4, (x+2)/4}: sample i feeds 64
// counter-derived coin flips through x -> (x + 2b)/4 starting from 0;
// deterministic given (count, seed)
std::vector<SamplePoint> chaos_sample(std::size_t count, std::uint64_t seed);

// (1/M) sum_m exp(2 pi i t x_m)
std::complex<double> empirical_cf(const std::vector<SamplePoint>& samples, double t);

} // namespace cantor

#include <doctest.h>

#include <cmath>
#include <set>

#include "cantor/measure.hpp"
#include "test_rng.hpp"

using namespace cantor;

namespace {

// independent reference: 200-factor product in extended precision
long double ref_sq(long double t, int factors = 200) {
    long double p = 1.0L;
    long double two_pi = 6.283185307179586476925286766559L;
    long double f = 4.0L;
    for (int j = 1; j <= factors; ++j) {
        long double c = cosl(two_pi * t / f);
        p *= c * c;
        f *= 4.0L;
    }
    return p;
}

// brute-force zero set on a window: {4^j (2m+1)} intersected with [-M, M]
std::set<long> brute_zero_set(long M) {
    std::set<long> z;
    for (long p4 = 1; p4 <= M; p4 *= 4)
        for (long m = -M; m <= M; ++m) {
            long v = p4 * (2 * m + 1);
            if (-M <= v && v <= M) z.insert(v);
        }
    return z;
}

} // namespace

TEST_CASE("weight: frozen values and periodicity") {
    CHECK(weight(0.0) == 1.0);
    CHECK(weight(0.25) <= 1e-30);
    CHECK(weight(0.125) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(weight(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    testrng::Rng rng(0x3E1u);
    for (int i = 0; i < 200; ++i) {
        double x = rng.uniform(-3.0, 3.0);
        CHECK(weight(x) == doctest::Approx(weight(x + 1.0)).epsilon(1e-11));
        CHECK(weight(x) >= 0.0);
        CHECK(weight(x) <= 1.0);
    }
}

TEST_CASE("weight_bracket: sound against extended-precision reference") {
    testrng::Rng rng(0xB4ACu);
    long double two_pi = 6.283185307179586476925286766559L;
    for (int i = 0; i < 2000; ++i) {
        double u = rng.uniform(0.0, 1.0);
        long double c = cosl(two_pi * (long double)u);
        double truth = (double)(c * c);
        Enclosure e = weight_bracket(u, 0.0);
        CHECK(e.lo <= truth);
        CHECK(truth <= e.hi);
        CHECK(e.lo >= 0.0);
        CHECK(e.hi <= 1.0);
        // with a fuzz radius the bracket must cover displaced arguments
        double err = 1e-9;
        Enclosure f = weight_bracket(u, err);
        for (double s : {-err, err}) {
            long double cc = cosl(two_pi * (long double)(u + s));
            double v = (double)(cc * cc);
            CHECK(f.lo <= v + 1e-15);
            CHECK(v <= f.hi + 1e-15);
        }
    }
    // exact point cases
    Enclosure one = weight_bracket(0.0, 0.0);
    CHECK(one.lo == 1.0);
    CHECK(one.hi == 1.0);
    Enclosure zero = weight_bracket(0.25, 0.0);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi <= 1e-30);
}

TEST_CASE("in_zero_set: frozen examples and brute-force window") {
    CHECK(in_zero_set(1));
    CHECK_FALSE(in_zero_set(2));
    CHECK(in_zero_set(12));
    CHECK_FALSE(in_zero_set(0));
    CHECK(in_zero_set(4));
    CHECK(in_zero_set(-3));
    CHECK_FALSE(in_zero_set(8));
    CHECK(in_zero_set(BigInt(1) << 200));  // 4^100

    auto z = brute_zero_set(10000);
    for (long k = -10000; k <= 10000; ++k)
        CHECK(in_zero_set(k) == (z.count(k) > 0));
}

TEST_CASE("orthogonal: frozen examples and symmetry") {
    CHECK(orthogonal(1, 4));
    CHECK_FALSE(orthogonal(0, 2));
    CHECK_FALSE(orthogonal(7, 7));
    testrng::Rng rng(0x0A7Bu);
    for (int i = 0; i < 500; ++i) {
        BigInt a = (long)rng.below(2001) - 1000;
        BigInt b = (long)rng.below(2001) - 1000;
        CHECK(orthogonal(a, b) == orthogonal(b, a));
        CHECK(orthogonal(a, b) == in_zero_set(a - b));
    }
}

TEST_CASE("phi_hat: exact endpoint values") {
    Amplitude a0 = phi_hat(0.0);
    CHECK(a0.sq_modulus.lo == 1.0);
    CHECK(a0.sq_modulus.hi == 1.0);
    CHECK(a0.re == 1.0);
    CHECK(a0.im == 0.0);

    Amplitude a1 = phi_hat(1.0);
    CHECK(a1.sq_modulus.lo == 0.0);
    CHECK(a1.sq_modulus.hi == 0.0);
    CHECK(a1.re == 0.0);
    CHECK(a1.im == 0.0);
}

TEST_CASE("phi_hat squared modulus: frozen high-precision values") {
    // 400-factor references computed at 60 significant digits
    struct Case {
        double t;
        double value;
    };
    const Case cases[] = {
        {0.5, 0.4797348107072162744959082},
        {0.3, 0.7822007832332143117692508},
        {1.7, 0.4752162631231572672308979},
        {5.25, 0.02420283207590108969196591},
        {0.125, 0.9594696214144325489918163},
    };
    for (const Case& c : cases) {
        Enclosure e = phi_hat_sq(c.t);
        CHECK(e.contains(c.value));
        CHECK(e.width() <= 1e-12);
    }
}

TEST_CASE("phi_hat amplitude: frozen real/imaginary parts") {
    struct Case {
        double t, re, im;
    };
    const Case cases[] = {
        {0.3, 0.71551174632764484342, 0.51984971299441757765},
        {1.7, 0.62976106954080060912, 0.28038769305014827363},
        {5.25, 0.0, -0.15557259423144260755},
    };
    for (const Case& c : cases) {
        Amplitude a = phi_hat(c.t);
        CHECK(a.re == doctest::Approx(c.re).epsilon(1e-9));
        CHECK(a.im == doctest::Approx(c.im).epsilon(1e-9));
        double sq = a.re * a.re + a.im * a.im;
        CHECK(sq >= a.sq_modulus.lo - 1e-9);
        CHECK(sq <= a.sq_modulus.hi + 1e-9);
    }
}

TEST_CASE("phi_hat_sq_shift: exact and astronomically shifted cases") {
    Enclosure unit = phi_hat_sq_shift(0.0, 0);
    CHECK(unit.lo == 1.0);
    CHECK(unit.hi == 1.0);

    Enclosure z = phi_hat_sq_shift(0.0, 5);
    CHECK(z.lo == 0.0);
    CHECK(z.hi == 0.0);

    // F(4^100 + 2): reference 1.549036765939727e-120 (the argument passes
    // within 2*4^-101 of a cosine zero at factor 101)
    BigInt lam = (BigInt(1) << 200) + 1;  // 4^100 + 1
    Enclosure tiny = phi_hat_sq_shift(1.0, lam);
    CHECK(tiny.contains(1.549036765939727e-120));
    CHECK(tiny.hi <= 1e-119);
    CHECK(tiny.lo > 0.0);
    CHECK(tiny.hi / tiny.lo <= 1.0 + 1e-6);

    // same argument via a negative shift of the mirrored point
    Enclosure mirr = phi_hat_sq_shift(-1.0, -lam);
    CHECK(mirr.contains(1.549036765939727e-120));
}

TEST_CASE("phi_hat_sq_shift agrees with direct evaluation for small shifts") {
    testrng::Rng rng(0x51F7u);
    for (int i = 0; i < 300; ++i) {
        double t = (double)rng.below(1024) / 1024.0;
        long lam = (long)rng.below(2000001) - 1000000;
        Enclosure a = phi_hat_sq_shift(t, lam);
        Enclosure b = phi_hat_sq(t + (double)lam);  // exact sum: both dyadic, small
        // both enclose the same true value, so they must overlap
        CHECK(a.lo <= b.hi);
        CHECK(b.lo <= a.hi);
        CHECK(a.width() <= 1e-12);
    }
}

TEST_CASE("enclosure soundness: extended-precision product lies inside") {
    testrng::Rng rng(0xE9C1u);
    for (int i = 0; i < 1000; ++i) {
        double t = rng.uniform(-10.0, 10.0);
        Enclosure e = phi_hat_sq(t);
        double truth = (double)ref_sq((long double)t);
        CHECK(e.lo <= truth + 1e-15);
        CHECK(truth <= e.hi + 1e-15);
        CHECK(e.lo >= 0.0);
        CHECK(e.hi <= 1.0);
    }
}

TEST_CASE("zero characterization on [-10^4, 10^4]") {
    // analytically detected zeros, never float underflow: hi is exactly 0 on
    // Z and comfortably above tolerance off Z (min off-Z value ~2.4e-7)
    for (long k = -10000; k <= 10000; ++k) {
        Enclosure e = phi_hat_sq((double)k);
        bool zero = in_zero_set(k);
        CHECK(zero == (e.hi <= 1e-12));
        if (zero) CHECK(e.hi == 0.0);
        if (k != 0 && !zero) CHECK(e.lo > 1e-8);
    }
}

TEST_CASE("pair identity: m((x+e)/4) + m((x+e')/4) = 1 for parity-split pairs") {
    const int pairs[][2] = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    testrng::Rng rng(0x9A17u);
    for (int i = 0; i < 1000; ++i) {
        double x = rng.uniform(-50.0, 50.0);
        for (auto& pr : pairs) {
            double s = weight((x + pr[0]) / 4) + weight((x + pr[1]) / 4);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("product inequality: F(x + 4^n k) >= F(x) * F(x/4^n + k)") {
    testrng::Rng rng(0x11E9u);
    for (int i = 0; i < 400; ++i) {
        double x = rng.uniform(-1.0, 1.0);
        int n = 1 + (int)rng.below(6);
        long k = (long)rng.below(129) - 64;
        double p4n = std::ldexp(1.0, 2 * n);
        BigInt shift = BigInt(k) * (long)p4n;
        Enclosure lhs = phi_hat_sq_shift(x, shift);
        Enclosure f1 = phi_hat_sq(x);
        Enclosure f2 = phi_hat_sq(x / p4n + (double)k);
        CHECK(lhs.lo >= f1.hi * f2.hi - 1e-9);
    }
}

TEST_CASE("telescoping: partial products converge to the shifted transform") {
    testrng::Rng rng(0x7E1Eu);
    for (int i = 0; i < 60; ++i) {
        long lam = (long)rng.below(8193) - 4096;  // lng <= 7
        double x = rng.uniform(-1.0, 1.0);
        Code c = encode(lam);
        std::size_t N = lng(lam) + 30;
        DigitWord w;
        for (std::size_t j = 0; j < N; ++j) w.push_back(c.digit(j));
        double p = partial_product(x, w);
        Enclosure e = phi_hat_sq_shift(x, lam);
        CHECK(std::abs(p - e.mid()) <= 1e-6);
    }
}

TEST_CASE("partial_product: frozen examples") {
    CHECK(partial_product(0.0, word({0})) == 1.0);
    CHECK(partial_product(0.0, word({1})) <= 1e-30);
    double s = partial_product(0.3, word({0})) + partial_product(0.3, word({1}));
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(partial_product(0.0, DigitWord{}), invalid_params);
}

TEST_CASE("chaos_sample: range, mean, determinism") {
    auto s = chaos_sample(1000000, 42);
    REQUIRE(s.size() == 1000000u);
    double sum = 0.0;
    for (const auto& p : s) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 2.0 / 3.0 + 1e-12);
        sum += p.x;
    }
    double mean = sum / (double)s.size();
    CHECK(std::abs(mean - 1.0 / 3.0) <= 0.01);

    auto again = chaos_sample(10, 42);
    auto other = chaos_sample(10, 43);
    CHECK(again[0].x == s[0].x);
    CHECK(again[9].x == s[9].x);
    CHECK(other[0].x != s[0].x);
}

TEST_CASE("empirical_cf: exact at t=0, matches phi_hat elsewhere") {
    auto s = chaos_sample(1000000, 7);
    auto one = empirical_cf(s, 0.0);
    CHECK(one.real() == 1.0);
    CHECK(one.imag() == 0.0);

    CHECK(std::abs(empirical_cf(s, 1.0)) <= 0.01);  // 1 is in the zero set

    Amplitude a = phi_hat(0.3);
    auto z = empirical_cf(s, 0.3);
    CHECK(std::abs(z.real() - a.re) <= 0.01);
    CHECK(std::abs(z.imag() - a.im) <= 0.01);
}

TEST_CASE("tolerance machinery") {
    CHECK_THROWS_AS(phi_hat_sq(0.3, EvalConfig{0.0, 1000000}), tolerance_not_reached);
    CHECK_THROWS_AS(phi_hat_sq(0.3, EvalConfig{1e-12, 3}), tolerance_not_reached);
    CHECK_THROWS_AS(phi_hat_sq_shift(2.5, 0), invalid_params);
    CHECK_THROWS_AS(phi_hat_sq(std::nan("")), invalid_params);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stpc/errors.hpp"
#include "stpc/io.hpp"
#include "stpc/paircorr.hpp"

using namespace stpc;
using namespace stpc::paircorr;
using angles::HeckeAngleSequence;

namespace {

HeckeAngleSequence angles_at(std::initializer_list<double> thetas) {
    HeckeAngleSequence seq;
    seq.label = "test";
    std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    std::size_t i = 0;
    for (double t : thetas) seq.push(primes[i++], t);
    return seq;
}

std::vector<double> grid(double a, double b, double step) {
    std::vector<double> g;
    for (double s = a; s <= b + 1e-12; s += step) g.push_back(s);
    return g;
}

} // namespace

TEST_CASE("window construction and schedule") {
    LocalWindow w(0.25, 8.0);
    CHECK(w.A == doctest::Approx(1.0));
    CHECK(w.C_psi == doctest::Approx(2.0));
    LocalWindow mid(0.5, 4.0);
    CHECK(mid.A == doctest::Approx(2.0));
    CHECK(mid.C_psi == doctest::Approx(8.0));
    CHECK_THROWS_AS(LocalWindow(0.25, 3.0), ConfigError); // touches 0
    CHECK_THROWS_AS(LocalWindow(0.0, 8.0), ConfigError);
    CHECK_THROWS_AS(LocalWindow(0.5, 1.5), ConfigError);
    // the schedule always yields a valid window
    for (double psi : {0.1, 0.25, 1.0 / 3.0, 0.5, 0.9}) {
        double L = schedule_L(1300000, psi);
        CHECK_NOTHROW(LocalWindow(psi, L));
    }
    CHECK(schedule_L(1300000, 0.5) == doctest::Approx(3.0));
}

TEST_CASE("count_in_window") {
    LocalWindow w(0.25, 20.0);
    HeckeAngleSequence empty;
    CHECK(count_in_window(empty, 100, w) == 0);
    auto seq = angles_at({0.1, 0.21, 0.25, 0.3, 0.31});
    CHECK(count_in_window(seq, 100, w) == 3); // closed interval [0.2, 0.3]
    CHECK(count_in_window(seq, 3, w) == 1);   // only 0.21 among p <= 3
    auto at_psi = angles_at({0.25, 0.25001, 0.2499});
    CHECK(count_in_window(at_psi, 100, w) == 3);
}

TEST_CASE("window count matches the mu_inf mass") {
    auto seq = io::synth_sato_tate(10000, 99);
    std::uint64_t x = seq.primes.back();
    LocalWindow w(0.25, 20.0);
    double expect = 10000.0 * w.A * 2.0 / w.L; // = 1000
    auto got = static_cast<double>(count_in_window(seq, x, w));
    CHECK(std::abs(got - expect) <= 3.0 * std::sqrt(expect));
}

TEST_CASE("pair counters agree exactly on random data") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 2 + rng() % 40;
        std::vector<double> v(n);
        for (auto& x : v) x = (rng() >> 11) * 0x1.0p-53;
        double delta = ((rng() >> 11) * 0x1.0p-53) * 0.3;
        std::vector<double> sorted = v;
        std::sort(sorted.begin(), sorted.end());
        CHECK(count_pairs_within(sorted, delta) == count_pairs_within_naive(v, delta));
    }
}

TEST_CASE("global estimator basics") {
    // two angles with equal H: every s > 0 sees both ordered pairs
    auto two = angles_at({0.3, 0.3});
    auto rep = global_pair_correlation(two, 100, {0.5, 1.0});
    CHECK(rep.value[0] == doctest::Approx(2.0 / 2.0));
    CHECK(rep.value[1] == doctest::Approx(1.0));

    auto distinct = angles_at({0.2, 0.5, 0.8});
    auto rep0 = global_pair_correlation(distinct, 100, {0.0});
    CHECK(rep0.value[0] == 0.0);

    // monotone in s
    auto seq = io::synth_sato_tate(500, 3);
    auto repm = global_pair_correlation(seq, seq.primes.back(), grid(0.0, 3.0, 0.1));
    for (std::size_t i = 1; i < repm.value.size(); ++i) CHECK(repm.value[i] >= repm.value[i - 1]);
}

TEST_CASE("global estimator is Poissonian on synthetic data") {
    auto seq = io::synth_sato_tate(10000, 424242);
    std::uint64_t x = seq.primes.back();
    auto rep = global_pair_correlation(seq, x, grid(0.5, 3.0, 0.5));
    for (std::size_t i = 0; i < rep.s.size(); ++i) {
        CAPTURE(rep.s[i]);
        CHECK(rep.value[i] == doctest::Approx(2.0 * rep.s[i]).epsilon(0.05));
    }
}

TEST_CASE("local estimator: errors and degenerate windows") {
    LocalWindow w(0.25, 20.0);
    auto seq = angles_at({0.25, 0.6, 0.7});
    CHECK_THROWS_AS(local_pair_correlation(seq, 100, w, {1.0}), EmptyWindow);
    auto seq2 = angles_at({0.21, 0.25, 0.29, 0.6});
    auto rep = local_pair_correlation(seq2, 100, w, {0.0});
    CHECK(rep.value[0] == 0.0);
    CHECK(rep.window_count == 3);
}

TEST_CASE("local estimator matches 2s at psi = 1/4 (paper normalization)") {
    auto seq = io::synth_sato_tate(100000, 7);
    std::uint64_t x = seq.primes.back();
    LocalWindow w(0.25, 5.0);
    auto rep = local_pair_correlation(seq, x, w, grid(0.5, 2.0, 0.25), Normalization::Paper);
    for (std::size_t i = 0; i < rep.s.size(); ++i) {
        CAPTURE(rep.s[i]);
        CHECK(std::abs(rep.value[i] - 2.0 * rep.s[i]) <= 0.1 * 2.0 * rep.s[i]);
    }
}

TEST_CASE("local and rescaled agree within 5% at L = 5") {
    // psi = 1/2: mu_inf is flattest there, the regime where the raw-angle
    // rescaling of the straightened count is meaningful at so small an L
    auto seq = io::synth_sato_tate(100000, 11);
    std::uint64_t x = seq.primes.back();
    LocalWindow w(0.5, 5.0);
    auto g = grid(0.25, 3.0, 0.25);
    auto loc = local_pair_correlation(seq, x, w, g, Normalization::Straightened);
    auto res = rescaled_local_pair_correlation(seq, x, w, g, Normalization::Straightened);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double denom = std::max({std::abs(loc.value[i]), std::abs(res.value[i]), 0.2});
        CAPTURE(g[i]);
        CHECK(std::abs(loc.value[i] - res.value[i]) / denom <= 0.05);
    }
    // identical angles: both estimators count every ordered pair
    auto same = angles_at({0.5, 0.5, 0.5});
    auto l2 = local_pair_correlation(same, 100, w, {1.0});
    auto r2 = rescaled_local_pair_correlation(same, 100, w, {1.0});
    CHECK(l2.pairs[0] == 6);
    CHECK(r2.pairs[0] == 6);
}

TEST_CASE("smoothed pair correlation: degenerate cases") {
    LocalWindow w(0.25, 8.0);
    auto seq = angles_at({0.2, 0.26, 0.3, 0.4});
    // identically-zero transforms
    auto zero = smoothing::TestFunction::sampled(1.0, {0.0, 0.0, 0.0}, false);
    CHECK(smoothed_pair_correlation(seq, 100, w, zero, zero) == 0.0);

    // constant kernels: B scale < 1 keeps only the l = 0 (n = 0) terms
    auto rho = smoothing::make_fejer(0.1, false);  // B L = 0.8 < 1
    auto g = smoothing::make_fejer(0.24, false);   // B piN < 1 for piN = 4
    auto two = angles_at({0.23, 0.29});
    double piN = 2.0;
    double r0 = rho.fourier(0.0), g0 = g.fourier(0.0);
    double expect = w.L / (4.0 * w.A * piN) * 2.0 * (2.0 * r0 / w.L) * (2.0 * r0 / w.L) *
                    (4.0 * g0 / piN);
    CHECK(smoothed_pair_correlation(two, 100, w, rho, g) == doctest::Approx(expect));
}

TEST_CASE("smoothed pair correlation: kernel and Fourier routes agree") {
    std::mt19937_64 rng(17);
    LocalWindow w(0.3, 6.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 20 + rng() % 180;
        auto seq = io::synth_sato_tate(n, 1000 + trial);
        bool bump = trial % 2 == 0;
        auto rho = bump ? smoothing::make_bump(1.0, false) : smoothing::make_fejer(1.0, true);
        auto g = smoothing::make_fejer(0.5, false);
        auto sv = smoothed_pair_correlation_full(seq, seq.primes.back(), w, rho, g);
        REQUIRE(sv.direct_checked);
        double scale = std::max({std::abs(sv.value), std::abs(sv.direct), 1e-12});
        CHECK(std::abs(sv.value - sv.direct) <= 1e-6 * scale);
    }
}

TEST_CASE("weyl sums") {
    auto seq = io::synth_sato_tate(2000, 23);
    auto c0 = weyl_sum(seq, seq.primes.back(), 0);
    CHECK(c0.real() == 1.0);
    CHECK(c0.imag() == 0.0);
    // mu_inf moments: C_1 = -1/2, C_m = 0 for |m| >= 2
    auto c1 = weyl_sum(seq, seq.primes.back(), 1);
    CHECK(c1.real() == doctest::Approx(-0.5).epsilon(0.15));
    auto c3 = weyl_sum(seq, seq.primes.back(), 3);
    CHECK(std::abs(c3.real()) < 0.08);
}

TEST_CASE("level spacings") {
    // uniform grid of H-values: all gaps equal
    HeckeAngleSequence seq;
    std::uint64_t primes[] = {2, 3, 5, 7, 11};
    for (int i = 0; i < 5; ++i)
        seq.push(primes[i], angles::st_cdf_inverse((i + 0.5) / 5.0));
    auto rep = level_spacings(seq, 100);
    CHECK(rep.gaps.size() == 4);
    for (double gp : rep.gaps) CHECK(gp == doctest::Approx(1.0).epsilon(1e-9));

    auto three = angles_at({0.2, 0.5, 0.7});
    CHECK(level_spacings(three, 100).gaps.size() == 2);

    auto big = io::synth_sato_tate(100000, 31);
    auto ks = level_spacings(big, big.primes.back()).ks_exponential();
    CHECK(ks <= 0.01);
}

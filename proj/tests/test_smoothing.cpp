#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stpc/smoothing.hpp"

using namespace stpc::smoothing;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("fejer transform values") {
    auto f = make_fejer(1.0, false);
    CHECK(f.fourier(0.0) == doctest::Approx(1.0));
    CHECK(f.fourier(0.5) == doctest::Approx(0.5));
    CHECK(f.fourier(1.0) == 0.0);
    CHECK(f.fourier(-0.25) == f.fourier(0.25));
    CHECK(f.convolution_at_zero() == doctest::Approx(2.0 / 3.0));
    auto f2 = make_fejer(2.0, false);
    CHECK(f2.convolution_at_zero() == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("normalization makes rho^2 of mass one") {
    for (double B : {0.5, 1.0, 2.0, 4.0}) {
        auto f = make_fejer(B, true);
        CHECK(f.convolution_at_zero() == doctest::Approx(1.0).epsilon(1e-12));
        auto b = make_bump(B, true);
        CHECK(b.convolution_at_zero() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bump is even, compactly supported, unit at zero before scaling") {
    auto b = make_bump(2.0, false);
    CHECK(b.fourier(0.0) == doctest::Approx(1.0));
    CHECK(b.fourier(2.0) == 0.0);
    CHECK(b.fourier(1.3) == b.fourier(-1.3));
    CHECK(b.fourier(1.0) == doctest::Approx(std::exp(1.0 - 1.0 / (1.0 - 0.25)))); // u = 1/2
}

TEST_CASE("periodization basics") {
    auto f = make_fejer(1.0, false);
    // L = 1: only l = 0 survives, the kernel is the constant 1
    auto k1 = periodize(f, 1.0);
    CHECK(k1.max_index() == 1);
    CHECK(k1.coefficient(1) == 0.0);
    for (double t : {0.0, 0.3, 0.77}) CHECK(k1(t) == doctest::Approx(1.0));

    auto k = periodize(f, 10.0);
    // mean over a period is f^(0)/scale
    const int n = 2048;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += k(static_cast<double>(i) / n);
    CHECK(acc / n == doctest::Approx(f.fourier(0.0) / 10.0).epsilon(1e-10));
    // periodicity
    for (double t : {-0.4, 0.1, 0.9}) CHECK(k(t + 1.0) == doctest::Approx(k(t)).epsilon(1e-12));
}

TEST_CASE("fourier series equals the lattice sum of the time-domain kernel") {
    // the sinc^2 tail beyond |m| = M is bounded by 2/(pi^2 B L^2 (M-1)), so
    // the oracle sum is carried far enough to push it below 1e-7
    for (double B : {1.0, 4.0}) {
        auto f = make_fejer(B, false);
        for (double L : {5.0, 20.0, 100.0}) {
            auto k = periodize(f, L);
            long M = 51 + static_cast<long>(2e7 / (9.8696 * B * L * L));
            double worst = 0.0;
            for (int i = 0; i < 1000; ++i) {
                double theta = static_cast<double>(i) / 1000.0;
                double lattice = 0.0;
                for (long m = -M; m <= M; ++m)
                    lattice += f.time_domain(L * (theta + m));
                worst = std::max(worst, std::abs(k(theta) - lattice));
            }
            CAPTURE(B);
            CAPTURE(L);
            CHECK(worst < 1e-6);
        }
    }
}

TEST_CASE("integer-scale periodization matches the closed-form Fejer kernel") {
    // B = 1, integer L: rho_L(theta) = (sin(pi L theta)/(L sin(pi theta)))^2
    auto f = make_fejer(1.0, false);
    for (double L : {5.0, 20.0, 100.0}) {
        auto k = periodize(f, L);
        for (int i = 1; i < 500; ++i) {
            double theta = static_cast<double>(i) / 500.0 + 3e-4;
            double num = std::sin(kPi * L * theta) / (L * std::sin(kPi * theta));
            CHECK(k(theta) == doctest::Approx(num * num).epsilon(1e-9));
        }
    }
}

TEST_CASE("bump kernel: series vs lattice sum") {
    auto f = make_bump(1.0, false);
    auto k = periodize(f, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        double theta = static_cast<double>(i) / 200.0;
        double lattice = 0.0;
        for (int m = -40; m <= 40; ++m) lattice += f.time_domain(10.0 * (theta + m));
        worst = std::max(worst, std::abs(k(theta) - lattice));
    }
    CHECK(worst < 1e-5); // quadrature-limited
}

TEST_CASE("partial sums approach the convolution limit with 1/L error") {
    // (1/L) sum_{n=1}^{LB} rho^(n/L)^2 (1 + cos 4 pi n psi)
    //   -> (rho*rho)(0)      at psi = 1/2
    //   -> (rho*rho)(0) / 2  away from 1/2
    for (bool use_bump : {false, true}) {
        auto f = use_bump ? make_bump(1.0, false) : make_fejer(1.0, false);
        double conv = f.convolution_at_zero();
        for (double psi : {0.5, 0.13, 0.25, 0.37}) {
            double target = (psi == 0.5) ? conv : 0.5 * conv;
            for (double L : {100.0, 1000.0, 10000.0}) {
                auto lb = static_cast<long>(std::floor(L * f.support()));
                double acc = 0.0;
                for (long n = 1; n <= lb; ++n) {
                    double r = f.fourier(static_cast<double>(n) / L);
                    acc += r * r * (1.0 + std::cos(4.0 * kPi * n * psi));
                }
                acc /= L;
                CAPTURE(use_bump);
                CAPTURE(psi);
                CAPTURE(L);
                CHECK(std::abs(acc - target) <= 5.0 * conv / L);
            }
        }
    }
}

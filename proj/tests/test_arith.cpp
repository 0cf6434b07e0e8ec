#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stpc/arith.hpp"

using namespace stpc::arith;

namespace {

// oracle: trial-division prime count
std::uint64_t pi_trial(std::uint64_t x) {
    std::uint64_t n = 0;
    for (std::uint64_t k = 2; k <= x; ++k) {
        bool p = true;
        for (std::uint64_t d = 2; d * d <= k; ++d)
            if (k % d == 0) {
                p = false;
                break;
            }
        if (p) ++n;
    }
    return n;
}

// oracle: plain odd-only Eratosthenes, independent of the segmented code
std::uint64_t pi_simple(std::uint64_t x) {
    if (x < 2) return 0;
    std::vector<std::uint8_t> is(x + 1, 1);
    std::uint64_t n = 0;
    for (std::uint64_t i = 2; i <= x; ++i) {
        if (!is[i]) continue;
        ++n;
        for (std::uint64_t j = i * i; j <= x; j += i) is[j] = 0;
    }
    return n;
}

// oracle: 12*H(n) by directly enumerating reduced forms of discriminant -n
std::int64_t hurwitz12_brute(std::uint64_t n) {
    if (n == 0) return -1;
    std::int64_t acc = 0;
    for (std::int64_t b = 0; static_cast<std::uint64_t>(3 * b * b) <= n; ++b) {
        for (std::int64_t a = std::max<std::int64_t>(b, 1);; ++a) {
            std::int64_t num = static_cast<std::int64_t>(n) + b * b;
            if (4 * a * a - b * b > static_cast<std::int64_t>(n)) break;
            if (num % (4 * a) != 0) continue;
            std::int64_t c = num / (4 * a);
            if (c < a) continue;
            // reduced: 0 <= b <= a <= c; count mirror class unless b=0, b=a, a=c
            if (b == 0)
                acc += (a == c) ? 6 : 12;
            else if (b == a)
                acc += (a == c) ? 4 : 12;
            else if (a == c)
                acc += 12;
            else
                acc += 24;
        }
    }
    return acc;
}

} // namespace

TEST_CASE("sieve small examples") {
    auto t = sieve(10);
    CHECK(t.primes == std::vector<std::uint64_t>{2, 3, 5, 7});
    auto t2 = sieve(2);
    CHECK(t2.primes == std::vector<std::uint64_t>{2});
}

TEST_CASE("sieve agrees with trial division up to 10^4") {
    auto t = sieve(10000);
    for (std::uint64_t x : {2ull, 3ull, 10ull, 97ull, 100ull, 541ull, 1000ull, 9999ull, 10000ull})
        CHECK(t.pi(x) == pi_trial(x));
    CHECK(t.pi(10000) == pi_trial(10000));
}

TEST_CASE("pi(10^6) = 78498 against a second sieve") {
    auto t = sieve(1000000);
    CHECK(t.pi(1000000) == 78498);
    CHECK(pi_simple(1000000) == 78498);
}

TEST_CASE("coprime-to-level count") {
    auto t = sieve(100);
    CHECK(t.pi_coprime(100, 11) == t.pi(100) - 1);
    CHECK(t.pi_coprime(100, 1) == t.pi(100));
    CHECK(t.pi_coprime(100, 6) == t.pi(100) - 2);
    auto cp = t.coprime_to(6);
    CHECK(cp.front() == 5);
}

TEST_CASE("streaming sieve matches materialized table") {
    auto t = sieve(100000);
    std::size_t i = 0;
    for_each_prime(100000, [&](std::uint64_t p) {
        REQUIRE(i < t.primes.size());
        CHECK(p == t.primes[i]);
        ++i;
    });
    CHECK(i == t.primes.size());
}

TEST_CASE("chebyshev_X basics") {
    CHECK(chebyshev_X(0, 1.3) == 1.0);
    CHECK(chebyshev_X(1, 1.3) == doctest::Approx(1.3));
    for (double u : {-1.7, -0.4, 0.0, 0.9, 2.0})
        CHECK(chebyshev_X(2, u) == doctest::Approx(u * u - 1.0));
    for (long m : {1l, 2l, 5l, 17l})
        CHECK(chebyshev_X(m, 2.0) == doctest::Approx(m + 1.0));
}

TEST_CASE("chebyshev_X sine-quotient identity") {
    const double pi = 3.14159265358979323846;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        double theta = 1e-3 + (1.0 - 2e-3) * (rng() >> 11) * 0x1.0p-53;
        double u = 2.0 * std::cos(pi * theta);
        for (long m = 1; m <= 30; ++m) {
            double lhs = chebyshev_X(m, u) * std::sin(pi * theta);
            double rhs = std::sin((m + 1) * pi * theta);
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
}

TEST_CASE("hurwitz values") {
    HurwitzCache cache(100);
    CHECK(cache.hurwitz12(0) == -1); // H(0) = -1/12
    CHECK(cache.hurwitz12(3) == 4);  // H(3) = 1/3
    CHECK(cache.hurwitz12(4) == 6);  // H(4) = 1/2
    CHECK(cache.hurwitz12(1) == 0);
    CHECK(cache.hurwitz12(2) == 0);
    CHECK(cache.hurwitz12(12) == 16); // H(12) = 4/3
    CHECK(cache.hurwitz12(23) == 36); // h(-23) = 3
}

TEST_CASE("hurwitz cache matches brute-force enumeration up to 2000") {
    HurwitzCache cache(2000);
    for (std::uint64_t n = 0; n <= 2000; ++n) {
        CAPTURE(n);
        CHECK(cache.hurwitz12(n) == hurwitz12_brute(n));
        if (n % 4 == 1 || n % 4 == 2) CHECK(cache.hurwitz12(n) == 0);
    }
    // spot-check the single-value variant
    for (std::uint64_t n : {0ull, 3ull, 4ull, 7ull, 1999ull, 2000ull})
        CHECK(hurwitz12_single(n) == cache.hurwitz12(n));
}

TEST_CASE("primitive class numbers split off square conductors") {
    HurwitzCache cache(200);
    // H(m) = sum over f with f^2 | m of h_w(-m/f^2)
    for (std::uint64_t m = 3; m <= 200; ++m) {
        std::int64_t acc = 0;
        for (std::uint64_t f = 1; f * f <= m; ++f) {
            if (m % (f * f) != 0) continue;
            std::uint64_t d = m / (f * f);
            if (d % 4 == 0 || d % 4 == 3) acc += cache.primitive12(d);
        }
        CHECK(acc == cache.hurwitz12(m));
    }
}

TEST_CASE("delta coefficients") {
    auto d = delta_qexp(10);
    CHECK(d[0] == 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == -24);
    CHECK(d[3] == 252);
    CHECK(d[4] == -1472);
    CHECK(d[5] == 4830);
    CHECK(d[10] == -115920);
}

TEST_CASE("delta fast path matches an independent product expansion") {
    // prod (1-q^n)^24 expanded naively with QSeries
    const std::size_t M = 60;
    QSeries prod(M);
    prod[0] = 1;
    for (std::size_t n = 1; n <= M; ++n) {
        QSeries f(M);
        f[0] = 1;
        f[n] = -1;
        prod = prod.mul(f.pow(24));
    }
    auto d = delta_qexp(M);
    for (std::size_t n = 1; n <= M; ++n) CHECK(d[n] == prod[n - 1]);
}

TEST_CASE("eisenstein coefficients") {
    auto e4 = eisenstein_qexp(4, 6);
    CHECK(e4[0] == 1);
    CHECK(e4[1] == 240);
    CHECK(e4[2] == 240 * 9); // sigma_3(2) = 9
    auto e6 = eisenstein_qexp(6, 6);
    CHECK(e6[0] == 1);
    CHECK(e6[1] == -504);
    CHECK(e6[2] == -504 * 33); // sigma_5(2) = 33
}

TEST_CASE("qseries ring laws on random inputs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto rand_series = [&](std::size_t ord) {
            QSeries s(ord);
            for (std::size_t i = 0; i <= ord; ++i)
                s[i] = static_cast<std::int64_t>(rng() % 21) - 10;
            return s;
        };
        QSeries a = rand_series(12), b = rand_series(12), c = rand_series(12);
        QSeries ab = a.mul(b), ba = b.mul(a);
        for (std::size_t i = 0; i <= 12; ++i) CHECK(ab[i] == ba[i]);
        QSeries l = a.mul(b).mul(c), r = a.mul(b.mul(c));
        for (std::size_t i = 0; i <= 12; ++i) CHECK(l[i] == r[i]);
    }
}

TEST_CASE("prime_count memoized helper") {
    CHECK(prime_count(100) == 25);
    CHECK(prime_count(100) == 25);
    CHECK(prime_count(2) == 1);
}

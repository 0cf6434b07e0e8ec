#include "stpc/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "stpc/parallel.hpp"

namespace stpc::arith {

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
    auto it = std::upper_bound(primes.begin(), primes.end(), x);
    return static_cast<std::uint64_t>(it - primes.begin());
}

std::uint64_t PrimeTable::pi_coprime(std::uint64_t x, std::uint64_t level) const {
    std::uint64_t n = pi(x);
    if (level <= 1) return n;
    std::uint64_t excluded = 0;
    for (std::uint64_t p : primes) {
        if (p > x) break;
        if (level % p == 0) ++excluded;
    }
    return n - excluded;
}

std::vector<std::uint64_t> PrimeTable::coprime_to(std::uint64_t level) const {
    std::vector<std::uint64_t> out;
    out.reserve(primes.size());
    for (std::uint64_t p : primes)
        if (level <= 1 || level % p != 0) out.push_back(p);
    return out;
}

void for_each_prime(std::uint64_t x, const std::function<void(std::uint64_t)>& visit) {
    if (x < 2) return;
    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x))) + 1;

    // small primes <= sqrt(x)
    std::vector<std::uint8_t> small(root + 1, 1);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        if (i <= x) base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
    }
    for (std::uint64_t p : base)
        if (p <= x) visit(p);

    const std::uint64_t segment = std::max<std::uint64_t>(1 << 16, root);
    std::vector<std::uint8_t> sieve_seg(segment);
    for (std::uint64_t low = root + 1; low <= x; low += segment) {
        std::uint64_t high = std::min(x, low + segment - 1);
        std::fill(sieve_seg.begin(), sieve_seg.begin() + (high - low + 1), 1);
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t start = ((low + p - 1) / p) * p;
            if (start < p * p) start = p * p;
            for (std::uint64_t j = start; j <= high; j += p) sieve_seg[j - low] = 0;
        }
        for (std::uint64_t i = low; i <= high; ++i)
            if (sieve_seg[i - low]) visit(i);
    }
}

PrimeTable sieve(std::uint64_t x) {
    if (x < 2) throw std::invalid_argument("sieve: bound must be >= 2");
    PrimeTable t;
    t.bound = x;
    if (x >= 10) {
        double xd = static_cast<double>(x);
        t.primes.reserve(static_cast<std::size_t>(xd / (std::log(xd) - 1.1)) + 16);
    }
    for_each_prime(x, [&t](std::uint64_t p) { t.primes.push_back(p); });
    return t;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (std::uint64_t d = 29; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t prime_count(std::uint64_t x) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::uint64_t> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(x);
        if (it != memo.end()) return it->second;
    }
    std::uint64_t n = 0;
    if (x >= 2) for_each_prime(x, [&n](std::uint64_t) { ++n; });
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(x, n);
    return n;
}

// ---------------------------------------------------------------------------
// Chebyshev X_m
// ---------------------------------------------------------------------------

double chebyshev_X(long m, double u) {
    if (m < 0) return 0.0;
    if (m == 0) return 1.0;
    double prev = 1.0, cur = u;
    for (long j = 2; j <= m; ++j) {
        double next = u * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Hurwitz class numbers
// ---------------------------------------------------------------------------

namespace {

// Enumerate reduced forms (a,b,c), 0 <= b <= a <= c, 4ac - b^2 <= M, and add
// the class weight (in units of 1/12) at n = 4ac - b^2.  A class with
// 0 < b < a < c also represents its (a,-b,c) mirror, hence weight 24.
// (a,0,a) carries 1/2 and (a,a,a) carries 1/3.
template <class Sink>
void enumerate_reduced_forms(std::uint64_t M, Sink&& sink) {
    for (std::uint64_t b = 0; 3 * b * b <= M; ++b) {
        std::uint64_t a0 = std::max<std::uint64_t>(b, 1);
        for (std::uint64_t a = a0; 4 * a * a - b * b <= M; ++a) {
            for (std::uint64_t c = a;; ++c) {
                std::uint64_t n = 4 * a * c - b * b;
                if (n > M) break;
                int w;
                if (b == 0)
                    w = (a == c) ? 6 : 12;
                else if (b == a)
                    w = (a == c && b == a) ? 4 : 12;
                else if (a == c)
                    w = 12;
                else
                    w = 24;
                sink(n, a, b, c, w);
            }
        }
    }
}

std::uint64_t gcd3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return std::gcd(a, std::gcd(b, c));
}

} // namespace

HurwitzCache::HurwitzCache(std::uint64_t initial_bound) {
    if (initial_bound > 0) rebuild(initial_bound);
}

void HurwitzCache::rebuild(std::uint64_t n) {
    bound_ = n;
    h12_.assign(n + 1, 0);
    hw12_.assign(n + 1, 0);
    h12_[0] = -1; // H(0) = -1/12
    enumerate_reduced_forms(n, [this](std::uint64_t m, std::uint64_t a, std::uint64_t b,
                                      std::uint64_t c, int w) {
        h12_[m] += w;
        if (gcd3(a, b, c) == 1) hw12_[m] += w;
    });
}

void HurwitzCache::ensure(std::uint64_t n) {
    if (n <= bound_) return;
    std::uint64_t target = std::max<std::uint64_t>(n, bound_ ? bound_ * 2 : 1024);
    rebuild(target);
}

std::int64_t HurwitzCache::hurwitz12(std::uint64_t n) const {
    if (n > bound_) throw std::out_of_range("HurwitzCache: n beyond bound");
    return h12_[n];
}

std::int64_t HurwitzCache::primitive12(std::uint64_t n) const {
    if (n > bound_) throw std::out_of_range("HurwitzCache: n beyond bound");
    return n == 0 ? -1 : hw12_[n];
}

std::int64_t hurwitz12_single(std::uint64_t n) {
    if (n == 0) return -1;
    if (n % 4 == 1 || n % 4 == 2) return 0;
    std::int64_t total = 0;
    enumerate_reduced_forms(n, [&](std::uint64_t m, std::uint64_t, std::uint64_t, std::uint64_t,
                                   int w) {
        if (m == n) total += w;
    });
    return total;
}

// ---------------------------------------------------------------------------
// QSeries
// ---------------------------------------------------------------------------

QSeries QSeries::add(const QSeries& other) const {
    std::size_t n = std::min(order(), other.order());
    QSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) out[i] = c_[i] + other[i];
    return out;
}

QSeries QSeries::mul(const QSeries& other) const {
    std::size_t n = std::min(order(), other.order());
    QSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (other[j] == 0) continue;
            out[i + j] += c_[i] * other[j];
        }
    }
    return out;
}

QSeries QSeries::pow(unsigned e) const {
    QSeries result(order());
    result[0] = 1;
    QSeries base = *this;
    while (e > 0) {
        if (e & 1u) result = result.mul(base);
        e >>= 1u;
        if (e) base = base.mul(base);
    }
    return result;
}

QSeries QSeries::shift(std::size_t k) const {
    QSeries out(order());
    for (std::size_t i = 0; i + k <= order(); ++i) out[i + k] = c_[i];
    return out;
}

// ---------------------------------------------------------------------------
// Delta and Eisenstein series
// ---------------------------------------------------------------------------

namespace {

using i128 = __int128;

// eta^3 = sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}   (Jacobi)
std::vector<i128> eta3_sparse(std::size_t M) {
    std::vector<i128> s(M + 1, 0);
    for (std::uint64_t m = 0;; ++m) {
        std::uint64_t e = m * (m + 1) / 2;
        if (e > M) break;
        s[e] += (m % 2 == 0) ? static_cast<i128>(2 * m + 1) : -static_cast<i128>(2 * m + 1);
    }
    return s;
}

std::vector<i128> square_series(const std::vector<i128>& a) {
    std::size_t M = a.size() - 1;
    std::vector<i128> out(M + 1, 0);
    parallel_for(M + 1, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t n = lo; n < hi; ++n) {
            i128 acc = 0;
            std::size_t half = n / 2;
            for (std::size_t i = 0; i <= half; ++i) {
                i128 prod = a[i] * a[n - i];
                acc += (2 * i == n) ? prod : 2 * prod;
            }
            out[n] = acc;
        }
    });
    return out;
}

} // namespace

std::vector<i128> delta_tau_fast(std::size_t M) {
    if (M < 1) throw std::invalid_argument("delta_tau_fast: M >= 1 required");
    if (M > 300000) throw std::invalid_argument("delta_tau_fast: M too large for 128-bit path");
    // tau(n) = coefficient of q^{n-1} in eta(q)^24
    std::vector<i128> e3 = eta3_sparse(M);    // eta^3
    std::vector<i128> e6 = square_series(e3); // eta^6
    std::vector<i128> e12 = square_series(e6);
    std::vector<i128> e24 = square_series(e12);
    std::vector<i128> tau(M + 1, 0);
    for (std::size_t n = 1; n <= M; ++n) tau[n] = e24[n - 1];
    return tau;
}

QSeries delta_qexp(std::size_t M) {
    if (M < 1) throw std::invalid_argument("delta_qexp: M >= 1 required");
    std::vector<i128> tau = delta_tau_fast(M);
    QSeries out(M);
    for (std::size_t n = 1; n <= M; ++n) {
        i128 v = tau[n];
        bool neg = v < 0;
        if (neg) v = -v;
        bigint b = static_cast<std::uint64_t>(v >> 64);
        b <<= 64;
        b += static_cast<std::uint64_t>(v);
        out[n] = neg ? -b : b;
    }
    return out;
}

QSeries eisenstein_qexp(int weight, std::size_t M) {
    if (weight != 4 && weight != 6) throw std::invalid_argument("eisenstein_qexp: weight must be 4 or 6");
    QSeries out(M);
    out[0] = 1;
    int power = (weight == 4) ? 3 : 5;
    bigint factor = (weight == 4) ? 240 : -504;
    // sigma_power sieve: add d^power to every multiple of d
    std::vector<bigint> sigma(M + 1, 0);
    for (std::size_t d = 1; d <= M; ++d) {
        bigint dp = 1;
        for (int i = 0; i < power; ++i) dp *= d;
        for (std::size_t m = d; m <= M; m += d) sigma[m] += dp;
    }
    for (std::size_t n = 1; n <= M; ++n) out[n] = factor * sigma[n];
    return out;
}

} // namespace stpc::arith

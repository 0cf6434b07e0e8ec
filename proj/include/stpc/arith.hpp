#ifndef STPC_ARITH_HPP
#define STPC_ARITH_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace stpc::arith {

using bigint = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

// All primes up to a bound, with coprime-to-level count queries pi_N(x).
struct PrimeTable {
    std::uint64_t bound = 0;
    std::vector<std::uint64_t> primes; // ascending, every prime <= bound

    // pi(x) for x <= bound
    std::uint64_t pi(std::uint64_t x) const;
    // pi_N(x): primes p <= x with p not dividing level
    std::uint64_t pi_coprime(std::uint64_t x, std::uint64_t level) const;
    // ascending primes <= bound coprime to level
    std::vector<std::uint64_t> coprime_to(std::uint64_t level) const;
};

// Segmented sieve of Eratosthenes; memory O(sqrt(x) + segment).
PrimeTable sieve(std::uint64_t x);

// Streaming variant: visits each prime <= x in ascending order without
// materializing the list.
void for_each_prime(std::uint64_t x, const std::function<void(std::uint64_t)>& visit);

bool is_prime_u64(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// pi(x) via the streaming sieve; repeated queries are memoized.
std::uint64_t prime_count(std::uint64_t x);

// ---------------------------------------------------------------------------
// Chebyshev-type polynomials X_m:  X_m(2 cos pi t) = sin((m+1) pi t)/sin(pi t)
// ---------------------------------------------------------------------------

// X_0 = 1, X_1 = u, X_m = u X_{m-1} - X_{m-2}.  m = -1 gives 0.
double chebyshev_X(long m, double u);

// ---------------------------------------------------------------------------
// Hurwitz class numbers
// ---------------------------------------------------------------------------

// Tables of 12*H(n) and of the weighted *primitive* form count 12*h_w(-n),
// built by enumerating reduced binary quadratic forms.  H(0) = -1/12 is
// stored as -1.  Grows geometrically on demand.
class HurwitzCache {
  public:
    explicit HurwitzCache(std::uint64_t initial_bound = 0);

    // 12*H(n); exact integer
    std::int64_t hurwitz12(std::uint64_t n) const;
    // 12*h_w(-n): primitive reduced forms of discriminant -n, weighted
    std::int64_t primitive12(std::uint64_t n) const;

    void ensure(std::uint64_t n);
    std::uint64_t bound() const { return bound_; }

  private:
    void rebuild(std::uint64_t n);
    std::uint64_t bound_ = 0;
    std::vector<std::int32_t> h12_;
    std::vector<std::int32_t> hw12_;
};

// 12*H(n) for a single n (independent of the cache; used as an oracle).
std::int64_t hurwitz12_single(std::uint64_t n);

// ---------------------------------------------------------------------------
// Exact q-series
// ---------------------------------------------------------------------------

// Truncated integer power series sum c[i] q^i, 0 <= i <= order.
class QSeries {
  public:
    QSeries() = default;
    explicit QSeries(std::size_t order) : c_(order + 1) {}
    QSeries(std::vector<bigint> coeffs) : c_(std::move(coeffs)) {}

    std::size_t order() const { return c_.empty() ? 0 : c_.size() - 1; }
    const bigint& operator[](std::size_t i) const { return c_[i]; }
    bigint& operator[](std::size_t i) { return c_[i]; }

    QSeries add(const QSeries& other) const;
    QSeries mul(const QSeries& other) const;
    QSeries pow(unsigned e) const;
    QSeries shift(std::size_t k) const; // multiply by q^k, truncated

  private:
    std::vector<bigint> c_;
};

// Delta = q prod (1-q^n)^24, exact to order M.
QSeries delta_qexp(std::size_t M);

// E4 = 1 + 240 sum sigma_3(n) q^n,  E6 = 1 - 504 sum sigma_5(n) q^n.
QSeries eisenstein_qexp(int weight, std::size_t M);

// tau(n) for 1 <= n <= M via eta-power squarings in 128-bit arithmetic
// (threaded).  Valid for M <= 3*10^5 (coefficients fit __int128).
std::vector<__int128> delta_tau_fast(std::size_t M);

} // namespace stpc::arith

#endif

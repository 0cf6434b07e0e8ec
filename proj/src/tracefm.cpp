#include "stpc/tracefm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "stpc/errors.hpp"

namespace stpc::tracefm {

namespace {

using bfloat = boost::multiprecision::cpp_bin_float_50;

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(std::uint64_t n, std::uint64_t& root) {
    root = isqrt_u64(n);
    return root * root == n;
}

// number of x mod ell with x^2 - t x + n = 0
int quadratic_roots_mod(std::uint64_t ell, std::int64_t t, std::uint64_t n) {
    int count = 0;
    std::int64_t l = static_cast<std::int64_t>(ell);
    for (std::int64_t x = 0; x < l; ++x) {
        std::int64_t v = ((x * x - t * x) % l + l) % l;
        if ((v + static_cast<std::int64_t>(n % ell)) % l == 0) ++count;
    }
    return count;
}

} // namespace

bigint trace_weight_poly(int k, std::int64_t t, std::uint64_t n) {
    // G_0 = 1, G_1 = t, G_j = t G_{j-1} - n G_{j-2}; P_k = G_{k-2}
    int j = k - 2;
    if (j < 0) return 0;
    if (j == 0) return 1;
    bigint prev = 1, cur = t;
    bigint tt = t, nn = n;
    for (int i = 2; i <= j; ++i) {
        bigint next = tt * cur - nn * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::uint64_t psi_index(std::uint64_t N) {
    std::uint64_t psi = N;
    for (std::uint64_t p : arith::prime_factors(N)) psi += psi / p;
    return psi;
}

TraceEngine::TraceEngine(std::uint64_t level, int weight,
                         std::shared_ptr<arith::HurwitzCache> cache, std::uint64_t direct_cap)
    : level_(level), weight_(weight), direct_cap_(direct_cap),
      hurwitz_(cache ? std::move(cache) : std::make_shared<arith::HurwitzCache>()) {
    if (level_ < 1 || !arith::is_squarefree(level_))
        throw NonSquarefreeLevel("level " + std::to_string(level_) + " is not squarefree");
    if (weight_ < 2 || weight_ % 2 != 0)
        throw BadWeight("weight " + std::to_string(weight_) + " must be even and >= 2");
    level_primes_ = arith::prime_factors(level_);
    // divisors of a squarefree level: subsets of its prime factors
    level_divisors_ = {1};
    for (std::uint64_t p : level_primes_) {
        std::size_t sz = level_divisors_.size();
        for (std::size_t i = 0; i < sz; ++i) level_divisors_.push_back(level_divisors_[i] * p);
    }
    std::sort(level_divisors_.begin(), level_divisors_.end());
}

void TraceEngine::check_coprime(std::uint64_t n) const {
    if (n == 0) throw MathDomainError("trace: n must be positive");
    if (std::gcd(n, level_) != 1)
        throw NotCoprime("n = " + std::to_string(n) + " shares a factor with the level");
}

// Trace of T_n on S_k(Gamma_0(M)), M | level (so M squarefree, (n,M)=1).
// Everything is accumulated as 24 * trace in exact integers.
bigint TraceEngine::fullspace_trace_level(std::uint64_t M, std::uint64_t n) const {
    const int k = weight_;

    bigint total24 = 0;

    // identity term: (k-1)/12 psi(M) n^{k/2-1} for square n
    std::uint64_t root = 0;
    if (is_perfect_square(n, root)) {
        bigint npow = 1;
        for (int i = 0; i < k / 2 - 1; ++i) npow *= n;
        total24 += 2 * (k - 1) * bigint(psi_index(M)) * npow;
    }

    // elliptic term: - (1/2) sum_{t^2 < 4n} P_k(t,n) sum_f h_w(...) mu(t,n,f)
    std::vector<std::uint64_t> mprimes = arith::prime_factors(M);
    hurwitz_->ensure(4 * n);
    std::uint64_t tmax = isqrt_u64(4 * n - 1);
    for (std::uint64_t tu = 0; tu <= tmax; ++tu) {
        auto t = static_cast<std::int64_t>(tu);
        std::uint64_t m = 4 * n - tu * tu; // = |t^2 - 4n| > 0
        bigint fsum = 0;                   // 12 * sum_f h_w((t^2-4n)/f^2) mu(t,f,n)
        for (std::uint64_t f = 1; f * f <= m; ++f) {
            if (m % (f * f) != 0) continue;
            std::uint64_t d = m / (f * f); // discriminant -d
            if (d % 4 != 0 && d % 4 != 3) continue;
            std::int64_t hw12 = hurwitz_->primitive12(d);
            if (hw12 == 0) continue;
            std::int64_t mu = 1;
            for (std::uint64_t ell : mprimes) {
                if (f % ell == 0)
                    mu *= static_cast<std::int64_t>(ell + 1);
                else
                    mu *= quadratic_roots_mod(ell, t, n);
                if (mu == 0) break;
            }
            fsum += bigint(hw12) * mu;
        }
        if (fsum == 0) continue;
        bigint contrib = trace_weight_poly(k, t, n) * fsum;
        total24 -= (tu == 0) ? contrib : 2 * contrib;
    }

    // hyperbolic term: - sum'_{d | n, d <= sqrt(n)} d^{k-1} tau(M)
    // (term with d^2 = n halved)
    std::uint64_t tauM = 1;
    for (std::size_t i = 0; i < mprimes.size(); ++i) tauM *= 2;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        bigint dpow = 1;
        for (int i = 0; i < k - 1; ++i) dpow *= d;
        total24 -= (d * d == n ? 12 : 24) * dpow * tauM;
    }

    // weight-2 Eisenstein correction: + sigma_1(n)
    if (k == 2) {
        bigint sigma = 0;
        for (std::uint64_t d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            sigma += d;
            if (d != n / d) sigma += n / d;
        }
        total24 += 24 * sigma;
    }

    if (total24 % 24 != 0)
        throw MathDomainError("trace formula: total not integral (transcription bug)");
    return total24 / 24;
}

bigint TraceEngine::fullspace_trace(std::uint64_t n) const {
    check_coprime(n);
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(level_, n);
    auto it = full_memo_.find(key);
    if (it != full_memo_.end()) return it->second;
    bigint v = fullspace_trace_level(level_, n);
    full_memo_.emplace(key, v);
    return v;
}

bigint TraceEngine::newspace_trace(std::uint64_t n) const {
    check_coprime(n);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = new_memo_.find(n);
    if (it != new_memo_.end()) return it->second;
    // Tr^new(N) = sum_{M | N} (-2)^{omega(N/M)} Tr(S_k(Gamma_0(M)))
    bigint v = 0;
    for (std::uint64_t M : level_divisors_) {
        std::uint64_t co = level_ / M;
        int omega = static_cast<int>(arith::prime_factors(co).size());
        bigint sign = 1;
        for (int i = 0; i < omega; ++i) sign *= -2;

        auto key = std::make_pair(M, n);
        auto fit = full_memo_.find(key);
        bigint full;
        if (fit != full_memo_.end()) {
            full = fit->second;
        } else {
            full = fullspace_trace_level(M, n);
            full_memo_.emplace(key, full);
        }
        v += sign * full;
    }
    new_memo_.emplace(n, v);
    return v;
}

double TraceEngine::normalized_newspace_trace(std::uint64_t n) const {
    bigint tr = newspace_trace(n);
    bfloat num(tr);
    bfloat den = pow(bfloat(n), bfloat(weight_ - 1) / 2);
    return static_cast<double>(num / den);
}

std::int64_t TraceEngine::newspace_dimension() const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (dim_ >= 0) return dim_;
    }
    bigint d = newspace_trace(1);
    auto v = static_cast<std::int64_t>(d);
    if (v < 0) throw MathDomainError("negative newspace dimension (transcription bug)");
    std::lock_guard<std::mutex> lock(mu_);
    dim_ = v;
    return v;
}

double TraceEngine::eigenvalue_dim1(std::uint64_t p) const {
    if (newspace_dimension() != 1)
        throw MathDomainError("eigenvalue_dim1 requires a one-dimensional newspace");
    return normalized_newspace_trace(p);
}

double TraceEngine::moment(std::uint64_t p, std::uint64_t q, unsigned a, unsigned b) const {
    if (p == q) throw MathDomainError("family moment requires p != q");
    check_coprime(p);
    check_coprime(q);
    std::int64_t dim = newspace_dimension();
    if (dim == 0) throw ZeroDimension("empty family F_{N,k}");
    if (a == 0 && b == 0) return 1.0;

    // p^{2a} q^{2b} as long as it stays within the exact-trace budget
    bool within = true;
    std::uint64_t nval = 1;
    auto mul_in = [&](std::uint64_t base, unsigned e) {
        for (unsigned i = 0; i < e && within; ++i) {
            if (nval > direct_cap_ / base) {
                within = false;
                return;
            }
            nval *= base;
        }
    };
    mul_in(p, 2 * a);
    mul_in(q, 2 * b);

    if (within && nval <= direct_cap_)
        return normalized_newspace_trace(nval) / static_cast<double>(dim);

    if (dim == 1) {
        // single form: a_f(p^{2a} q^{2b}) = X_{2a}(a_f(p)) X_{2b}(a_f(q))
        double up = arith::chebyshev_X(2 * static_cast<long>(a), normalized_newspace_trace(p));
        double uq = arith::chebyshev_X(2 * static_cast<long>(b), normalized_newspace_trace(q));
        return up * uq;
    }
    throw TraceBudgetExceeded("trace of T_{p^{2a}q^{2b}} with p=" + std::to_string(p) +
                              ", q=" + std::to_string(q) + ", a=" + std::to_string(a) +
                              ", b=" + std::to_string(b) + " exceeds the exact budget");
}

FamilyMoment TraceEngine::family_moment(std::uint64_t p, std::uint64_t q, unsigned a,
                                        unsigned b) const {
    return FamilyMoment{level_, weight_, p, q, a, b, moment(p, q, a, b)};
}

} // namespace stpc::tracefm

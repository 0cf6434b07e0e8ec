#ifndef STPC_TRACEFM_HPP
#define STPC_TRACEFM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "stpc/arith.hpp"

namespace stpc::tracefm {

using arith::bigint;

// Family-averaged normalized Hecke moment
//   (1/|F_{N,k}|) Tr T_{p^{2a} q^{2b}} / (p^{2a} q^{2b})^{(k-1)/2}
// on the newspace.
struct FamilyMoment {
    std::uint64_t level;
    int weight;
    std::uint64_t p, q;
    unsigned a, b;
    double value;
};

// Exact-arithmetic traces of Hecke operators on S_k(Gamma_0(N)) and its new
// subspace, squarefree N, trivial character, (n,N) = 1, k >= 2 even.
//
// The transcription of the trace formula is validated only by oracles
// (q-expansions, point counts, dimension formulas), never by inspection.
class TraceEngine {
  public:
    TraceEngine(std::uint64_t level, int weight,
                std::shared_ptr<arith::HurwitzCache> cache = nullptr,
                std::uint64_t direct_cap = 1000000);

    std::uint64_t level() const { return level_; }
    int weight() const { return weight_; }
    std::uint64_t direct_cap() const { return direct_cap_; }

    // trace of the unnormalized T_n on S_k(Gamma_0(N))
    bigint fullspace_trace(std::uint64_t n) const;
    // trace of T_n on the new subspace (divisor sieve over M | N)
    bigint newspace_trace(std::uint64_t n) const;
    // newspace_trace(n) / n^{(k-1)/2} = sum over newforms of a_f(n)
    double normalized_newspace_trace(std::uint64_t n) const;
    // dim S^new_k(Gamma_0(N)) = trace of T_1
    std::int64_t newspace_dimension() const;

    // <a_f(p^{2a} q^{2b})>: exact Eichler-Selberg when p^{2a}q^{2b} is within
    // the class-number budget; for one-dimensional spaces beyond it, the
    // single eigenvalue factorizes the trace exactly.  Throws
    // TraceBudgetExceeded otherwise.
    FamilyMoment family_moment(std::uint64_t p, std::uint64_t q, unsigned a, unsigned b) const;
    double moment(std::uint64_t p, std::uint64_t q, unsigned a, unsigned b) const;

    // a_f(p) of the unique newform (requires dimension 1)
    double eigenvalue_dim1(std::uint64_t p) const;

    std::shared_ptr<arith::HurwitzCache> hurwitz() const { return hurwitz_; }

  private:
    bigint fullspace_trace_level(std::uint64_t M, std::uint64_t n) const;
    void check_coprime(std::uint64_t n) const;

    std::uint64_t level_;
    int weight_;
    std::uint64_t direct_cap_;
    std::shared_ptr<arith::HurwitzCache> hurwitz_;
    std::vector<std::uint64_t> level_primes_;
    std::vector<std::uint64_t> level_divisors_;

    mutable std::mutex mu_;
    mutable std::map<std::uint64_t, bigint> new_memo_;
    mutable std::map<std::pair<std::uint64_t, std::uint64_t>, bigint> full_memo_;
    mutable std::int64_t dim_ = -1;
};

// Gegenbauer-type weight polynomial P_k(t, n): coefficient of z^{k-2} in
// 1/(1 - t z + n z^2).
bigint trace_weight_poly(int k, std::int64_t t, std::uint64_t n);

// psi(N) = [SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)
std::uint64_t psi_index(std::uint64_t N);

} // namespace stpc::tracefm

#endif

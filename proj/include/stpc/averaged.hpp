#ifndef STPC_AVERAGED_HPP
#define STPC_AVERAGED_HPP

#include <cstdint>
#include <vector>

#include "stpc/angles.hpp"
#include "stpc/paircorr.hpp"
#include "stpc/smoothing.hpp"
#include "stpc/tracefm.hpp"

namespace stpc::averaged {

using angles::HeckeAngleSequence;
using paircorr::LocalWindow;
using smoothing::TestFunction;
using tracefm::TraceEngine;

// Constant part of A_p(l) A_q(l') A_p(n) A_q(n):
//   -2 if exactly one of {|n-l| = 1 & l' = n, l = n & |n-l'| = 1}
//    1 if |n-l| = 1 = |n-l'|,  4 if n = l = l',  0 otherwise.
int t_table(long n, long l, long lp);

// Leading-term expressions, as printed.  The x-based overloads look up
// pi(x); the *_core forms take the prime count directly.
double leading_S(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                 std::uint64_t x);
double leading_T(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                 std::uint64_t x);
double leading_S_core(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                      double piN);
double leading_T_core(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                      double piN);
// T assembled from the t_table instead of the six printed sums (cross-check)
double leading_T_via_table(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                           double piN);

// C_psi ghat(0) (rho*rho)(0)
double predicted_limit(const LocalWindow& w, const TestFunction& g, const TestFunction& rho);
// ghat(0) (rho*rho)(0): the prediction once the window is rescaled by C_psi;
// with normalized rho this is ghat(0), and the sharp-count analogue is 2s.
double predicted_limit_rescaled(const TestFunction& g, const TestFunction& rho);

struct AveragedR2Breakdown {
    double leading_S = 0.0;    // psi-dependent leading terms (trivial block excluded)
    double leading_T = 0.0;
    double trivial_term = 0.0; // the 16 ghat(0) rhohat(0)^2 block over the pair count
    double remainder = 0.0;
    double total = 0.0;
    double prefactor = 0.0;    // piN(piN - 1)/(2 A piN^2 L)
    // total = prefactor*(leading_S + leading_T) + trivial_term + remainder
};

// <R_2(g,rho)(f)> over F_{N,k} through family moments; no individual
// eigenvalue data.  One-dimensional spaces use the separable evaluation,
// anything else walks the full joint-moment expansion.
AveragedR2Breakdown averaged_R2_via_traces(const TraceEngine& engine, std::uint64_t x,
                                           const LocalWindow& w, const TestFunction& g,
                                           const TestFunction& rho, bool force_general = false);

// Independent leading/non-leading accumulation from the joint-moment walk
// (diagnostic for the bookkeeping identity).
struct AveragedSplit {
    double total = 0.0;
    double leading = 0.0;    // mass on <a_f(p^0 q^0)> terms
    double nonleading = 0.0; // everything else
};
AveragedSplit averaged_r2_split(const TraceEngine& engine, std::uint64_t x, const LocalWindow& w,
                                const TestFunction& g, const TestFunction& rho);

// Mean of R_2(g,rho)(f) over explicit angle data.
double averaged_R2_brute(const std::vector<HeckeAngleSequence>& family, std::uint64_t x,
                         const LocalWindow& w, const TestFunction& g, const TestFunction& rho,
                         std::size_t direct_check_limit = 512);

} // namespace stpc::averaged

#endif

#ifndef STPC_PAIRCORR_HPP
#define STPC_PAIRCORR_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "stpc/angles.hpp"
#include "stpc/smoothing.hpp"

namespace stpc::paircorr {

using angles::HeckeAngleSequence;

// Window [psi - 1/L, psi + 1/L] strictly inside (0,1).
struct LocalWindow {
    double psi;
    double L;
    double lo, hi;
    double A;     // 2 sin^2(pi psi)
    double C_psi; // 8 sin^2(pi psi) at psi = 1/2, else 4 sin^2(pi psi)

    LocalWindow(double psi, double L);
};

// L(x) = max(2, round(log log x)) raised to keep the window inside (0,1)
// and flat enough that theta-difference counting is meaningful
// (mu_inf variation across the window <= ~20%).
double schedule_L(std::uint64_t x, double psi);

// Threshold convention for the local estimators.
//   Paper:        |H_p - H_q| <= 2s/(L Lf)  (resp. |t_p - t_q| <= s/(A^2 pi))
//   Straightened: thresholds set from the empirical mean spacing inside the
//                 window, so i.i.d. mu_inf data tends to 2s at every psi.
enum class Normalization { Paper, Straightened };

struct PairCorrReport {
    std::vector<double> s;
    std::vector<double> value;
    std::vector<std::uint64_t> pairs; // ordered-pair count per s
    std::uint64_t window_count = 0;   // Lf (local) or pi_N (global)
    double norm_pi = 0.0;
    double norm_L = 0.0;
    double norm_A = 0.0;
    std::string kind;
};

// #{p <= x : theta_f(p) in [lo, hi]} (closed interval)
std::uint64_t count_in_window(const HeckeAngleSequence& seq, std::uint64_t x,
                              const LocalWindow& w);

PairCorrReport global_pair_correlation(const HeckeAngleSequence& seq, std::uint64_t x,
                                       const std::vector<double>& s_grid);

PairCorrReport local_pair_correlation(const HeckeAngleSequence& seq, std::uint64_t x,
                                      const LocalWindow& w, const std::vector<double>& s_grid,
                                      Normalization norm = Normalization::Paper);

PairCorrReport rescaled_local_pair_correlation(const HeckeAngleSequence& seq, std::uint64_t x,
                                               const LocalWindow& w,
                                               const std::vector<double>& s_grid,
                                               Normalization norm = Normalization::Paper);

// Ordered pairs |v_i - v_j| <= delta among sorted values: O(n) sweep and the
// quadratic loop kept as an oracle.
std::uint64_t count_pairs_within(const std::vector<double>& sorted_values, double delta);
std::uint64_t count_pairs_within_naive(const std::vector<double>& values, double delta);

// ---------------------------------------------------------------------------
// Smoothed pair correlation R_2(g, rho)(f)
// ---------------------------------------------------------------------------

// (L / 4 A pi) sum_{p != q} [sum_pm rho_L(pm theta_p - psi)]
//                           [sum_pm rho_L(pm theta_q - psi)]
//                           [sum_pm,pm G(pm theta_p - pm theta_q)]
// evaluated through the Fourier-side cosine blocks; the direct kernel route
// is recomputed alongside whenever the sequence is small enough and must
// agree to 1e-6 relative.
struct SmoothedValue {
    double value = 0.0;       // Fourier-side evaluation
    double direct = 0.0;      // direct kernel evaluation (when computed)
    bool direct_checked = false;
};

SmoothedValue smoothed_pair_correlation_full(const HeckeAngleSequence& seq, std::uint64_t x,
                                             const LocalWindow& w,
                                             const smoothing::TestFunction& rho,
                                             const smoothing::TestFunction& g,
                                             std::size_t direct_check_limit = 512);

double smoothed_pair_correlation(const HeckeAngleSequence& seq, std::uint64_t x,
                                 const LocalWindow& w, const smoothing::TestFunction& rho,
                                 const smoothing::TestFunction& g);

// Shared Fourier-side block evaluation of the smoothed sum.  A is indexed
// [i][m], m = 0..mmax, with A[i][m] = 2 cos(2 pi m theta_i) for angle data
// (or the trace-side analogue); A[i][0] = 2.
struct R2Blocks {
    std::array<double, 8> block{}; // numerators of the eight expansion blocks
    double total = 0.0;            // sum of blocks / (4 A piN^2 L)
};

R2Blocks fourier_r2_blocks(const std::vector<std::vector<double>>& A,
                           const std::vector<double>& rho_hat, // rho^(l/L), l = 0..Lb
                           const std::vector<double>& g_hat,   // g^(n/piN), n = 0..nmax
                           const LocalWindow& w, double piN);

// ---------------------------------------------------------------------------
// Weyl sums and level spacings
// ---------------------------------------------------------------------------

// (1/pi_N(x)) sum_{p <= x} e(m theta_p); the limit is real, the imaginary
// part is diagnostic.
std::complex<double> weyl_sum(const HeckeAngleSequence& seq, std::uint64_t x, long m);

struct SpacingReport {
    std::vector<double> gaps; // (H_{i+1} - H_i) * pi_N(x), ascending
    double ks_exponential() const; // KS distance to 1 - e^{-t}
};

SpacingReport level_spacings(const HeckeAngleSequence& seq, std::uint64_t x);

} // namespace stpc::paircorr

#endif

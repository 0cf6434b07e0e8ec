#include "stpc/paircorr.hpp"

#include <algorithm>
#include <cmath>

#include "stpc/errors.hpp"

namespace stpc::paircorr {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

LocalWindow::LocalWindow(double psi_, double L_) : psi(psi_), L(L_) {
    if (!(psi > 0.0 && psi < 1.0)) throw ConfigError("LocalWindow: psi must lie in (0,1)");
    if (!(L >= 2.0)) throw ConfigError("LocalWindow: L must be >= 2");
    lo = psi - 1.0 / L;
    hi = psi + 1.0 / L;
    if (!(lo > 0.0 && hi < 1.0))
        throw ConfigError("LocalWindow: interval [psi-1/L, psi+1/L] touches the boundary");
    double s = std::sin(kPi * psi);
    A = 2.0 * s * s;
    C_psi = (psi == 0.5) ? 8.0 * s * s : 4.0 * s * s;
}

double schedule_L(std::uint64_t x, double psi) {
    double base = 2.0;
    if (x > 15) base = std::max(2.0, std::round(std::log(std::log(static_cast<double>(x)))));
    // keep the window inside (0,1)
    double margin = std::min(psi, 1.0 - psi);
    double inside = std::floor(1.0 / margin) + 1.0;
    // flatness floor: relative mu_inf variation across the window is about
    // 2 pi |cot(pi psi)| / L; cap it at 0.2
    double flat = std::ceil(10.0 * kPi * std::abs(std::cos(kPi * psi) / std::sin(kPi * psi)));
    return std::max({base, inside, flat});
}

std::uint64_t count_in_window(const HeckeAngleSequence& seq, std::uint64_t x,
                              const LocalWindow& w) {
    std::uint64_t n = 0;
    std::size_t m = seq.count_up_to(x);
    for (std::size_t i = 0; i < m; ++i)
        if (seq.thetas[i] >= w.lo && seq.thetas[i] <= w.hi) ++n;
    return n;
}

std::uint64_t count_pairs_within(const std::vector<double>& v, double delta) {
    // v sorted ascending; ordered pairs i != j with |v_i - v_j| <= delta
    std::uint64_t total = 0;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        while (lo < v.size() && v[lo] < v[i] - delta) ++lo;
        if (hi < i + 1) hi = i + 1;
        while (hi < v.size() && v[hi] <= v[i] + delta) ++hi;
        total += (hi - lo) - 1;
    }
    return total;
}

std::uint64_t count_pairs_within_naive(const std::vector<double>& v, double delta) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (i != j && std::abs(v[i] - v[j]) <= delta) ++total;
    return total;
}

PairCorrReport global_pair_correlation(const HeckeAngleSequence& seq, std::uint64_t x,
                                       const std::vector<double>& s_grid) {
    std::size_t m = seq.count_up_to(x);
    if (m < 2) throw MathDomainError("global_pair_correlation: need at least 2 angles");
    std::vector<double> h(m);
    for (std::size_t i = 0; i < m; ++i) h[i] = angles::st_cdf(seq.thetas[i]);
    std::sort(h.begin(), h.end());
    double piN = static_cast<double>(m);

    PairCorrReport rep;
    rep.kind = "global";
    rep.window_count = m;
    rep.norm_pi = piN;
    rep.s = s_grid;
    for (double s : s_grid) {
        std::uint64_t c = count_pairs_within(h, s / piN);
        rep.pairs.push_back(c);
        rep.value.push_back(static_cast<double>(c) / piN);
    }
    return rep;
}

namespace {

std::vector<double> window_values(const HeckeAngleSequence& seq, std::uint64_t x,
                                  const LocalWindow& w, bool straightened_h) {
    std::vector<double> out;
    std::size_t m = seq.count_up_to(x);
    for (std::size_t i = 0; i < m; ++i) {
        double t = seq.thetas[i];
        if (t >= w.lo && t <= w.hi) out.push_back(straightened_h ? angles::st_cdf(t) : t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

PairCorrReport local_pair_correlation(const HeckeAngleSequence& seq, std::uint64_t x,
                                      const LocalWindow& w, const std::vector<double>& s_grid,
                                      Normalization norm) {
    std::size_t m = seq.count_up_to(x);
    std::vector<double> h = window_values(seq, x, w, /*straightened_h=*/true);
    std::uint64_t Lf = h.size();
    if (Lf < 2) throw EmptyWindow("local_pair_correlation: fewer than 2 angles in the window");

    // Paper threshold: 2s/(L Lf).  Straightened: s * (H-width of window)/Lf,
    // the empirical mean spacing of the straightened points.
    double per_s = (norm == Normalization::Paper)
                       ? 2.0 / (w.L * static_cast<double>(Lf))
                       : (angles::st_cdf(w.hi) - angles::st_cdf(w.lo)) / static_cast<double>(Lf);

    PairCorrReport rep;
    rep.kind = (norm == Normalization::Paper) ? "local" : "local-straightened";
    rep.window_count = Lf;
    rep.norm_pi = static_cast<double>(m);
    rep.norm_L = w.L;
    rep.norm_A = w.A;
    rep.s = s_grid;
    for (double s : s_grid) {
        std::uint64_t c = count_pairs_within(h, s * per_s);
        rep.pairs.push_back(c);
        rep.value.push_back(static_cast<double>(c) / static_cast<double>(Lf));
    }
    return rep;
}

PairCorrReport rescaled_local_pair_correlation(const HeckeAngleSequence& seq, std::uint64_t x,
                                               const LocalWindow& w,
                                               const std::vector<double>& s_grid,
                                               Normalization norm) {
    std::size_t m = seq.count_up_to(x);
    std::vector<double> th = window_values(seq, x, w, /*straightened_h=*/false);
    std::uint64_t Lf = th.size();
    if (Lf < 2)
        throw EmptyWindow("rescaled_local_pair_correlation: fewer than 2 angles in the window");
    double piN = static_cast<double>(m);

    double per_s, scale;
    if (norm == Normalization::Paper) {
        per_s = 1.0 / (w.A * w.A * piN);                // theta window per unit s
        scale = w.L / (2.0 * w.A * piN);                // prefactor
    } else {
        per_s = (2.0 / w.L) / static_cast<double>(Lf);  // empirical mean theta-gap
        scale = 1.0 / static_cast<double>(Lf);
    }

    PairCorrReport rep;
    rep.kind = (norm == Normalization::Paper) ? "rescaled" : "rescaled-straightened";
    rep.window_count = Lf;
    rep.norm_pi = piN;
    rep.norm_L = w.L;
    rep.norm_A = w.A;
    rep.s = s_grid;
    for (double s : s_grid) {
        std::uint64_t c = count_pairs_within(th, s * per_s);
        rep.pairs.push_back(c);
        rep.value.push_back(static_cast<double>(c) * scale);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Smoothed pair correlation
// ---------------------------------------------------------------------------

R2Blocks fourier_r2_blocks(const std::vector<std::vector<double>>& A,
                           const std::vector<double>& rho_hat, const std::vector<double>& g_hat,
                           const LocalWindow& w, double piN) {
    const std::size_t M = A.size();
    const std::size_t Lb = rho_hat.empty() ? 0 : rho_hat.size() - 1;
    const std::size_t nmax = g_hat.empty() ? 0 : g_hat.size() - 1;
    const double r0 = rho_hat.empty() ? 0.0 : rho_hat[0];
    const double g0 = g_hat.empty() ? 0.0 : g_hat[0];

    std::vector<double> cpsi(Lb + 1, 0.0);
    for (std::size_t l = 0; l <= Lb; ++l)
        cpsi[l] = 2.0 * std::cos(2.0 * kPi * static_cast<double>(l) * w.psi);

    // per-index rho-bracket tail RBm_i = sum_{l>=1} rho^(l/L) cpsi(l) A[i][l]
    std::vector<double> rbm(M, 0.0);
    for (std::size_t i = 0; i < M; ++i) {
        double acc = 0.0;
        for (std::size_t l = 1; l <= Lb && l < A[i].size(); ++l)
            acc += rho_hat[l] * cpsi[l] * A[i][l];
        rbm[i] = acc;
    }

    double sum_rbm = 0.0, sum_rbm2 = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        sum_rbm += rbm[i];
        sum_rbm2 += rbm[i] * rbm[i];
    }

    const double Md = static_cast<double>(M);
    R2Blocks out;
    // ordered pairs p != q throughout
    out.block[0] = 16.0 * g0 * r0 * r0 * Md * (Md - 1.0);
    out.block[1] = 8.0 * g0 * r0 * (Md - 1.0) * sum_rbm; // sum over A_q(l')
    out.block[2] = out.block[1];                          // sum over A_p(l)
    out.block[4] = 4.0 * g0 * (sum_rbm * sum_rbm - sum_rbm2);

    double b4 = 0.0, b6 = 0.0, b8 = 0.0;
    std::vector<double> col(M);
    for (std::size_t n = 1; n <= nmax; ++n) {
        if (g_hat[n] == 0.0) continue;
        double sa = 0.0, saa = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            double a = (n < A[i].size()) ? A[i][n] : 0.0;
            sa += a;
            saa += a * a;
            t1 += rbm[i] * a;
            t2 += rbm[i] * a * a;
            t3 += rbm[i] * rbm[i] * a * a;
        }
        b4 += g_hat[n] * (sa * sa - saa);
        b6 += g_hat[n] * (sa * t1 - t2);
        b8 += g_hat[n] * (t1 * t1 - t3);
    }
    out.block[3] = 8.0 * r0 * r0 * b4;
    out.block[5] = 4.0 * r0 * b6;
    out.block[6] = out.block[5];
    out.block[7] = 2.0 * b8;

    double sum = 0.0;
    for (double b : out.block) sum += b;
    out.total = sum / (4.0 * w.A * piN * piN * w.L);
    return out;
}

SmoothedValue smoothed_pair_correlation_full(const HeckeAngleSequence& seq, std::uint64_t x,
                                             const LocalWindow& w,
                                             const smoothing::TestFunction& rho,
                                             const smoothing::TestFunction& g,
                                             std::size_t direct_check_limit) {
    const std::size_t M = seq.count_up_to(x);
    if (M < 2) throw MathDomainError("smoothed_pair_correlation: need at least 2 angles");
    const double piN = static_cast<double>(M);

    const auto Lb = static_cast<std::size_t>(std::floor(rho.support() * w.L));
    const auto nmax = static_cast<std::size_t>(std::floor(g.support() * piN));
    std::vector<double> rho_hat(Lb + 1), g_hat(nmax + 1);
    for (std::size_t l = 0; l <= Lb; ++l)
        rho_hat[l] = rho.fourier(static_cast<double>(l) / w.L);
    for (std::size_t n = 0; n <= nmax; ++n)
        g_hat[n] = g.fourier(static_cast<double>(n) / piN);

    const std::size_t mmax = std::max(Lb, nmax);
    std::vector<std::vector<double>> A(M, std::vector<double>(mmax + 1));
    for (std::size_t i = 0; i < M; ++i) {
        A[i][0] = 2.0;
        for (std::size_t m = 1; m <= mmax; ++m)
            A[i][m] = 2.0 * std::cos(2.0 * kPi * static_cast<double>(m) * seq.thetas[i]);
    }

    SmoothedValue sv;
    sv.value = fourier_r2_blocks(A, rho_hat, g_hat, w, piN).total;

    if (M <= direct_check_limit) {
        // direct kernel route through the periodized kernels
        smoothing::PeriodizedKernel rhoL(rho, w.L);
        smoothing::PeriodizedKernel G(g, piN);
        std::vector<double> P(M);
        for (std::size_t i = 0; i < M; ++i)
            P[i] = rhoL(seq.thetas[i] - w.psi) + rhoL(-seq.thetas[i] - w.psi);
        double acc = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = i + 1; j < M; ++j) {
                double gpart = 2.0 * G(seq.thetas[i] - seq.thetas[j]) +
                               2.0 * G(seq.thetas[i] + seq.thetas[j]);
                acc += 2.0 * P[i] * P[j] * gpart; // both orders (p,q), (q,p)
            }
        }
        sv.direct = w.L / (4.0 * w.A * piN) * acc;
        sv.direct_checked = true;
        double scale = std::max({std::abs(sv.value), std::abs(sv.direct), 1e-12});
        if (std::abs(sv.value - sv.direct) > 1e-6 * scale)
            throw MathDomainError("smoothed_pair_correlation: kernel and Fourier routes disagree");
    }
    return sv;
}

double smoothed_pair_correlation(const HeckeAngleSequence& seq, std::uint64_t x,
                                 const LocalWindow& w, const smoothing::TestFunction& rho,
                                 const smoothing::TestFunction& g) {
    return smoothed_pair_correlation_full(seq, x, w, rho, g).value;
}

// ---------------------------------------------------------------------------
// Weyl sums and spacings
// ---------------------------------------------------------------------------

std::complex<double> weyl_sum(const HeckeAngleSequence& seq, std::uint64_t x, long m) {
    std::size_t n = seq.count_up_to(x);
    if (n == 0) throw MathDomainError("weyl_sum: empty sequence");
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double arg = 2.0 * kPi * static_cast<double>(m) * seq.thetas[i];
        re += std::cos(arg);
        im += std::sin(arg);
    }
    double piN = static_cast<double>(n);
    return {re / piN, im / piN};
}

double SpacingReport::ks_exponential() const {
    double d = 0.0;
    std::size_t n = gaps.size();
    for (std::size_t i = 0; i < n; ++i) {
        double f = 1.0 - std::exp(-gaps[i]);
        double lo = static_cast<double>(i) / static_cast<double>(n);
        double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        d = std::max({d, std::abs(f - lo), std::abs(f - hi)});
    }
    return d;
}

SpacingReport level_spacings(const HeckeAngleSequence& seq, std::uint64_t x) {
    std::size_t m = seq.count_up_to(x);
    if (m < 3) throw MathDomainError("level_spacings: need at least 3 angles");
    std::vector<double> h(m);
    for (std::size_t i = 0; i < m; ++i) h[i] = angles::st_cdf(seq.thetas[i]);
    std::sort(h.begin(), h.end());
    SpacingReport rep;
    rep.gaps.reserve(m - 1);
    double piN = static_cast<double>(m);
    for (std::size_t i = 0; i + 1 < m; ++i) rep.gaps.push_back((h[i + 1] - h[i]) * piN);
    std::sort(rep.gaps.begin(), rep.gaps.end());
    return rep;
}

} // namespace stpc::paircorr

#include "stpc/averaged.hpp"

#include <cmath>
#include <unordered_map>

#include "stpc/errors.hpp"
#include "stpc/parallel.hpp"

namespace stpc::averaged {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double two_cos(double m, double psi) { return 2.0 * std::cos(2.0 * kPi * m * psi); }
} // namespace

int t_table(long n, long l, long lp) {
    if (n == l && n == lp) return 4;
    bool left = (std::labs(n - l) == 1 && lp == n);
    bool right = (l == n && std::labs(n - lp) == 1);
    if (left != right) return -2;
    if (std::labs(n - l) == 1 && std::labs(n - lp) == 1) return 1;
    return 0;
}

double leading_S_core(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                      double piN) {
    double r0 = rho.fourier(0.0);
    double r1 = rho.fourier(1.0 / w.L);
    double r2 = rho.fourier(2.0 / w.L);
    double g0 = g.fourier(0.0);
    double g1 = g.fourier(1.0 / piN);
    double c2 = two_cos(1.0, w.psi); // 2 cos 2 pi psi
    double c4 = two_cos(2.0, w.psi); // 2 cos 4 pi psi
    // the last term appears without its cosine factor; kept as printed
    return 8.0 * g0 * r0 * r0 - 8.0 * g0 * r0 * r1 * c2 + 4.0 * g1 * r0 * r0 +
           2.0 * g0 * r1 * r1 * c2 * c2 + 4.0 * g1 * r0 * r2 * c4 - 8.0 * r0 * r1 * g1;
}

double leading_T_core(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                      double piN) {
    auto Lb = static_cast<long>(std::floor(w.L * rho.support()));
    auto r = [&](long l) { return rho.fourier(static_cast<double>(l) / w.L); };
    auto gh = [&](long n) { return g.fourier(static_cast<double>(n) / piN); };
    auto c = [&](long m) { return two_cos(static_cast<double>(m), w.psi); };

    double t = 0.0;
    for (long n = 2; n <= Lb + 1; ++n) t += gh(n) * r(n - 1) * r(n - 1) * c(n - 1) * c(n - 1);
    for (long n = 1; n <= Lb - 1; ++n) t += gh(n) * r(n + 1) * r(n + 1) * c(n + 1) * c(n + 1);
    for (long n = 2; n <= Lb - 1; ++n) t += 2.0 * gh(n) * r(n - 1) * r(n + 1) * c(n - 1) * c(n + 1);
    for (long n = 1; n <= Lb; ++n) t += 4.0 * gh(n) * r(n) * r(n) * c(n) * c(n);
    for (long n = 1; n <= Lb - 1; ++n) t -= 4.0 * gh(n) * r(n) * r(n + 1) * c(n) * c(n + 1);
    for (long n = 2; n <= Lb; ++n) t -= 4.0 * gh(n) * r(n) * r(n - 1) * c(n) * c(n - 1);
    return t;
}

double leading_T_via_table(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                           double piN) {
    auto Lb = static_cast<long>(std::floor(w.L * rho.support()));
    auto nmax = static_cast<long>(std::floor(g.support() * piN));
    double t = 0.0;
    for (long n = 1; n <= nmax; ++n) {
        double gn = g.fourier(static_cast<double>(n) / piN);
        if (gn == 0.0) continue;
        for (long l = std::max(1l, n - 1); l <= std::min(Lb, n + 1); ++l) {
            for (long lp = std::max(1l, n - 1); lp <= std::min(Lb, n + 1); ++lp) {
                int tv = t_table(n, l, lp);
                if (tv == 0) continue;
                t += gn * rho.fourier(static_cast<double>(l) / w.L) *
                     rho.fourier(static_cast<double>(lp) / w.L) *
                     two_cos(static_cast<double>(l), w.psi) *
                     two_cos(static_cast<double>(lp), w.psi) * tv;
            }
        }
    }
    return t;
}

double leading_S(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                 std::uint64_t x) {
    return leading_S_core(g, rho, w, static_cast<double>(arith::prime_count(x)));
}

double leading_T(const TestFunction& g, const TestFunction& rho, const LocalWindow& w,
                 std::uint64_t x) {
    return leading_T_core(g, rho, w, static_cast<double>(arith::prime_count(x)));
}

double predicted_limit(const LocalWindow& w, const TestFunction& g, const TestFunction& rho) {
    return w.C_psi * g.fourier(0.0) * rho.convolution_at_zero();
}

double predicted_limit_rescaled(const TestFunction& g, const TestFunction& rho) {
    return g.fourier(0.0) * rho.convolution_at_zero();
}

// ---------------------------------------------------------------------------
// Trace-path evaluation
// ---------------------------------------------------------------------------

namespace {

struct KernelData {
    std::vector<std::uint64_t> primes; // coprime to level, <= x
    double piN = 0.0;
    std::vector<double> rho_hat; // rho^(l/L), 0..Lb
    std::vector<double> g_hat;   // g^(n/piN), 0..nmax
};

KernelData make_kernels(const TraceEngine& engine, std::uint64_t x, const LocalWindow& w,
                        const TestFunction& g, const TestFunction& rho) {
    KernelData kd;
    arith::PrimeTable pt = arith::sieve(x);
    kd.primes = pt.coprime_to(engine.level());
    kd.piN = static_cast<double>(kd.primes.size());
    auto Lb = static_cast<std::size_t>(std::floor(rho.support() * w.L));
    auto nmax = static_cast<std::size_t>(std::floor(g.support() * kd.piN));
    kd.rho_hat.resize(Lb + 1);
    kd.g_hat.resize(nmax + 1);
    for (std::size_t l = 0; l <= Lb; ++l)
        kd.rho_hat[l] = rho.fourier(static_cast<double>(l) / w.L);
    for (std::size_t n = 0; n <= nmax; ++n)
        kd.g_hat[n] = g.fourier(static_cast<double>(n) / kd.piN);
    return kd;
}

// value plus its mass on <a_f(p^0 q^0)>
struct Term {
    double v = 0.0;
    double lead = 0.0;
    Term operator+(const Term& o) const { return {v + o.v, lead + o.lead}; }
    Term operator-(const Term& o) const { return {v - o.v, lead - o.lead}; }
    Term operator*(double c) const { return {v * c, lead * c}; }
};

// Joint-moment walk over ordered prime pairs, accumulating the eight
// expansion blocks of the smoothed sum together with their leading mass.
struct GeneralAccumulator {
    const TraceEngine& engine;
    const KernelData& kd;
    const LocalWindow& w;

    std::array<Term, 8> blocks{};

    void run() {
        const auto& primes = kd.primes;
        const double Md = kd.piN;
        const double r0 = kd.rho_hat[0];
        const double g0 = kd.g_hat[0];
        const auto Lb = static_cast<long>(kd.rho_hat.size()) - 1;
        const auto nmax = static_cast<long>(kd.g_hat.size()) - 1;

        std::vector<double> cpsi(static_cast<std::size_t>(Lb) + 1);
        for (long l = 0; l <= Lb; ++l)
            cpsi[static_cast<std::size_t>(l)] = two_cos(static_cast<double>(l), w.psi);

        blocks[0] = Term{16.0 * g0 * r0 * r0 * Md * (Md - 1.0),
                         16.0 * g0 * r0 * r0 * Md * (Md - 1.0)};

        for (std::size_t i = 0; i < primes.size(); ++i) {
            for (std::size_t j = 0; j < primes.size(); ++j) {
                if (i == j) continue;
                pair_contribution(primes[i], primes[j], Lb, nmax, cpsi);
            }
        }
    }

    void pair_contribution(std::uint64_t p, std::uint64_t q, long Lb, long nmax,
                           const std::vector<double>& cpsi) {
        std::unordered_map<std::uint64_t, double> memo;
        auto W = [&](long a, long b) -> Term {
            if (a == 0 && b == 0) return {1.0, 1.0};
            std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
            auto it = memo.find(key);
            double v;
            if (it != memo.end()) {
                v = it->second;
            } else {
                v = engine.moment(p, q, static_cast<unsigned>(a), static_cast<unsigned>(b));
                memo.emplace(key, v);
            }
            return {v, 0.0};
        };
        // <A_p(a)> and <A_q(b)> against the other prime's trivial power
        auto Ap = [&](long a) -> Term { return W(a, 0) - W(a - 1, 0); };
        auto Aq = [&](long b) -> Term { return W(0, b) - W(0, b - 1); };
        // <A_p(a) A_q(b)>
        auto V = [&](long a, long b) -> Term {
            return W(a, b) - W(a - 1, b) - W(a, b - 1) + W(a - 1, b - 1);
        };

        const double r0 = kd.rho_hat[0];
        const double g0 = kd.g_hat[0];
        auto rh = [&](long l) { return kd.rho_hat[static_cast<std::size_t>(l)]; };
        auto gh = [&](long n) { return kd.g_hat[static_cast<std::size_t>(n)]; };

        for (long l = 1; l <= Lb; ++l) {
            double wgt = rh(l) * cpsi[static_cast<std::size_t>(l)];
            if (wgt == 0.0) continue;
            blocks[1] = blocks[1] + Aq(l) * (8.0 * g0 * r0 * wgt);
            blocks[2] = blocks[2] + Ap(l) * (8.0 * g0 * r0 * wgt);
        }
        for (long n = 1; n <= nmax; ++n) {
            if (gh(n) == 0.0) continue;
            blocks[3] = blocks[3] + V(n, n) * (8.0 * r0 * r0 * gh(n));
        }
        for (long l = 1; l <= Lb; ++l) {
            double wl = rh(l) * cpsi[static_cast<std::size_t>(l)];
            if (wl == 0.0) continue;
            for (long lp = 1; lp <= Lb; ++lp) {
                double wlp = rh(lp) * cpsi[static_cast<std::size_t>(lp)];
                if (wlp == 0.0) continue;
                blocks[4] = blocks[4] + V(l, lp) * (4.0 * g0 * wl * wlp);
            }
        }
        // A_x(n) A_x(m) = A_x(n+m) + A_x(|n-m|)   (|n-m| >= 1)
        //              = A_x(2n) + 2              (n = m)
        for (long n = 1; n <= nmax; ++n) {
            double gn = gh(n);
            if (gn == 0.0) continue;
            for (long l = 1; l <= Lb; ++l) {
                double wl = rh(l) * cpsi[static_cast<std::size_t>(l)];
                if (wl == 0.0) continue;
                Term e6, e7; // <A_q(l)A_p(n)A_q(n)>, <A_p(l)A_p(n)A_q(n)>
                if (l != n) {
                    e6 = V(n, n + l) + V(n, std::labs(n - l));
                    e7 = V(n + l, n) + V(std::labs(n - l), n);
                } else {
                    e6 = V(n, 2 * n) + Ap(n) * 2.0;
                    e7 = V(2 * n, n) + Aq(n) * 2.0;
                }
                blocks[5] = blocks[5] + e6 * (4.0 * r0 * gn * wl);
                blocks[6] = blocks[6] + e7 * (4.0 * r0 * gn * wl);

                for (long lp = 1; lp <= Lb; ++lp) {
                    double wlp = rh(lp) * cpsi[static_cast<std::size_t>(lp)];
                    if (wlp == 0.0) continue;
                    // expand (A_p(l)A_p(n)) (A_q(l')A_q(n))
                    Term e8;
                    bool pc = (l == n), qc = (lp == n);
                    long pu1 = n + l, pu2 = pc ? 0 : std::labs(n - l);
                    long qu1 = n + lp, qu2 = qc ? 0 : std::labs(n - lp);
                    if (!pc && !qc) {
                        e8 = V(pu1, qu1) + V(pu1, qu2) + V(pu2, qu1) + V(pu2, qu2);
                    } else if (pc && !qc) {
                        e8 = V(2 * n, qu1) + V(2 * n, qu2) + (Aq(qu1) + Aq(qu2)) * 2.0;
                    } else if (!pc && qc) {
                        e8 = V(pu1, 2 * n) + V(pu2, 2 * n) + (Ap(pu1) + Ap(pu2)) * 2.0;
                    } else {
                        e8 = V(2 * n, 2 * n) + Ap(2 * n) * 2.0 + Aq(2 * n) * 2.0 +
                             Term{4.0, 4.0};
                    }
                    blocks[7] = blocks[7] + e8 * (2.0 * gn * wl * wlp);
                }
            }
        }
    }
};

std::vector<std::vector<double>> dim1_cos_table(const TraceEngine& engine,
                                                const std::vector<std::uint64_t>& primes,
                                                std::size_t mmax) {
    std::vector<std::vector<double>> A(primes.size());
    parallel_for(primes.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double ap = engine.normalized_newspace_trace(primes[i]);
            auto& row = A[i];
            row.resize(mmax + 1);
            // X_j(a_p) by forward recurrence; A(m) = X_{2m} - X_{2m-2}
            double xm2 = 1.0, xm1 = ap; // X_0, X_1
            std::vector<double> X(2 * mmax + 1);
            X[0] = 1.0;
            if (mmax >= 1) X[1] = ap;
            for (std::size_t j = 2; j <= 2 * mmax; ++j) {
                double xj = ap * xm1 - xm2;
                X[j] = xj;
                xm2 = xm1;
                xm1 = xj;
            }
            row[0] = 2.0;
            for (std::size_t m = 1; m <= mmax; ++m)
                row[m] = X[2 * m] - (2 * m >= 2 ? X[2 * m - 2] : 0.0);
        }
    });
    return A;
}

} // namespace

AveragedR2Breakdown averaged_R2_via_traces(const TraceEngine& engine, std::uint64_t x,
                                           const LocalWindow& w, const TestFunction& g,
                                           const TestFunction& rho, bool force_general) {
    if (engine.newspace_dimension() == 0) throw ZeroDimension("averaged_R2_via_traces: empty family");
    KernelData kd = make_kernels(engine, x, w, g, rho);
    if (kd.primes.size() < 2)
        throw MathDomainError("averaged_R2_via_traces: need at least two primes");

    double total;
    if (engine.newspace_dimension() == 1 && !force_general) {
        std::size_t mmax = std::max(kd.rho_hat.size(), kd.g_hat.size()) - 1;
        auto A = dim1_cos_table(engine, kd.primes, mmax);
        total = paircorr::fourier_r2_blocks(A, kd.rho_hat, kd.g_hat, w, kd.piN).total;
    } else {
        GeneralAccumulator acc{engine, kd, w};
        acc.run();
        double sum = 0.0;
        for (const auto& b : acc.blocks) sum += b.v;
        total = sum / (4.0 * w.A * kd.piN * kd.piN * w.L);
    }

    AveragedR2Breakdown out;
    double piN = kd.piN;
    out.prefactor = piN * (piN - 1.0) / (2.0 * w.A * piN * piN * w.L);
    double S = leading_S_core(g, rho, w, piN);
    double T = leading_T_core(g, rho, w, piN);
    double g0 = kd.g_hat[0], r0 = kd.rho_hat[0];
    out.trivial_term = out.prefactor * 8.0 * g0 * r0 * r0;
    out.leading_S = S - 8.0 * g0 * r0 * r0;
    out.leading_T = T;
    out.total = total;
    out.remainder = total - out.prefactor * (S + T);
    return out;
}

AveragedSplit averaged_r2_split(const TraceEngine& engine, std::uint64_t x, const LocalWindow& w,
                                const TestFunction& g, const TestFunction& rho) {
    if (engine.newspace_dimension() == 0) throw ZeroDimension("averaged_r2_split: empty family");
    KernelData kd = make_kernels(engine, x, w, g, rho);
    GeneralAccumulator acc{engine, kd, w};
    acc.run();
    double denom = 4.0 * w.A * kd.piN * kd.piN * w.L;
    AveragedSplit s;
    for (const auto& b : acc.blocks) {
        s.total += b.v;
        s.leading += b.lead;
    }
    s.total /= denom;
    s.leading /= denom;
    s.nonleading = s.total - s.leading;
    return s;
}

double averaged_R2_brute(const std::vector<HeckeAngleSequence>& family, std::uint64_t x,
                         const LocalWindow& w, const TestFunction& g, const TestFunction& rho,
                         std::size_t direct_check_limit) {
    if (family.empty()) throw MathDomainError("averaged_R2_brute: empty family");
    std::vector<double> vals(family.size());
    parallel_for(family.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto sv = paircorr::smoothed_pair_correlation_full(family[i], x, w, rho, g,
                                                               direct_check_limit);
            vals[i] = sv.direct_checked ? sv.direct : sv.value;
        }
    });
    double sum = 0.0;
    for (double v : vals) sum += v;
    return sum / static_cast<double>(family.size());
}

} // namespace stpc::averaged

#include "stpc/angles.hpp"

#include <cmath>

#include "stpc/arith.hpp"
#include "stpc/errors.hpp"

namespace stpc::angles {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

double HeckeAngle::eigenvalue() const { return 2.0 * std::cos(kPi * theta); }

std::size_t HeckeAngleSequence::count_up_to(std::uint64_t x) const {
    std::size_t n = 0;
    while (n < primes.size() && primes[n] <= x) ++n;
    return n;
}

void HeckeAngleSequence::push(std::uint64_t p, double theta) {
    if (!primes.empty() && p <= primes.back())
        throw DataError("HeckeAngleSequence: primes must be strictly ascending");
    if (level > 1 && level % p == 0)
        throw LevelDividesPrime("prime " + std::to_string(p) + " divides level " +
                                std::to_string(level));
    primes.push_back(p);
    thetas.push_back(theta);
}

void HeckeAngleSequence::validate() const {
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i > 0 && primes[i] <= primes[i - 1])
            throw DataError("HeckeAngleSequence: primes not ascending");
        if (level > 1 && level % primes[i] == 0)
            throw LevelDividesPrime("prime " + std::to_string(primes[i]) + " divides level");
        if (thetas[i] < 0.0 || thetas[i] > 1.0)
            throw DataError("HeckeAngleSequence: angle outside [0,1]");
    }
}

HeckeAngle angle_from_eigenvalue(double a) {
    if (std::abs(a) > 2.0 + 1e-9)
        throw DeligneViolation("eigenvalue " + std::to_string(a) + " outside [-2,2]");
    if (a > 2.0) a = 2.0;
    if (a < -2.0) a = -2.0;
    return HeckeAngle{std::acos(a / 2.0) / kPi};
}

double prime_power_eigenvalue(double a_p, long m) { return arith::chebyshev_X(m, a_p); }

double cos_multiple(HeckeAngle theta, long m) {
    if (m == 0) return 2.0;
    return 2.0 * std::cos(2.0 * kPi * static_cast<double>(m) * theta.theta);
}

double product_decomposition(long m1, long m2, double a_p) {
    auto a = [&](long m) { return prime_power_eigenvalue(a_p, m); };
    long d = std::labs(m1 - m2);
    if (d >= 2) return a(m1 + m2) - a(m1 + m2 - 2) + a(d) - a(d - 2);
    if (d == 1) return a(m1 + m2) + a(1) - a(m1 + m2 - 2);
    return a(2 * m1) - a(2 * m1 - 2) + 2.0;
}

double st_density(double t) {
    double s = std::sin(kPi * t);
    return 2.0 * s * s;
}

double st_cdf(double theta) { return theta - std::sin(2.0 * kPi * theta) / (2.0 * kPi); }

double st_cdf_inverse(double u) {
    if (u < 0.0 || u > 1.0) throw MathDomainError("st_cdf_inverse: u outside [0,1]");
    if (u == 0.0) return 0.0;
    if (u == 1.0) return 1.0;
    // Newton seeded at u; H' vanishes at the endpoints, so keep a bracket
    // and fall back to bisection whenever Newton leaves it.
    double lo = 0.0, hi = 1.0, t = u;
    for (int it = 0; it < 200; ++it) {
        double r = st_cdf(t) - u;
        if (std::abs(r) <= 1e-14) break;
        if (r > 0)
            hi = t;
        else
            lo = t;
        double d = st_density(t);
        double next = (d > 1e-8) ? t - r / d : 0.5 * (lo + hi);
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
        t = next;
    }
    return t;
}

double padic_plancherel_density(double t, std::uint64_t p) {
    if (t < 0.0 || t > 1.0) throw MathDomainError("padic_plancherel_density: t outside [0,1]");
    double sp = std::sqrt(static_cast<double>(p));
    double c = 2.0 * std::cos(kPi * t);
    double denom = (sp + 1.0 / sp) * (sp + 1.0 / sp) - c * c;
    return (static_cast<double>(p) + 1.0) / denom * st_density(t);
}

} // namespace stpc::angles

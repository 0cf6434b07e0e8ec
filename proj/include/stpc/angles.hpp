#ifndef STPC_ANGLES_HPP
#define STPC_ANGLES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace stpc::angles {

// theta in [0,1] with eigenvalue view a = 2 cos(pi theta) in [-2,2].
struct HeckeAngle {
    double theta = 0.0;
    double eigenvalue() const;
};

// Angles of one form, indexed by primes coprime to the level.
struct HeckeAngleSequence {
    std::uint64_t level = 1;
    int weight = 0;
    std::string label;
    std::vector<std::uint64_t> primes; // strictly ascending, coprime to level
    std::vector<double> thetas;        // same length as primes

    std::size_t size() const { return primes.size(); }
    // number of entries with p <= x (= pi_N(x) when the sequence covers all
    // primes <= x coprime to the level)
    std::size_t count_up_to(std::uint64_t x) const;
    void push(std::uint64_t p, double theta);
    void validate() const; // ascending primes, coprimality, theta range
};

// a in [-2,2] -> theta = arccos(a/2)/pi.  |a| beyond 2+1e-9 is rejected,
// values within the tolerance are clamped.
HeckeAngle angle_from_eigenvalue(double a);

// a(p^m) = X_m(a_p); a(p^0) = 1, a(p^{-1}) = 0.
double prime_power_eigenvalue(double a_p, long m);

// 2 cos(2 pi m theta); equals a(p^{2m}) - a(p^{2m-2}) for m >= 1 and 2 for
// m = 0.
double cos_multiple(HeckeAngle theta, long m);

// Right-hand side of the equal-prime product identity for
// (a(p^{m1}) - a(p^{m1-2}))(a(p^{m2}) - a(p^{m2-2})), split on |m1 - m2|.
double product_decomposition(long m1, long m2, double a_p);

// Sato-Tate density mu_inf(t) = 2 sin^2(pi t)
double st_density(double t);
// H(theta) = theta - sin(2 pi theta)/(2 pi)
double st_cdf(double theta);
// inverse of H on [0,1]; |H(result) - u| <= 1e-12
double st_cdf_inverse(double u);

// p-adic Plancherel density
double padic_plancherel_density(double t, std::uint64_t p);

} // namespace stpc::angles

#endif

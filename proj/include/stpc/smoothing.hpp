#ifndef STPC_SMOOTHING_HPP
#define STPC_SMOOTHING_HPP

#include <string>
#include <vector>

namespace stpc::smoothing {

// Even real test function given by its Fourier transform, supported in
// [-B, B].  Either the Fejer triangle in closed form or an even transform
// sampled on a uniform grid over [0, B] with linear interpolation (the
// sampled object *is* the function; all integrals below are exact for the
// piecewise-linear interpolant).
class TestFunction {
  public:
    enum class Kind { Fejer, Sampled };

    static TestFunction fejer(double B, bool normalized);
    static TestFunction bump(double B, bool normalized, std::size_t grid = 4096);
    static TestFunction sampled(double B, std::vector<double> samples, bool normalized);

    double support() const { return B_; }
    bool normalized() const { return normalized_; }
    Kind kind() const { return kind_; }

    // transform value at xi (even; 0 outside [-B, B])
    double fourier(double xi) const;
    // (f * f)(0) = integral of fourier(xi)^2 over [-B, B]
    double convolution_at_zero() const;
    // time-domain value (closed form for Fejer; quadrature for sampled),
    // used only by lattice-sum oracles
    double time_domain(double t) const;

    std::string describe() const;

  private:
    TestFunction() = default;
    void rescale_to_unit_mass();
    Kind kind_ = Kind::Fejer;
    double B_ = 1.0;
    double amplitude_ = 1.0;
    bool normalized_ = false;
    std::vector<double> samples_; // values on [0, B], grid step B/(size-1)
};

// 1-periodic kernel sum_n f(scale (theta + n)) evaluated through its finite
// Fourier series with coefficients f^(l/scale)/scale, |l| <= floor(B scale).
class PeriodizedKernel {
  public:
    PeriodizedKernel(const TestFunction& f, double scale);

    double scale() const { return scale_; }
    long max_index() const { return static_cast<long>(coeffs_.size()) - 1; }
    // coefficient f^(l/scale)/scale for 0 <= l <= max_index
    double coefficient(long l) const { return coeffs_[static_cast<std::size_t>(l)]; }
    double operator()(double theta) const;

  private:
    double scale_;
    std::vector<double> coeffs_;
};

TestFunction make_fejer(double B, bool normalized);
TestFunction make_bump(double B, bool normalized);
PeriodizedKernel periodize(const TestFunction& f, double scale);
double convolution_at_zero(const TestFunction& f);

} // namespace stpc::smoothing

#endif

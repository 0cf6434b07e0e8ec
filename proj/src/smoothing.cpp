#include "stpc/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace stpc::smoothing {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double sinc(double u) {
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}
} // namespace

TestFunction TestFunction::fejer(double B, bool normalized) {
    if (B <= 0.0) throw std::invalid_argument("TestFunction: support must be positive");
    TestFunction f;
    f.kind_ = Kind::Fejer;
    f.B_ = B;
    f.amplitude_ = 1.0;
    if (normalized) f.rescale_to_unit_mass();
    return f;
}

TestFunction TestFunction::sampled(double B, std::vector<double> samples, bool normalized) {
    if (B <= 0.0) throw std::invalid_argument("TestFunction: support must be positive");
    if (samples.size() < 2) throw std::invalid_argument("TestFunction: need >= 2 samples");
    TestFunction f;
    f.kind_ = Kind::Sampled;
    f.B_ = B;
    f.amplitude_ = 1.0;
    f.samples_ = std::move(samples);
    if (normalized) f.rescale_to_unit_mass();
    return f;
}

TestFunction TestFunction::bump(double B, bool normalized, std::size_t grid) {
    // exp(1 - 1/(1-u^2)) on |u| < 1, scaled to [0, B]; value 1 at 0
    std::vector<double> s(grid + 1);
    for (std::size_t i = 0; i <= grid; ++i) {
        double u = static_cast<double>(i) / static_cast<double>(grid);
        s[i] = (u >= 1.0) ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    return sampled(B, std::move(s), normalized);
}

void TestFunction::rescale_to_unit_mass() {
    double c = convolution_at_zero();
    amplitude_ /= std::sqrt(c);
    normalized_ = true;
}

double TestFunction::fourier(double xi) const {
    double u = std::abs(xi);
    if (u >= B_) return 0.0;
    if (kind_ == Kind::Fejer) return amplitude_ * (1.0 - u / B_);
    double pos = u / B_ * static_cast<double>(samples_.size() - 1);
    auto i = static_cast<std::size_t>(pos);
    if (i >= samples_.size() - 1) return 0.0;
    double frac = pos - static_cast<double>(i);
    return amplitude_ * ((1.0 - frac) * samples_[i] + frac * samples_[i + 1]);
}

double TestFunction::convolution_at_zero() const {
    if (kind_ == Kind::Fejer) {
        // int_{-B}^{B} (1 - |xi|/B)^2 = 2B/3
        return amplitude_ * amplitude_ * 2.0 * B_ / 3.0;
    }
    // exact integral of the squared piecewise-linear interpolant
    double h = B_ / static_cast<double>(samples_.size() - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
        double y0 = samples_[i], y1 = samples_[i + 1];
        acc += h * (y0 * y0 + y0 * y1 + y1 * y1) / 3.0;
    }
    return 2.0 * amplitude_ * amplitude_ * acc; // even extension
}

double TestFunction::time_domain(double t) const {
    if (kind_ == Kind::Fejer) {
        // inverse transform of the triangle: B sinc^2(pi B t)
        double s = sinc(kPi * B_ * t);
        return amplitude_ * B_ * s * s;
    }
    // f(t) = 2 int_0^B fourier(xi) cos(2 pi xi t) dxi, Simpson on the grid
    std::size_t n = 2 * (samples_.size() - 1);
    double h = B_ / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        double xi = static_cast<double>(i) * h;
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * fourier(xi) * std::cos(2.0 * kPi * xi * t);
    }
    return 2.0 * acc * h / 3.0;
}

std::string TestFunction::describe() const {
    std::string s = (kind_ == Kind::Fejer) ? "fejer" : "bump";
    s += ",B=" + std::to_string(B_);
    if (normalized_) s += ",normalized";
    return s;
}

PeriodizedKernel::PeriodizedKernel(const TestFunction& f, double scale) : scale_(scale) {
    if (scale < 1.0) throw std::invalid_argument("periodize: scale must be >= 1");
    auto lmax = static_cast<long>(std::floor(f.support() * scale));
    coeffs_.resize(static_cast<std::size_t>(lmax) + 1);
    for (long l = 0; l <= lmax; ++l)
        coeffs_[static_cast<std::size_t>(l)] = f.fourier(static_cast<double>(l) / scale) / scale;
}

double PeriodizedKernel::operator()(double theta) const {
    double acc = coeffs_[0];
    for (std::size_t l = 1; l < coeffs_.size(); ++l)
        acc += 2.0 * coeffs_[l] * std::cos(2.0 * kPi * static_cast<double>(l) * theta);
    return acc;
}

TestFunction make_fejer(double B, bool normalized) { return TestFunction::fejer(B, normalized); }
TestFunction make_bump(double B, bool normalized) { return TestFunction::bump(B, normalized); }
PeriodizedKernel periodize(const TestFunction& f, double scale) {
    return PeriodizedKernel(f, scale);
}
double convolution_at_zero(const TestFunction& f) { return f.convolution_at_zero(); }

} // namespace stpc::smoothing

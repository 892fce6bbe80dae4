#include "gallagher/kernels.hpp"

#include <cmath>
#include <numbers>

namespace gallagher {

double sinc(double x) {
    const double u = std::numbers::pi * x;
    if (std::abs(u) < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0;
    }
    return std::sin(u) / u;
}

double eval_kernel(const Kernel& k, double y) {
    const double d = k.delta;
    const double a = std::abs(y);
    if (k.shape == KernelShape::Rectangular) return a <= d / 2 ? 1.0 / d : 0.0;
    if (a >= d) return 0.0;  // pin the support edge to exactly zero
    return std::max(1.0 / d - a / (d * d), 0.0);
}

double transform(const Kernel& k, double y) {
    const double s = sinc(k.delta * y);
    return k.shape == KernelShape::Rectangular ? s : s * s;
}

namespace {

// Autocorrelation of the unit triangle max(1-|u|, 0); piecewise cubic.
double triangle_autocorr(double s) {
    if (s >= 2.0) return 0.0;
    if (s >= 1.0) {
        const double r = 2.0 - s;
        return r * r * r / 6.0;
    }
    return 2.0 / 3.0 - s * s + s * s * s / 2.0;
}

}  // namespace

double autocorrelation(const Kernel& k, double lag) {
    const double d = k.delta;
    const double a = std::abs(lag);
    if (k.shape == KernelShape::Rectangular)
        return std::max(0.0, 1.0 - a / d) / d;
    return triangle_autocorr(a / d) / d;
}

double explicit_constant(double theta, KernelShape shape) {
    if (!(theta > 0 && theta < 1))
        throw std::invalid_argument("explicit_constant: theta must lie in (0,1)");
    const double s = sinc(theta);
    const double c = 1.0 / (s * s);
    return shape == KernelShape::Rectangular ? c : c * c;
}

}  // namespace gallagher

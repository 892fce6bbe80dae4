#pragma once

#include <stdexcept>

namespace gallagher {

/// sin(pi x)/(pi x); Taylor series below |pi x| = 1e-4 to dodge cancellation.
double sinc(double x);

enum class KernelShape { Rectangular, Cesaro };

/// Unit-mass averaging kernel of half-scale delta.
///   Rectangular: delta^-1 on |y| <= delta/2 (closed boundary), else 0.
///   Cesaro:      max(delta^-1 - |y| delta^-2, 0)   (triangle on |y| <= delta).
struct Kernel {
    KernelShape shape;
    double delta;

    Kernel(KernelShape shape_, double delta_) : shape(shape_), delta(delta_) {
        if (!(delta > 0)) throw std::invalid_argument("Kernel: delta must be > 0");
    }
};

/// The (T, theta, delta) triple with delta = theta/T by construction.
struct WindowParams {
    double T;
    double theta;
    double delta;

    WindowParams(double T_, double theta_) : T(T_), theta(theta_), delta(theta_ / T_) {
        if (!(T > 0)) throw std::invalid_argument("WindowParams: T must be > 0");
        if (!(theta > 0 && theta < 1))
            throw std::invalid_argument("WindowParams: theta must lie in (0,1)");
    }
};

/// Kernel value at y.
double eval_kernel(const Kernel& k, double y);

/// Fourier transform \int k(x) e(-xy) dx with e(x) = exp(2 pi i x):
///   rectangular -> sinc(delta y),  cesaro -> sinc(delta y)^2.
/// Both equal 1 at y = 0 (unit mass).
double transform(const Kernel& k, double y);

/// Closed-form autocorrelation \int k(x) k(x + lag) dx. Even in lag;
/// support |lag| <= delta (rectangular) resp. 2 delta (cesaro).
double autocorrelation(const Kernel& k, double lag);

/// Admissible constant for the mean-square bounds: over |y| <= T = theta/delta
/// the transform is at least sinc(theta) (rectangular) resp. sinc(theta)^2
/// (cesaro), so the bound holds with 1/sinc(theta)^2 resp. 1/sinc(theta)^4.
double explicit_constant(double theta, KernelShape shape);

}  // namespace gallagher

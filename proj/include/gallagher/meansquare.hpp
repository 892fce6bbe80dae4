#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "gallagher/arith.hpp"
#include "gallagher/kernels.hpp"
#include "gallagher/sums.hpp"

namespace gallagher {

/// Discrete mean-square window: integer x ranges over (N, 2N], inner windows
/// have half-length h. Requires h < N; callers must supply coefficient
/// sequences covering [N - ceil(h), 2N + ceil(h)].
struct SelbergWindow {
    std::int64_t N;
    double h;

    SelbergWindow(std::int64_t N_, double h_) : N(N_), h(h_) {
        if (N < 1) throw std::invalid_argument("SelbergWindow: N must be >= 1");
        if (!(h > 0)) throw std::invalid_argument("SelbergWindow: h must be > 0");
        if (!(h < static_cast<double>(N)))
            throw std::invalid_argument("SelbergWindow: requires h < N");
    }
};

enum class IntegralMethod { ExactBilinear, PanelQuadrature };

struct IntegralResult {
    double value = 0.0;
    IntegralMethod method = IntegralMethod::ExactBilinear;
    double est_abs_error = 0.0;
};

/// int_{-T}^{T} |S(t)|^2 dt, exactly: sum_{i,j} c_i conj(c_j) K(nu_i - nu_j)
/// with K(0) = 2T, K(u) = sin(2 pi u T)/(pi u). O(n^2), compensated.
IntegralResult meansquare_exact(const ExponentialSum& s, double T);

/// Same integral by adaptive Gauss-Legendre panels, refined until the
/// estimated error is below tol. Independent of the bilinear route. Throws
/// std::runtime_error with a partial estimate on panel-budget exhaustion.
IntegralResult meansquare_quad(const ExponentialSum& s, double T, double tol,
                               std::size_t max_panels = 200000);

/// delta^{-2} int_R |sum_nu c(nu) k(x - nu)|^2 dx for the unit-mass kernel of
/// the given shape at delta = w.delta, evaluated as the exact bilinear form
/// sum_{i,j} c_i conj(c_j) autocorrelation(nu_i - nu_j). Equals the windowed
/// mean square on the right side of the underlying inequalities (the
/// rectangular half-open window is the centered rectangle shifted by delta/2,
/// which the x-integral over R cannot see).
IntegralResult rhs_window(const ExponentialSum& s, const WindowParams& w,
                          KernelShape shape);

/// J_c(N,h) = sum_{N < x <= 2N} ( sum_{x < n <= x+h} c(n) )^2 via compensated
/// prefix sums, O(N) total.
double selberg_integral(const ArithmeticSequence& seq, const SelbergWindow& win);

/// Modified form: inner sums sum_{|n-x| <= h} (1 - |n-x|/h) c(n), again O(N)
/// via compensated prefix sums over c(n) and n*c(n).
double selberg_modified(const ArithmeticSequence& seq, const SelbergWindow& win);

/// T^2 int_0^infty | sum_{y < n <= y e^{1/T}} a_n |^2 dy/y, exactly: the inner
/// sum is constant between consecutive breakpoints n e^{-1/T}, n and each
/// piece integrates to a log difference.
IntegralResult rhs_gallagher_series(const DirichletPolynomial& d, double T);

/// T^2 int_{y_lo}^{y_hi} | sum_{|n-y| <= y/T} (1 - |n-y| T/y) a_n |^2 dy/y by
/// Gauss-Legendre 16 on panels delimited by the window-edge breakpoints
/// n/(1 +- 1/T) and n (one bisection refinement per panel). Defaults cover
/// the full range [1, infinity); the restricted overload serves bounds that
/// localize the integral. Requires T > 1.
IntegralResult rhs_theorem_main(const DirichletPolynomial& d, double T,
                                double y_lo = 1.0,
                                double y_hi = std::numeric_limits<double>::infinity());

/// int_1^infty ( sum_{|n-y| <= Delta} |a_n| )^2 dy/y with
/// Delta(y,T) = y/T + kappa y/T^2; piecewise-exact log-difference
/// integration (no T^2 factor). Requires T > 1 and 1/T + kappa/T^2 < 1.
IntegralResult rhs_theorem_tail(const DirichletPolynomial& d, double T,
                                double kappa = 1.0);

}  // namespace gallagher

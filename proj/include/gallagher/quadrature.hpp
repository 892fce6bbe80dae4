#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gallagher {

/// Nodes/weights of the 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre16 {
    double node[16];
    double weight[16];
};

const GaussLegendre16& gauss_legendre_16();

/// 16-point Gauss-Legendre estimate of f over [a, b].
double gl16(const std::function<double(double)>& f, double a, double b);

struct PanelIntegral {
    double value = 0;
    double est_abs_error = 0;
    std::size_t panels = 0;
};

/// Panels delimited by the sorted breakpoints, GL16 each, plus one bisection
/// refinement pass per panel. The refined value is kept; the coarse/fine gap
/// feeds est_abs_error. Panel values are pairwise-reduced in left-to-right
/// order, so the result is independent of evaluation scheduling.
PanelIntegral integrate_breakpoint_panels(const std::function<double(double)>& f,
                                          std::span<const double> breakpoints);

/// Adaptive bisection with GL16 panels seeded on the given breakpoints: a
/// panel is accepted when the coarse/fine gap is below its
/// width-proportional share of abs_tol. Throws std::runtime_error (message
/// carries the partial estimate) once more than max_panels leaves have been
/// accepted.
PanelIntegral adaptive_integrate(const std::function<double(double)>& f,
                                 std::span<const double> breakpoints, double abs_tol,
                                 std::size_t max_panels = 200000);

PanelIntegral adaptive_integrate(const std::function<double(double)>& f, double a,
                                 double b, double abs_tol,
                                 std::size_t max_panels = 200000);

/// Sorted unique breakpoints clipped to [lo, hi], with lo/hi appended.
std::vector<double> clip_breakpoints(std::vector<double> pts, double lo, double hi);

}  // namespace gallagher

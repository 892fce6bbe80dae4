#include "gallagher/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gallagher/reduce.hpp"

namespace gallagher {

namespace {

// Legendre P_16 and derivative via the three-term recurrence.
void legendre_p16(double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= 16; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = 16.0 * (x * p1 - p0) / (x * x - 1.0);
}

GaussLegendre16 compute_gl16() {
    GaussLegendre16 r{};
    for (int i = 0; i < 8; ++i) {
        // Newton from the Chebyshev-angle initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / 16.5);
        double p = 0, dp = 0;
        for (int it = 0; it < 60; ++it) {
            legendre_p16(x, p, dp);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        legendre_p16(x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.node[i] = -x;
        r.node[15 - i] = x;
        r.weight[i] = w;
        r.weight[15 - i] = w;
    }
    return r;
}

struct Panel {
    double a, b;
    double value;
    double err;
};

}  // namespace

const GaussLegendre16& gauss_legendre_16() {
    static const GaussLegendre16 rule = compute_gl16();
    return rule;
}

double gl16(const std::function<double(double)>& f, double a, double b) {
    const auto& rule = gauss_legendre_16();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    CompensatedSum<double> acc;
    for (int i = 0; i < 16; ++i)
        acc.add(rule.weight[i] * f(mid + half * rule.node[i]));
    return half * acc.value();
}

PanelIntegral integrate_breakpoint_panels(const std::function<double(double)>& f,
                                          std::span<const double> breakpoints) {
    PanelIntegral out;
    if (breakpoints.size() < 2) return out;
    std::vector<double> values;
    values.reserve(breakpoints.size() - 1);
    CompensatedSum<double> err;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i], b = breakpoints[i + 1];
        if (!(b > a)) continue;
        const double coarse = gl16(f, a, b);
        const double mid = 0.5 * (a + b);
        const double fine = gl16(f, a, mid) + gl16(f, mid, b);
        values.push_back(fine);
        err.add(std::abs(fine - coarse));
        ++out.panels;
    }
    out.value = pairwise_sum(values);
    out.est_abs_error = err.value();
    return out;
}

PanelIntegral adaptive_integrate(const std::function<double(double)>& f,
                                 std::span<const double> breakpoints, double abs_tol,
                                 std::size_t max_panels) {
    PanelIntegral out;
    if (breakpoints.size() < 2) return out;
    const double width = breakpoints.back() - breakpoints.front();
    if (!(width > 0)) return out;

    // Depth-first bisection; each panel gets a tolerance share proportional
    // to its width, so the result is independent of visit order.
    std::vector<Panel> accepted;
    std::size_t used = 0;

    std::function<void(double, double)> visit = [&](double lo, double hi) {
        const double coarse = gl16(f, lo, hi);
        const double mid = 0.5 * (lo + hi);
        const double fine = gl16(f, lo, mid) + gl16(f, mid, hi);
        const double gap = std::abs(fine - coarse);
        const double share = abs_tol * (hi - lo) / width;
        if (gap <= share || hi - lo < 1e-14 * width) {
            if (++used > max_panels) {
                std::vector<double> partial;
                partial.reserve(accepted.size());
                for (const auto& p : accepted) partial.push_back(p.value);
                std::ostringstream msg;
                msg << "adaptive_integrate: panel budget " << max_panels
                    << " exhausted; partial estimate " << pairwise_sum(partial);
                throw std::runtime_error(msg.str());
            }
            accepted.push_back({lo, hi, fine, gap});
            return;
        }
        visit(lo, mid);
        visit(mid, hi);
    };
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (breakpoints[i + 1] > breakpoints[i]) visit(breakpoints[i], breakpoints[i + 1]);

    std::vector<double> values;
    values.reserve(accepted.size());
    CompensatedSum<double> err;
    for (const auto& p : accepted) {
        values.push_back(p.value);
        err.add(p.err);
    }
    out.value = pairwise_sum(values);
    out.est_abs_error = err.value();
    out.panels = accepted.size();
    return out;
}

PanelIntegral adaptive_integrate(const std::function<double(double)>& f, double a,
                                 double b, double abs_tol, std::size_t max_panels) {
    const double pts[2] = {a, b};
    return adaptive_integrate(f, pts, abs_tol, max_panels);
}

std::vector<double> clip_breakpoints(std::vector<double> pts, double lo, double hi) {
    std::vector<double> out;
    out.push_back(lo);
    std::sort(pts.begin(), pts.end());
    for (double p : pts)
        if (p > lo && p < hi) out.push_back(p);
    out.push_back(hi);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace gallagher

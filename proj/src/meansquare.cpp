#include "gallagher/meansquare.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "gallagher/quadrature.hpp"
#include "gallagher/reduce.hpp"

namespace gallagher {

namespace {

constexpr double kEps = 2.220446049250313e-16;  // DBL_EPSILON

// Compensated prefix sums in extended precision. p[k] holds the sum of the
// first k terms, term i being v[i] (optionally weighted by n = n_min + i), so
// p[n - n_min + 1] is the prefix through n and p[0] = 0.
std::vector<long double> prefix_sums(const Eigen::ArrayXd& v, std::int64_t n_min,
                                     bool weight_by_n) {
    std::vector<long double> p(static_cast<std::size_t>(v.size()) + 1, 0.0L);
    long double sum = 0.0L, comp = 0.0L;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        long double term = v[i];
        if (weight_by_n) term *= static_cast<long double>(n_min + i);
        const long double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        p[static_cast<std::size_t>(i) + 1] = sum + comp;
    }
    return p;
}

struct Support {
    std::vector<double> n;       // as doubles, ascending
    std::vector<Complex> coeff;  // matching nonzero coefficients
};

Support nonzero_support(const DirichletPolynomial& d) {
    Support s;
    const auto& a = d.coefficients();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] == Complex{}) continue;
        s.n.push_back(static_cast<double>(d.n_min() + i));
        s.coeff.push_back(a[i]);
    }
    return s;
}

double clamp_nonneg(double v) { return v < 0.0 ? 0.0 : v; }

}  // namespace

IntegralResult meansquare_exact(const ExponentialSum& s, double T) {
    if (!(T > 0)) throw std::invalid_argument("meansquare_exact: T must be > 0");
    const auto& nu = s.frequencies();
    const auto& c = s.coefficients();
    const Eigen::Index n = s.size();

    CompensatedSum<double> acc, mag;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = 2.0 * T * std::norm(c[i]);
        acc.add(t);
        mag.add(t);
    }
    // K is even and the form Hermitian, so each (i,j) pair folds into twice
    // the real part; the imaginary parts cancel identically.
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double u = nu[j] - nu[i];
            const double K = 2.0 * T * sinc(2.0 * u * T);
            const double t = 2.0 * (c[i] * std::conj(c[j])).real() * K;
            acc.add(t);
            mag.add(std::abs(t));
        }
    }

    IntegralResult r;
    r.method = IntegralMethod::ExactBilinear;
    r.value = clamp_nonneg(acc.value());
    r.est_abs_error = 8.0 * kEps * mag.value();
    return r;
}

IntegralResult meansquare_quad(const ExponentialSum& s, double T, double tol,
                               std::size_t max_panels) {
    if (!(T > 0)) throw std::invalid_argument("meansquare_quad: T must be > 0");
    if (!(tol > 0)) throw std::invalid_argument("meansquare_quad: tol must be > 0");

    IntegralResult r;
    r.method = IntegralMethod::PanelQuadrature;
    if (s.size() == 0) return r;

    const auto& nu = s.frequencies();
    // Seed the subdivision at roughly one oscillation per panel so the
    // coarse/fine error gauge is meaningful from the start.
    const double span = nu[nu.size() - 1] - nu[0];
    const double target = 1.0 / (span + 1.0);
    const std::size_t count = std::min<std::size_t>(
        1 << 16, std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(2.0 * T / target))));
    std::vector<double> bps(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
        bps[i] = -T + 2.0 * T * static_cast<double>(i) / static_cast<double>(count);
    bps.front() = -T;
    bps.back() = T;

    auto f = [&s](double t) { return std::norm(eval(s, t)); };
    const PanelIntegral q = adaptive_integrate(f, bps, tol, max_panels);
    r.value = clamp_nonneg(q.value);
    r.est_abs_error = q.est_abs_error;
    return r;
}

IntegralResult rhs_window(const ExponentialSum& s, const WindowParams& w,
                          KernelShape shape) {
    const Kernel k{shape, w.delta};
    const auto& nu = s.frequencies();
    const auto& c = s.coefficients();
    const Eigen::Index n = s.size();

    CompensatedSum<double> acc, mag;
    const double a0 = autocorrelation(k, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = std::norm(c[i]) * a0;
        acc.add(t);
        mag.add(t);
    }
    // Autocorrelations vanish beyond lag 2*delta, so the inner loop stops at
    // the first frequency out of range (frequencies ascend).
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double u = nu[j] - nu[i];
            if (u > 2.0 * k.delta) break;
            const double t = 2.0 * (c[i] * std::conj(c[j])).real() * autocorrelation(k, u);
            acc.add(t);
            mag.add(std::abs(t));
        }
    }

    IntegralResult r;
    r.method = IntegralMethod::ExactBilinear;
    r.value = clamp_nonneg(acc.value());
    r.est_abs_error = 8.0 * kEps * mag.value();
    return r;
}

double selberg_integral(const ArithmeticSequence& seq, const SelbergWindow& win) {
    const auto hc = static_cast<std::int64_t>(std::ceil(win.h));
    if (!seq.covers(win.N - hc, 2 * win.N + hc))
        throw std::invalid_argument(
            "selberg_integral: sequence must cover [N - ceil(h), 2N + ceil(h)]");
    const auto fh = static_cast<std::int64_t>(std::floor(win.h));

    const auto p = prefix_sums(seq.values(), seq.n_min(), false);
    const auto P = [&](std::int64_t m) {
        return p[static_cast<std::size_t>(m - seq.n_min() + 1)];
    };

    CompensatedSum<double> acc;
    for (std::int64_t x = win.N + 1; x <= 2 * win.N; ++x) {
        // (x, x+h] holds the integers x+1 .. x+floor(h).
        const auto inner = static_cast<double>(P(x + fh) - P(x));
        acc.add(inner * inner);
    }
    return clamp_nonneg(acc.value());
}

double selberg_modified(const ArithmeticSequence& seq, const SelbergWindow& win) {
    const auto hc = static_cast<std::int64_t>(std::ceil(win.h));
    if (!seq.covers(win.N - hc, 2 * win.N + hc))
        throw std::invalid_argument(
            "selberg_modified: sequence must cover [N - ceil(h), 2N + ceil(h)]");
    const auto fh = static_cast<std::int64_t>(std::floor(win.h));
    const long double h = win.h;

    // sum (1 - |n-x|/h) c(n) = W(x) - V(x)/h with W the plain window sum and
    // V(x) = sum |n-x| c(n); both come from prefix sums over c(n) and n c(n).
    const auto pa = prefix_sums(seq.values(), seq.n_min(), false);
    const auto pb = prefix_sums(seq.values(), seq.n_min(), true);
    const auto A = [&](std::int64_t m) {
        return pa[static_cast<std::size_t>(m - seq.n_min() + 1)];
    };
    const auto B = [&](std::int64_t m) {
        return pb[static_cast<std::size_t>(m - seq.n_min() + 1)];
    };

    CompensatedSum<double> acc;
    for (std::int64_t x = win.N + 1; x <= 2 * win.N; ++x) {
        const auto xl = static_cast<long double>(x);
        const long double W = A(x + fh) - A(x - fh - 1);
        const long double right = (B(x + fh) - B(x)) - xl * (A(x + fh) - A(x));
        const long double left = xl * (A(x - 1) - A(x - fh - 1)) - (B(x - 1) - B(x - fh - 1));
        const auto inner = static_cast<double>(W - (right + left) / h);
        acc.add(inner * inner);
    }
    return clamp_nonneg(acc.value());
}

IntegralResult rhs_gallagher_series(const DirichletPolynomial& d, double T) {
    if (!(T > 0)) throw std::invalid_argument("rhs_gallagher_series: T must be > 0");

    IntegralResult r;
    r.method = IntegralMethod::ExactBilinear;
    const Support s = nonzero_support(d);
    if (s.n.empty()) return r;

    const double shrink = std::exp(-1.0 / T);
    const double tau = std::exp(1.0 / T);

    std::vector<double> bps;
    bps.reserve(2 * s.n.size());
    for (double n : s.n) {
        bps.push_back(n * shrink);
        bps.push_back(n);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    // Complex prefix over the support coefficients, extended precision.
    std::vector<std::complex<long double>> pa(s.n.size() + 1, {0.0L, 0.0L});
    {
        CompensatedSum<long double> re, im;
        for (std::size_t i = 0; i < s.coeff.size(); ++i) {
            re.add(s.coeff[i].real());
            im.add(s.coeff[i].imag());
            pa[i + 1] = {re.value(), im.value()};
        }
    }

    // The window sum over (y, y tau] is constant on each piece; sample at the
    // geometric midpoint and integrate dy/y exactly.
    CompensatedSum<double> acc, mag;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double p = bps[i], q = bps[i + 1];
        if (!(q > p)) continue;
        const double m = std::sqrt(p * q);
        const auto lo = std::upper_bound(s.n.begin(), s.n.end(), m) - s.n.begin();
        const auto hi = std::upper_bound(s.n.begin(), s.n.end(), m * tau) - s.n.begin();
        if (lo == hi) continue;
        const std::complex<long double> inner = pa[hi] - pa[lo];
        const auto t = static_cast<double>(std::norm(inner)) * std::log(q / p);
        acc.add(t);
        mag.add(t);
    }
    r.value = clamp_nonneg(T * T * acc.value());
    r.est_abs_error = 8.0 * kEps * T * T * mag.value();
    return r;
}

IntegralResult rhs_theorem_main(const DirichletPolynomial& d, double T, double y_lo,
                                double y_hi) {
    if (!(T > 1)) throw std::invalid_argument("rhs_theorem_main: requires T > 1");

    IntegralResult r;
    r.method = IntegralMethod::PanelQuadrature;
    const Support s = nonzero_support(d);
    if (s.n.empty()) return r;

    const double inv = 1.0 / T;
    std::vector<double> pts;
    pts.reserve(3 * s.n.size());
    for (double n : s.n) {
        pts.push_back(n / (1.0 + inv));
        pts.push_back(n);
        pts.push_back(n / (1.0 - inv));
    }
    // The displayed integral starts at 1; windows die above n_max/(1 - 1/T).
    const double lo = std::max(y_lo, 1.0);
    const double hi = std::min(y_hi, *std::max_element(pts.begin(), pts.end()));
    if (!(hi > lo)) return r;
    const std::vector<double> bps = clip_breakpoints(std::move(pts), lo, hi);

    const auto& ns = s.n;
    auto g = [&](double y) {
        const double half = y * inv;
        const auto first = std::lower_bound(ns.begin(), ns.end(), y - half) - ns.begin();
        const auto last = std::upper_bound(ns.begin(), ns.end(), y + half) - ns.begin();
        CompensatedComplexSum<double> inner;
        for (auto i = first; i < last; ++i) {
            const double w = 1.0 - std::abs(ns[i] - y) / half;
            if (w > 0) inner.add(s.coeff[i] * w);
        }
        return std::norm(inner.value()) / y;
    };

    const PanelIntegral q = integrate_breakpoint_panels(g, bps);
    r.value = clamp_nonneg(T * T * q.value);
    r.est_abs_error = T * T * q.est_abs_error;
    return r;
}

IntegralResult rhs_theorem_tail(const DirichletPolynomial& d, double T, double kappa) {
    if (!(T > 1)) throw std::invalid_argument("rhs_theorem_tail: requires T > 1");
    if (!(kappa >= 0)) throw std::invalid_argument("rhs_theorem_tail: kappa must be >= 0");
    const double beta = 1.0 / T + kappa / (T * T);
    if (!(beta < 1))
        throw std::invalid_argument("rhs_theorem_tail: 1/T + kappa/T^2 must be < 1");

    IntegralResult r;
    r.method = IntegralMethod::ExactBilinear;
    const Support s = nonzero_support(d);
    if (s.n.empty()) return r;

    std::vector<double> pts;
    pts.reserve(2 * s.n.size());
    for (double n : s.n) {
        pts.push_back(n / (1.0 + beta));
        pts.push_back(n / (1.0 - beta));
    }
    const double hi = *std::max_element(pts.begin(), pts.end());
    if (!(hi > 1.0)) return r;
    const std::vector<double> bps = clip_breakpoints(std::move(pts), 1.0, hi);

    // Prefix over |a_n| on the support.
    std::vector<long double> pabs(s.n.size() + 1, 0.0L);
    {
        CompensatedSum<long double> run;
        for (std::size_t i = 0; i < s.coeff.size(); ++i) {
            run.add(std::abs(s.coeff[i]));
            pabs[i + 1] = run.value();
        }
    }

    CompensatedSum<double> acc, mag;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double p = bps[i], q = bps[i + 1];
        if (!(q > p)) continue;
        const double m = std::sqrt(p * q);
        // Closed window y - Delta <= n <= y + Delta with Delta = beta y.
        const auto lo = std::lower_bound(s.n.begin(), s.n.end(), m * (1.0 - beta)) -
                        s.n.begin();
        const auto hi_i = std::upper_bound(s.n.begin(), s.n.end(), m * (1.0 + beta)) -
                          s.n.begin();
        if (lo == hi_i) continue;
        const long double inner = pabs[hi_i] - pabs[lo];
        const auto t = static_cast<double>(inner * inner) * std::log(q / p);
        acc.add(t);
        mag.add(t);
    }
    r.value = clamp_nonneg(acc.value());
    r.est_abs_error = 8.0 * kEps * mag.value();
    return r;
}

}  // namespace gallagher

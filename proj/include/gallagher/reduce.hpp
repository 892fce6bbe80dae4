#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace gallagher {

/// Neumaier-compensated accumulator. Order of add() calls fixes the result
/// bit-for-bit, so reductions stay reproducible regardless of scheduling.
template <typename Real = double>
class CompensatedSum {
public:
    void add(Real x) {
        const Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    Real value() const { return sum_ + comp_; }

private:
    Real sum_ = 0;
    Real comp_ = 0;
};

/// Complex variant: one compensated lane per component.
template <typename Real = double>
class CompensatedComplexSum {
public:
    void add(std::complex<Real> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<Real> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<Real> re_, im_;
};

/// Pairwise tree reduction over a fixed-order buffer (compensated leaves).
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 32) {
        CompensatedSum<double> acc;
        for (double x : xs) acc.add(x);
        return acc.value();
    }
    const std::size_t mid = xs.size() / 2;
    return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

}  // namespace gallagher

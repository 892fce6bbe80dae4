#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gallagher/arith.hpp"

namespace gallagher {

using Complex = std::complex<double>;

/// Finite exponential sum S(t) = sum_nu c(nu) e(nu t), e(x) = exp(2 pi i x).
/// Frequencies are kept strictly increasing: duplicates are merged by adding
/// coefficients at construction, exact-zero coefficients are dropped.
class ExponentialSum {
public:
    ExponentialSum() = default;
    explicit ExponentialSum(std::vector<std::pair<double, Complex>> terms);

    Eigen::Index size() const { return freqs_.size(); }
    const Eigen::ArrayXd& frequencies() const { return freqs_; }
    const Eigen::ArrayXcd& coefficients() const { return coeffs_; }

    /// sum |c(nu)|, compensated, ascending frequency.
    double l1_norm() const;

private:
    Eigen::ArrayXd freqs_;
    Eigen::ArrayXcd coeffs_;
};

/// D(t) = sum a_n n^{it} over the integer range [n_min, n_max].
class DirichletPolynomial {
public:
    DirichletPolynomial(std::int64_t n_min, Eigen::ArrayXcd coefficients);

    std::int64_t n_min() const { return n_min_; }
    std::int64_t n_max() const { return n_min_ + coeffs_.size() - 1; }
    const Eigen::ArrayXcd& coefficients() const { return coeffs_; }
    Complex coefficient(std::int64_t n) const { return coeffs_[n - n_min_]; }

    DirichletPolynomial conjugated() const;
    double l1_norm() const;

private:
    std::int64_t n_min_;
    Eigen::ArrayXcd coeffs_;
};

/// S(t) via compensated summation in ascending-frequency order.
Complex eval(const ExponentialSum& s, double t);

/// D(t) via compensated summation in ascending n.
Complex eval(const DirichletPolynomial& d, double t);

/// The exponential sum with nu_n = log(n)/(2 pi) for every n with a_n != 0;
/// evaluates identically to the Dirichlet polynomial.
ExponentialSum from_dirichlet(const DirichletPolynomial& d);

struct CriticalLinePoly {
    DirichletPolynomial poly;
    double w_sup;  // max |w(n)| over [N1, N2], kept for report metadata
};

/// a_n = w(n) b(n) n^{-1/2} on [N1, N2]: a Dirichlet-series partial sum on
/// the critical line written as a plain Dirichlet polynomial.
CriticalLinePoly critical_line_poly(const ArithmeticSequence& w,
                                    const ArithmeticSequence& b, std::int64_t N1,
                                    std::int64_t N2);

/// Coefficient sets as JSON arrays: {"n": int, "re": .., "im": ..} for
/// Dirichlet polynomials, {"nu": real, "re": .., "im": ..} for general sums.
nlohmann::ordered_json to_json(const ExponentialSum& s);
nlohmann::ordered_json to_json(const DirichletPolynomial& d);
ExponentialSum expsum_from_json(const nlohmann::ordered_json& j);
DirichletPolynomial dirichlet_from_json(const nlohmann::ordered_json& j);

}  // namespace gallagher

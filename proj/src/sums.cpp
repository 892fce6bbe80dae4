#include "gallagher/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gallagher/reduce.hpp"

namespace gallagher {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ExponentialSum::ExponentialSum(std::vector<std::pair<double, Complex>> terms) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> fs;
    std::vector<Complex> cs;
    fs.reserve(terms.size());
    cs.reserve(terms.size());
    for (const auto& [nu, c] : terms) {
        if (!std::isfinite(nu) || !finite(c))
            throw std::invalid_argument("ExponentialSum: non-finite term");
        if (!fs.empty() && fs.back() == nu)
            cs.back() += c;  // merge duplicate frequency
        else {
            fs.push_back(nu);
            cs.push_back(c);
        }
    }
    // Drop exact zeros (possibly produced by merging).
    Eigen::Index n = 0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (cs[i] != Complex(0.0, 0.0)) ++n;
    freqs_.resize(n);
    coeffs_.resize(n);
    Eigen::Index j = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (cs[i] == Complex(0.0, 0.0)) continue;
        freqs_[j] = fs[i];
        coeffs_[j] = cs[i];
        ++j;
    }
}

double ExponentialSum::l1_norm() const {
    CompensatedSum<double> acc;
    for (Eigen::Index i = 0; i < size(); ++i) acc.add(std::abs(coeffs_[i]));
    return acc.value();
}

DirichletPolynomial::DirichletPolynomial(std::int64_t n_min, Eigen::ArrayXcd coefficients)
    : n_min_(n_min), coeffs_(std::move(coefficients)) {
    if (n_min_ < 1)
        throw std::invalid_argument("DirichletPolynomial: n_min must be >= 1");
    if (coeffs_.size() < 1)
        throw std::invalid_argument("DirichletPolynomial: empty coefficient range");
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
        if (!finite(coeffs_[i]))
            throw std::invalid_argument("DirichletPolynomial: non-finite coefficient");
}

DirichletPolynomial DirichletPolynomial::conjugated() const {
    return DirichletPolynomial(n_min_, coeffs_.conjugate());
}

double DirichletPolynomial::l1_norm() const {
    CompensatedSum<double> acc;
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) acc.add(std::abs(coeffs_[i]));
    return acc.value();
}

Complex eval(const ExponentialSum& s, double t) {
    CompensatedComplexSum<double> acc;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        acc.add(s.coefficients()[i] *
                std::polar(1.0, kTwoPi * s.frequencies()[i] * t));
    return acc.value();
}

Complex eval(const DirichletPolynomial& d, double t) {
    CompensatedComplexSum<double> acc;
    for (std::int64_t n = d.n_min(); n <= d.n_max(); ++n)
        acc.add(d.coefficient(n) * std::polar(1.0, t * std::log(static_cast<double>(n))));
    return acc.value();
}

ExponentialSum from_dirichlet(const DirichletPolynomial& d) {
    std::vector<std::pair<double, Complex>> terms;
    terms.reserve(static_cast<std::size_t>(d.coefficients().size()));
    for (std::int64_t n = d.n_min(); n <= d.n_max(); ++n) {
        const Complex a = d.coefficient(n);
        if (a == Complex(0.0, 0.0)) continue;
        terms.emplace_back(std::log(static_cast<double>(n)) / kTwoPi, a);
    }
    return ExponentialSum(std::move(terms));
}

CriticalLinePoly critical_line_poly(const ArithmeticSequence& w,
                                    const ArithmeticSequence& b, std::int64_t N1,
                                    std::int64_t N2) {
    if (N1 < 1 || N1 > N2)
        throw std::invalid_argument("critical_line_poly: need 1 <= N1 <= N2");
    if (!w.covers(N1, N2) || !b.covers(N1, N2))
        throw std::out_of_range("critical_line_poly: sequences must cover [N1, N2]");

    Eigen::ArrayXcd coeffs(N2 - N1 + 1);
    double w_sup = 0.0;
    for (std::int64_t n = N1; n <= N2; ++n) {
        coeffs[n - N1] = w.at(n) * b.at(n) / std::sqrt(static_cast<double>(n));
        w_sup = std::max(w_sup, std::abs(w.at(n)));
    }
    return {DirichletPolynomial(N1, std::move(coeffs)), w_sup};
}

nlohmann::ordered_json to_json(const ExponentialSum& s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < s.size(); ++i)
        arr.push_back({{"nu", s.frequencies()[i]},
                       {"re", s.coefficients()[i].real()},
                       {"im", s.coefficients()[i].imag()}});
    return arr;
}

nlohmann::ordered_json to_json(const DirichletPolynomial& d) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::int64_t n = d.n_min(); n <= d.n_max(); ++n)
        arr.push_back({{"n", n},
                       {"re", d.coefficient(n).real()},
                       {"im", d.coefficient(n).imag()}});
    return arr;
}

ExponentialSum expsum_from_json(const nlohmann::ordered_json& j) {
    std::vector<std::pair<double, Complex>> terms;
    for (const auto& item : j)
        terms.emplace_back(item.at("nu").get<double>(),
                           Complex(item.at("re").get<double>(),
                                   item.at("im").get<double>()));
    return ExponentialSum(std::move(terms));
}

DirichletPolynomial dirichlet_from_json(const nlohmann::ordered_json& j) {
    if (j.empty())
        throw std::invalid_argument("dirichlet_from_json: empty coefficient set");
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    for (const auto& item : j) {
        const auto n = item.at("n").get<std::int64_t>();
        lo = first ? n : std::min(lo, n);
        hi = first ? n : std::max(hi, n);
        first = false;
    }
    Eigen::ArrayXcd coeffs = Eigen::ArrayXcd::Zero(hi - lo + 1);
    for (const auto& item : j) {
        const auto n = item.at("n").get<std::int64_t>();
        coeffs[n - lo] += Complex(item.at("re").get<double>(),
                                  item.at("im").get<double>());
    }
    return DirichletPolynomial(lo, std::move(coeffs));
}

}  // namespace gallagher

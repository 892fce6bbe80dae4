#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace gallagher {

/// Real values of an arithmetic function on the integer range [n_min, n_max].
/// Lookups outside the stored range are an error, never an implicit zero.
class ArithmeticSequence {
public:
    ArithmeticSequence(std::string name, std::int64_t n_min, Eigen::ArrayXd values);

    const std::string& name() const { return name_; }
    std::int64_t n_min() const { return n_min_; }
    std::int64_t n_max() const { return n_min_ + values_.size() - 1; }
    const Eigen::ArrayXd& values() const { return values_; }

    bool covers(std::int64_t lo, std::int64_t hi) const {
        return lo >= n_min() && hi <= n_max() && lo <= hi;
    }

    double at(std::int64_t n) const;

private:
    std::string name_;
    std::int64_t n_min_;
    Eigen::ArrayXd values_;
};

/// d_k(n) for 1 <= n <= limit: the number of ordered k-tuples with product n.
/// k-1 divisor-convolution passes over exact integers; d_1 is identically 1.
ArithmeticSequence sieve_dk(int k, std::int64_t limit);

/// Moebius mu(n) for 1 <= n <= limit via a linear sieve.
ArithmeticSequence moebius(std::int64_t limit);

/// Subtracts the least-squares polynomial of the given degree in log n.
/// The residual is orthogonal to every (log n)^j, j <= degree; in particular
/// its total sum vanishes up to rounding. Throws on a rank-deficient fit.
ArithmeticSequence balance(const ArithmeticSequence& seq, int degree);

/// max |seq(n)| over integers n with N - delta < n <= 2N + delta.
double sup_norm(const ArithmeticSequence& seq, std::int64_t N, double delta);

/// CSV with header `n,value`, values printed with 17 significant digits.
void write_csv(const ArithmeticSequence& seq, std::ostream& os);

}  // namespace gallagher

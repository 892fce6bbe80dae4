#include "gallagher/arith.hpp"

#include <Eigen/QR>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace gallagher {

ArithmeticSequence::ArithmeticSequence(std::string name, std::int64_t n_min,
                                       Eigen::ArrayXd values)
    : name_(std::move(name)), n_min_(n_min), values_(std::move(values)) {
    if (n_min_ < 1) throw std::invalid_argument("ArithmeticSequence: n_min must be >= 1");
    if (values_.size() < 1)
        throw std::invalid_argument("ArithmeticSequence: empty value range");
    if (!values_.isFinite().all())
        throw std::invalid_argument("ArithmeticSequence: values must be finite");
}

double ArithmeticSequence::at(std::int64_t n) const {
    if (n < n_min() || n > n_max())
        throw std::out_of_range("ArithmeticSequence '" + name_ + "': index " +
                                std::to_string(n) + " outside [" +
                                std::to_string(n_min()) + ", " + std::to_string(n_max()) +
                                "]");
    return values_[n - n_min_];
}

ArithmeticSequence sieve_dk(int k, std::int64_t limit) {
    if (k < 1) throw std::invalid_argument("sieve_dk: k must be >= 1");
    if (limit < 1) throw std::invalid_argument("sieve_dk: limit must be >= 1");

    // Exact integer convolutions; entries must stay exactly representable
    // as doubles once handed to the sequence.
    constexpr std::uint64_t kExactCap = 1ull << 53;
    std::vector<std::uint64_t> cur(static_cast<std::size_t>(limit) + 1, 1);
    cur[0] = 0;
    for (int pass = 1; pass < k; ++pass) {
        std::vector<std::uint64_t> next(cur.size(), 0);
        for (std::int64_t d = 1; d <= limit; ++d) {
            const std::uint64_t v = cur[static_cast<std::size_t>(d)];
            if (v == 0) continue;
            for (std::int64_t m = d; m <= limit; m += d) {
                std::uint64_t& slot = next[static_cast<std::size_t>(m)];
                slot += v;
                if (slot > kExactCap)
                    throw std::overflow_error("sieve_dk: d_k exceeds exact double range");
            }
        }
        cur.swap(next);
    }

    Eigen::ArrayXd values(limit);
    for (std::int64_t n = 1; n <= limit; ++n)
        values[n - 1] = static_cast<double>(cur[static_cast<std::size_t>(n)]);
    return ArithmeticSequence("d_" + std::to_string(k), 1, std::move(values));
}

ArithmeticSequence moebius(std::int64_t limit) {
    if (limit < 1) throw std::invalid_argument("moebius: limit must be >= 1");

    std::vector<std::int8_t> mu(static_cast<std::size_t>(limit) + 1, 0);
    std::vector<std::int64_t> primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    mu[1] = 1;
    for (std::int64_t n = 2; n <= limit; ++n) {
        if (!composite[static_cast<std::size_t>(n)]) {
            primes.push_back(n);
            mu[static_cast<std::size_t>(n)] = -1;
        }
        for (std::int64_t p : primes) {
            if (p * n > limit) break;
            composite[static_cast<std::size_t>(p * n)] = true;
            if (n % p == 0) {
                mu[static_cast<std::size_t>(p * n)] = 0;
                break;
            }
            mu[static_cast<std::size_t>(p * n)] =
                static_cast<std::int8_t>(-mu[static_cast<std::size_t>(n)]);
        }
    }

    Eigen::ArrayXd values(limit);
    for (std::int64_t n = 1; n <= limit; ++n)
        values[n - 1] = static_cast<double>(mu[static_cast<std::size_t>(n)]);
    return ArithmeticSequence("mu", 1, std::move(values));
}

ArithmeticSequence balance(const ArithmeticSequence& seq, int degree) {
    if (degree < 0) throw std::invalid_argument("balance: degree must be >= 0");
    const Eigen::Index m = seq.values().size();
    const int p = degree + 1;
    if (m < degree + 2)
        throw std::invalid_argument("balance: need at least degree + 2 points");

    Eigen::MatrixXd basis(m, p);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double u = std::log(static_cast<double>(seq.n_min() + i));
        double pw = 1.0;
        for (int j = 0; j < p; ++j) {
            basis(i, j) = pw;
            pw *= u;
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
    if (qr.rank() < p)
        throw std::runtime_error("balance: rank-deficient fit (degree " +
                                 std::to_string(degree) + " on " + std::to_string(m) +
                                 " points)");
    const Eigen::VectorXd fit = basis * qr.solve(seq.values().matrix());
    return ArithmeticSequence(seq.name() + "~", seq.n_min(),
                              seq.values() - fit.array());
}

double sup_norm(const ArithmeticSequence& seq, std::int64_t N, double delta) {
    if (N < 1) throw std::invalid_argument("sup_norm: N must be >= 1");
    if (!(delta > 0)) throw std::invalid_argument("sup_norm: delta must be > 0");
    const std::int64_t pre_lo = N - static_cast<std::int64_t>(std::floor(delta));
    const std::int64_t pre_hi = 2 * N + static_cast<std::int64_t>(std::ceil(delta));
    if (!seq.covers(pre_lo, pre_hi))
        throw std::out_of_range("sup_norm: window not covered by sequence '" +
                                seq.name() + "'");

    // integers with N - delta < n <= 2N + delta; lo >= pre_lo always holds
    const auto lo = static_cast<std::int64_t>(std::floor(N - delta)) + 1;
    const auto hi = static_cast<std::int64_t>(std::floor(2 * N + delta));
    return seq.values().segment(lo - seq.n_min(), hi - lo + 1).abs().maxCoeff();
}

void write_csv(const ArithmeticSequence& seq, std::ostream& os) {
    os << "n,value\n";
    char buf[64];
    for (std::int64_t n = seq.n_min(); n <= seq.n_max(); ++n) {
        std::snprintf(buf, sizeof buf, "%.17g", seq.at(n));
        os << n << ',' << buf << '\n';
    }
}

}  // namespace gallagher

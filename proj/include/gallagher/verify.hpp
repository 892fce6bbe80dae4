#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gallagher/arith.hpp"
#include "gallagher/kernels.hpp"
#include "gallagher/meansquare.hpp"
#include "gallagher/sums.hpp"

namespace gallagher {

/// Which displayed bound a report refers to.
///   Star          int |S|^2 <= C(theta) * rect-window form
///   StarTilde     same with Cesaro weights, C(theta)^2
///   StarStar      Dirichlet-series form of Star (log-scale windows)
///   StarStarTilde Dirichlet-polynomial theorem, main + tail terms
///   Corollary     critical-line polynomial bound with power tail
///   ClSelberg     modified vs plain Selberg integral + sup-norm term
///   Plancherel    two-sided identity audit behind StarTilde
enum class Inequality {
    Star,
    StarTilde,
    StarStar,
    StarStarTilde,
    Corollary,
    ClSelberg,
    Plancherel,
};

std::string to_string(Inequality iq);
Inequality inequality_from_string(const std::string& s);

struct RhsTerm {
    std::string label;
    double value = 0.0;
};

/// One checked instance. ratio = lhs / sum(rhs values); pass means
/// ratio <= constant up to 1e-10 relative slack (Plancherel instead demands
/// |ratio - 1| below its tolerance). seed/params record provenance.
struct VerificationReport {
    Inequality inequality = Inequality::Star;
    double lhs = 0.0;
    std::vector<RhsTerm> rhs_terms;
    double ratio = 0.0;
    double constant = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;

    double rhs_total() const;
};

/// {inequality, lhs, rhs_terms:[{label,value}], ratio, constant, pass, seed,
/// params} in exactly that key order.
nlohmann::ordered_json to_json(const VerificationReport& r);

/// Cesaro-weighted bound: lhs = int_{-T}^{T}|S|^2, rhs = windowed form,
/// admissible constant (pi theta / sin pi theta)^4. Theorem-backed: pass is
/// asserted with the explicit constant.
VerificationReport check_lemma(const ExponentialSum& s, const WindowParams& w);

/// Sharp-window original: constant (pi theta / sin pi theta)^2.
VerificationReport check_gallagher_original(const ExponentialSum& s,
                                            const WindowParams& w);

/// Dirichlet-series form: lhs = int_{-T}^{T}|D|^2, rhs = T^2 weighted
/// log-window integral. The substitution nu = log(n)/(2pi) lands at
/// theta = 1/(2pi), so 2pi * (pi theta / sin pi theta)^2 is admissible.
VerificationReport check_gallagher_series(const DirichletPolynomial& d, double T);

/// Theorem form: rhs = Cesaro main integral + absolute-window tail. No
/// explicit constant is proved, only <<; pass records ratio <= cap.
VerificationReport check_theorem(const DirichletPolynomial& d, double T,
                                 double kappa = 1.0, double cap = 100.0);

/// Critical-line corollary: P from (w, b) on [N1, N2]; rhs = main integral
/// restricted to [N1/2, 3 N2/2] plus N2^{1+eps}/T^2. Cap semantics as above.
VerificationReport check_corollary(const ArithmeticSequence& w,
                                    const ArithmeticSequence& b, std::int64_t N1,
                                    std::int64_t N2, double T, double epsilon,
                                    double cap = 100.0);

/// Discrete bound for balanced sequences: J-tilde vs J + h^3 sup|c|^2.
/// Empirical cap (default 10), never asserted as a theorem constant.
VerificationReport check_cl_selberg(const ArithmeticSequence& seq,
                                    const SelbergWindow& win, double cap = 10.0);

/// Two-sided audit: autocorrelation bilinear form vs adaptive quadrature of
/// the transform-side integral, truncated once the pointwise envelope drops
/// below 1e-14 of the left side. Throws on panel-budget exhaustion.
VerificationReport check_plancherel(const ExponentialSum& s, const WindowParams& w,
                                    double rel_tol = 1e-6);

/// Deterministic uniforms/complex disc points from a seeded mt19937_64; the
/// raw-bits-to-double map is pinned here rather than delegated to
/// distribution objects, so streams are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    std::uint64_t index(std::uint64_t n) {
        return std::min<std::uint64_t>(n - 1, static_cast<std::uint64_t>(uniform() * static_cast<double>(n)));
    }
    Complex unit_disc() {
        for (;;) {
            const double x = uniform(-1.0, 1.0);
            const double y = uniform(-1.0, 1.0);
            if (x * x + y * y <= 1.0) return {x, y};
        }
    }

private:
    std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct RandomSumConfig {
    int max_terms = 30;
    double freq_max = 2.0;
};

/// 1..max_terms terms, frequencies uniform in [0, freq_max], coefficients
/// uniform in the unit disc.
ExponentialSum random_exponential_sum(std::uint64_t seed,
                                      const RandomSumConfig& cfg = {});

/// Unit-disc coefficients on every n in [n_min, n_max].
DirichletPolynomial random_dirichlet_polynomial(std::uint64_t seed,
                                                std::int64_t n_min,
                                                std::int64_t n_max);

/// Sweep grid: one row of `grid` per cell, entries matching `param_names`.
/// Recognized names: theta, T, kappa, N, h, terms, freq_max (which of them
/// apply depends on the inequality; the rest fall back to defaults below).
struct SweepConfig {
    Inequality inequality = Inequality::StarTilde;
    std::vector<std::string> param_names;
    std::vector<std::vector<double>> grid;
    int trials = 100;
    std::uint64_t seed = 0;
    double theta = 0.5;
    double T = 50.0;
    double kappa = 1.0;
    std::int64_t N = 100;
    double h = 10.0;
    int max_terms = 30;
    double freq_max = 2.0;
};

struct SweepCell {
    std::vector<double> params;
    double max_ratio = 0.0;
    int n_seeds = 0;
};

struct SweepTable {
    std::vector<std::string> param_names;
    std::vector<SweepCell> cells;
};

/// Deterministic seeded sweep; instances parallelize across workers but the
/// per-cell max is reduced in index order. Trial seeds depend only on
/// (seed, cell, trial), so growing `trials` extends, never reshuffles.
SweepTable estimate_constant(const SweepConfig& cfg);

/// Header `param_1,...,param_k,max_ratio,n_seeds`, values at 17 significant
/// digits.
void write_csv(const SweepTable& table, std::ostream& os);

/// Tidy (parameter, ratio, constant) rows for external plotters; the leading
/// `#` line documents the columns. Throws on an empty report set or a report
/// lacking the parameter.
void emit_plot_data(const std::vector<VerificationReport>& reports,
                    const std::string& param_name, std::ostream& os);

}  // namespace gallagher

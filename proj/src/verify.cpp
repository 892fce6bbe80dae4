#include "gallagher/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "gallagher/format.hpp"
#include "gallagher/parallel.hpp"
#include "gallagher/quadrature.hpp"
#include "gallagher/reduce.hpp"

namespace gallagher {

namespace {

constexpr double kSlack = 1e-10;

// Admissible constant of the Dirichlet-series form: the log-scale window
// length 1/T corresponds to theta = 1/(2 pi), and the change of variables
// x = log(y)/(2 pi) contributes the extra 2 pi.
double star_star_constant() {
    return 2.0 * std::numbers::pi * std::pow(0.5 / std::sin(0.5), 2.0);
}

VerificationReport assemble(Inequality iq, double lhs, std::vector<RhsTerm> terms,
                            double constant) {
    VerificationReport r;
    r.inequality = iq;
    r.lhs = lhs;
    r.rhs_terms = std::move(terms);
    r.constant = constant;
    const double rhs = r.rhs_total();
    if (rhs > 0)
        r.ratio = lhs / rhs;
    else
        r.ratio = lhs > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    r.pass = r.ratio <= constant * (1.0 + kSlack);
    return r;
}

void apply_param(SweepConfig& c, const std::string& name, double v) {
    if (name == "theta")
        c.theta = v;
    else if (name == "T")
        c.T = v;
    else if (name == "kappa")
        c.kappa = v;
    else if (name == "N")
        c.N = static_cast<std::int64_t>(std::llround(v));
    else if (name == "h")
        c.h = v;
    else if (name == "terms")
        c.max_terms = static_cast<int>(std::llround(v));
    else if (name == "freq_max")
        c.freq_max = v;
    else
        throw std::invalid_argument("estimate_constant: unknown parameter: " + name);
}

double sweep_instance(const SweepConfig& c, std::uint64_t seed) {
    switch (c.inequality) {
        case Inequality::Star: {
            auto s = random_exponential_sum(seed, {c.max_terms, c.freq_max});
            auto r = check_gallagher_original(s, WindowParams(c.T, c.theta));
            return r.ratio;
        }
        case Inequality::StarTilde: {
            auto s = random_exponential_sum(seed, {c.max_terms, c.freq_max});
            auto r = check_lemma(s, WindowParams(c.T, c.theta));
            return r.ratio;
        }
        case Inequality::StarStar: {
            auto d = random_dirichlet_polynomial(seed, 1, c.N);
            return check_gallagher_series(d, c.T).ratio;
        }
        case Inequality::StarStarTilde: {
            auto d = random_dirichlet_polynomial(seed, 1, c.N);
            return check_theorem(d, c.T, c.kappa).ratio;
        }
        case Inequality::ClSelberg: {
            const auto hc = static_cast<std::int64_t>(std::ceil(c.h));
            const std::int64_t lo = c.N - hc, hi = 2 * c.N + hc;
            Rng rng(seed);
            Eigen::ArrayXd v(hi - lo + 1);
            for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-1.0, 1.0);
            const auto seq = balance(ArithmeticSequence("random", lo, std::move(v)), 0);
            return check_cl_selberg(seq, SelbergWindow(c.N, c.h)).ratio;
        }
        default:
            throw std::invalid_argument(
                "estimate_constant: no sweep generator for inequality " +
                to_string(c.inequality));
    }
}

}  // namespace

double VerificationReport::rhs_total() const {
    CompensatedSum<double> acc;
    for (const auto& t : rhs_terms) acc.add(t.value);
    return acc.value();
}

std::string to_string(Inequality iq) {
    switch (iq) {
        case Inequality::Star: return "star";
        case Inequality::StarTilde: return "star-tilde";
        case Inequality::StarStar: return "star-star";
        case Inequality::StarStarTilde: return "star-star-tilde";
        case Inequality::Corollary: return "corollary";
        case Inequality::ClSelberg: return "cl-selberg";
        case Inequality::Plancherel: return "plancherel";
    }
    throw std::logic_error("to_string: bad Inequality value");
}

Inequality inequality_from_string(const std::string& s) {
    if (s == "star") return Inequality::Star;
    if (s == "star-tilde") return Inequality::StarTilde;
    if (s == "star-star") return Inequality::StarStar;
    if (s == "star-star-tilde") return Inequality::StarStarTilde;
    if (s == "corollary") return Inequality::Corollary;
    if (s == "cl-selberg") return Inequality::ClSelberg;
    if (s == "plancherel") return Inequality::Plancherel;
    throw std::invalid_argument("unknown inequality: " + s);
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["inequality"] = to_string(r.inequality);
    j["lhs"] = r.lhs;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : r.rhs_terms) {
        nlohmann::ordered_json e;
        e["label"] = t.label;
        e["value"] = t.value;
        arr.push_back(std::move(e));
    }
    j["rhs_terms"] = std::move(arr);
    j["ratio"] = r.ratio;
    j["constant"] = r.constant;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    auto params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = std::move(params);
    return j;
}

VerificationReport check_lemma(const ExponentialSum& s, const WindowParams& w) {
    const double lhs = meansquare_exact(s, w.T).value;
    const double rhs = rhs_window(s, w, KernelShape::Cesaro).value;
    auto r = assemble(Inequality::StarTilde, lhs, {{"cesaro-window", rhs}},
                      explicit_constant(w.theta, KernelShape::Cesaro));
    r.params = {{"theta", w.theta},
                {"T", w.T},
                {"delta", w.delta},
                {"terms", static_cast<double>(s.size())}};
    return r;
}

VerificationReport check_gallagher_original(const ExponentialSum& s,
                                            const WindowParams& w) {
    const double lhs = meansquare_exact(s, w.T).value;
    const double rhs = rhs_window(s, w, KernelShape::Rectangular).value;
    auto r = assemble(Inequality::Star, lhs, {{"rect-window", rhs}},
                      explicit_constant(w.theta, KernelShape::Rectangular));
    r.params = {{"theta", w.theta},
                {"T", w.T},
                {"delta", w.delta},
                {"terms", static_cast<double>(s.size())}};
    return r;
}

VerificationReport check_gallagher_series(const DirichletPolynomial& d, double T) {
    const double lhs = meansquare_exact(from_dirichlet(d), T).value;
    const double rhs = rhs_gallagher_series(d, T).value;
    auto r = assemble(Inequality::StarStar, lhs, {{"log-window", rhs}},
                      star_star_constant());
    r.params = {{"T", T},
                {"n_min", static_cast<double>(d.n_min())},
                {"n_max", static_cast<double>(d.n_max())}};
    return r;
}

VerificationReport check_theorem(const DirichletPolynomial& d, double T, double kappa,
                                 double cap) {
    const double lhs = meansquare_exact(from_dirichlet(d), T).value;
    const double main = rhs_theorem_main(d, T).value;
    const double tail = rhs_theorem_tail(d, T, kappa).value;
    auto r = assemble(Inequality::StarStarTilde, lhs,
                      {{"cesaro-main", main}, {"abs-window-tail", tail}}, cap);
    r.params = {{"T", T},
                {"kappa", kappa},
                {"n_min", static_cast<double>(d.n_min())},
                {"n_max", static_cast<double>(d.n_max())}};
    return r;
}

VerificationReport check_corollary(const ArithmeticSequence& w,
                                   const ArithmeticSequence& b, std::int64_t N1,
                                   std::int64_t N2, double T, double epsilon,
                                   double cap) {
    if (!(epsilon > 0))
        throw std::invalid_argument("check_corollary: epsilon must be > 0");
    const CriticalLinePoly P = critical_line_poly(w, b, N1, N2);
    // The mean square of P(-t) over [-T, T]: conjugating the coefficients
    // evaluates |P(-t)| at t.
    const double lhs = meansquare_exact(from_dirichlet(P.poly.conjugated()), T).value;
    const double main =
        rhs_theorem_main(P.poly, T, static_cast<double>(N1) / 2.0,
                         1.5 * static_cast<double>(N2))
            .value;
    const double tail = std::pow(static_cast<double>(N2), 1.0 + epsilon) / (T * T);
    auto r = assemble(Inequality::Corollary, lhs,
                      {{"cesaro-main", main}, {"power-tail", tail}}, cap);
    r.params = {{"N1", static_cast<double>(N1)}, {"N2", static_cast<double>(N2)},
                {"T", T},                        {"epsilon", epsilon},
                {"w_sup", P.w_sup}};
    return r;
}

VerificationReport check_cl_selberg(const ArithmeticSequence& seq,
                                    const SelbergWindow& win, double cap) {
    const double lhs = selberg_modified(seq, win);
    const double J = selberg_integral(seq, win);
    const double sup = sup_norm(seq, win.N, win.h);
    const double sup_term = win.h * win.h * win.h * sup * sup;
    auto r = assemble(Inequality::ClSelberg, lhs,
                      {{"selberg", J}, {"sup-term", sup_term}}, cap);
    r.params = {{"N", static_cast<double>(win.N)}, {"h", win.h}};
    return r;
}

VerificationReport check_plancherel(const ExponentialSum& s, const WindowParams& w,
                                    double rel_tol) {
    if (!(rel_tol > 0))
        throw std::invalid_argument("check_plancherel: rel_tol must be > 0");
    const double lhs = rhs_window(s, w, KernelShape::Cesaro).value;

    VerificationReport r;
    r.inequality = Inequality::Plancherel;
    r.lhs = lhs;
    r.constant = 1.0;
    r.params = {{"theta", w.theta},
                {"T", w.T},
                {"delta", w.delta},
                {"terms", static_cast<double>(s.size())},
                {"rel_tol", rel_tol}};
    if (s.size() == 0 || lhs == 0.0) {
        r.rhs_terms = {{"transform-side", 0.0}};
        r.ratio = 0.0;
        r.pass = lhs == 0.0;
        return r;
    }

    // Truncate the transform-side integral where even the envelope
    // (pi delta y)^-4 * (sum |c|)^2 is below 1e-14 of the left side.
    const double l1 = s.l1_norm();
    const double R =
        std::pow(l1 * l1 / (1e-14 * lhs), 0.25) / (std::numbers::pi * w.delta);
    const auto& nu = s.frequencies();
    const double fmax = (nu[nu.size() - 1] - nu[0]) + 2.0 * w.delta;
    const double width = 1.0 / (fmax + 0.25);
    const auto count = std::min<std::size_t>(
        std::size_t{1} << 21,
        std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(2.0 * R / width))));
    std::vector<double> bps(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
        bps[i] = -R + 2.0 * R * static_cast<double>(i) / static_cast<double>(count);
    bps.front() = -R;
    bps.back() = R;

    const Kernel k{KernelShape::Cesaro, w.delta};
    auto f = [&](double y) {
        const double tr = transform(k, y);
        return tr * tr * std::norm(eval(s, -y));
    };
    const PanelIntegral q = adaptive_integrate(f, bps, 1e-8 * lhs, 400000);

    const double rhs = q.value;
    r.rhs_terms = {{"transform-side", rhs}};
    r.ratio = rhs > 0 ? lhs / rhs : std::numeric_limits<double>::infinity();
    r.pass = std::abs(lhs - rhs) <= rel_tol * std::max(lhs, rhs);
    return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

ExponentialSum random_exponential_sum(std::uint64_t seed, const RandomSumConfig& cfg) {
    if (cfg.max_terms < 1)
        throw std::invalid_argument("random_exponential_sum: max_terms must be >= 1");
    if (!(cfg.freq_max > 0))
        throw std::invalid_argument("random_exponential_sum: freq_max must be > 0");
    Rng rng(seed);
    const auto count = 1 + rng.index(static_cast<std::uint64_t>(cfg.max_terms));
    std::vector<std::pair<double, Complex>> terms;
    terms.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double nu = rng.uniform(0.0, cfg.freq_max);
        terms.emplace_back(nu, rng.unit_disc());
    }
    return ExponentialSum(std::move(terms));
}

DirichletPolynomial random_dirichlet_polynomial(std::uint64_t seed, std::int64_t n_min,
                                                std::int64_t n_max) {
    if (n_min < 1 || n_max < n_min)
        throw std::invalid_argument("random_dirichlet_polynomial: bad range");
    Rng rng(seed);
    Eigen::ArrayXcd a(n_max - n_min + 1);
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = rng.unit_disc();
    return DirichletPolynomial(n_min, std::move(a));
}

SweepTable estimate_constant(const SweepConfig& cfg) {
    if (cfg.trials < 0)
        throw std::invalid_argument("estimate_constant: trials must be >= 0");
    for (const auto& row : cfg.grid)
        if (row.size() != cfg.param_names.size())
            throw std::invalid_argument("estimate_constant: grid row arity mismatch");
    {
        SweepConfig probe = cfg;
        for (const auto& name : cfg.param_names) apply_param(probe, name, 1.0);
    }

    SweepTable table;
    table.param_names = cfg.param_names;
    table.cells.resize(cfg.grid.size());

    for (std::size_t cell = 0; cell < cfg.grid.size(); ++cell) {
        SweepConfig local = cfg;
        for (std::size_t k = 0; k < cfg.param_names.size(); ++k)
            apply_param(local, cfg.param_names[k], cfg.grid[cell][k]);

        // Trial seeds depend on (seed, cell, trial) only, so adding trials
        // extends the stream; the recorded max can only grow.
        const std::uint64_t cell_key =
            splitmix64(cfg.seed + 0x9E3779B97F4A7C15ULL * (cell + 1));
        std::vector<double> ratios(static_cast<std::size_t>(cfg.trials), 0.0);
        parallel_for(ratios.size(), [&](std::size_t t) {
            ratios[t] = sweep_instance(local, splitmix64(cell_key + t));
        });

        double mx = 0.0;
        for (double v : ratios) mx = std::max(mx, v);
        table.cells[cell] = {cfg.grid[cell], mx, cfg.trials};
    }
    return table;
}

void write_csv(const SweepTable& table, std::ostream& os) {
    for (std::size_t k = 0; k < table.param_names.size(); ++k)
        os << "param_" << (k + 1) << ',';
    os << "max_ratio,n_seeds\n";
    for (const auto& cell : table.cells) {
        for (double v : cell.params) os << g17(v) << ',';
        os << g17(cell.max_ratio) << ',' << cell.n_seeds << '\n';
    }
}

void emit_plot_data(const std::vector<VerificationReport>& reports,
                    const std::string& param_name, std::ostream& os) {
    if (reports.empty()) throw std::invalid_argument("emit_plot_data: empty report set");
    os << "# columns: " << param_name << ",ratio,constant\n";
    for (const auto& r : reports) {
        const auto it = r.params.find(param_name);
        if (it == r.params.end())
            throw std::invalid_argument("emit_plot_data: report lacks parameter: " +
                                        param_name);
        os << g17(it->second) << ',' << g17(r.ratio) << ',' << g17(r.constant) << '\n';
    }
}

}  // namespace gallagher

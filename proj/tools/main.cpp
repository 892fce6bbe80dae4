// Batch experiment runner. Subcommands: verify, sweep, selberg, sieve,
// plancherel. A JSON config may supply anything a flag can; explicit flags
// win. Exit codes: 0 all asserted checks passed, 1 check/computation
// failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gallagher/arith.hpp"
#include "gallagher/meansquare.hpp"
#include "gallagher/parallel.hpp"
#include "gallagher/sums.hpp"
#include "gallagher/verify.hpp"

namespace {

using gallagher::Inequality;
using gallagher::VerificationReport;
using ojson = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string inequality = "star-tilde";
    double theta = 0.5;
    double T = 50.0;
    int trials = 100;
    std::uint64_t seed = 0;
    int terms = 30;
    double freq_max = 2.0;
    double kappa = 1.0;
    std::int64_t N = 100;
    std::int64_t N1 = 1;
    std::int64_t N2 = 500;
    double epsilon = 0.1;
    std::vector<double> h = {10.0};
    int k = 3;
    int degree = 2;
    double cap = -1.0;  // sentinel: default depends on the inequality
    double tol = 1e-6;
    std::int64_t limit = 0;
    bool mu = false;
    std::vector<std::string> sweep_params;
    std::vector<std::string> sweep_values;          // one comma list per param
    std::vector<std::vector<double>> value_lists;   // parsed form
    std::string out;  // empty = stdout
    std::string plot_out;
    std::string plot_param;
    std::string format;
};

double cap_or(const Options& o, double dflt) { return o.cap < 0 ? dflt : o.cap; }

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        std::cout.flush();
        if (!std::cout) throw IoError("stdout write failed");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + path);
    f << payload;
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        const auto c = s.find(',', pos);
        const std::string tok =
            s.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number in value list: '" + tok + "'");
        }
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    return out;
}

ojson load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config: " + path);
    try {
        return ojson::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
}

// Flags beat config; config beats defaults. Unknown keys are usage errors.
void merge_config(const ojson& cfg, CLI::App* sub, Options& o, std::string& command) {
    static const std::set<std::string> top_keys = {
        "command", "inequality", "output", "format", "parameters", "param",
        "values",  "mu"};
    for (const auto& [key, val] : cfg.items()) {
        (void)val;
        if (!top_keys.count(key))
            throw std::invalid_argument("config: unknown key: " + key);
    }

    const auto passed = [&](const std::string& flag) {
        if (!sub) return false;
        const auto* opt = sub->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };

    if (cfg.contains("command") && command.empty())
        command = cfg.at("command").get<std::string>();
    if (cfg.contains("inequality") && !passed("--inequality"))
        o.inequality = cfg.at("inequality").get<std::string>();
    if (cfg.contains("output") && !passed("--out"))
        o.out = cfg.at("output").get<std::string>();
    if (cfg.contains("format")) o.format = cfg.at("format").get<std::string>();
    if (cfg.contains("mu") && !passed("--mu")) o.mu = cfg.at("mu").get<bool>();
    if (cfg.contains("param") && !passed("--param"))
        o.sweep_params = cfg.at("param").get<std::vector<std::string>>();
    if (cfg.contains("values") && !passed("--values")) {
        o.value_lists.clear();
        for (const auto& row : cfg.at("values"))
            o.value_lists.push_back(row.get<std::vector<double>>());
    }

    if (!cfg.contains("parameters")) return;
    for (const auto& [key, val] : cfg.at("parameters").items()) {
        const auto want = [&](const char* name) {
            std::string flag = std::string("--") + name;
            std::replace(flag.begin(), flag.end(), '_', '-');
            return key == name && !passed(flag);
        };
        if (want("theta")) o.theta = val.get<double>();
        else if (want("T")) o.T = val.get<double>();
        else if (want("trials")) o.trials = val.get<int>();
        else if (want("seed")) o.seed = val.get<std::uint64_t>();
        else if (want("terms")) o.terms = val.get<int>();
        else if (want("freq_max")) o.freq_max = val.get<double>();
        else if (want("kappa")) o.kappa = val.get<double>();
        else if (want("N")) o.N = val.get<std::int64_t>();
        else if (want("N1")) o.N1 = val.get<std::int64_t>();
        else if (want("N2")) o.N2 = val.get<std::int64_t>();
        else if (want("epsilon")) o.epsilon = val.get<double>();
        else if (want("k")) o.k = val.get<int>();
        else if (want("degree")) o.degree = val.get<int>();
        else if (want("cap")) o.cap = val.get<double>();
        else if (want("tol")) o.tol = val.get<double>();
        else if (want("limit")) o.limit = val.get<std::int64_t>();
        else if (want("h")) {
            o.h = val.is_array() ? val.get<std::vector<double>>()
                                 : std::vector<double>{val.get<double>()};
        } else if (key == "theta" || key == "T" || key == "trials" || key == "seed" ||
                   key == "terms" || key == "freq_max" || key == "kappa" ||
                   key == "N" || key == "N1" || key == "N2" || key == "epsilon" ||
                   key == "k" || key == "degree" || key == "cap" || key == "tol" ||
                   key == "limit" || key == "h") {
            // valid key, flag already given: flag wins
        } else {
            throw std::invalid_argument("config: unknown parameter: " + key);
        }
    }
}

std::string default_plot_param(Inequality iq) {
    switch (iq) {
        case Inequality::StarStar:
        case Inequality::StarStarTilde:
        case Inequality::Corollary: return "T";
        case Inequality::ClSelberg: return "h";
        default: return "theta";
    }
}

int finish(const Options& o, Inequality iq, const std::vector<VerificationReport>& reports) {
    ojson arr = ojson::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    write_output(o.out, arr.dump(2) + "\n");

    if (!o.plot_out.empty()) {
        std::ostringstream ss;
        emit_plot_data(reports, o.plot_param.empty() ? default_plot_param(iq) : o.plot_param, ss);
        write_output(o.plot_out, ss.str());
    }

    const auto failed = static_cast<std::size_t>(
        std::count_if(reports.begin(), reports.end(),
                      [](const VerificationReport& r) { return !r.pass; }));
    if (failed > 0) {
        std::cerr << failed << " of " << reports.size() << " checks failed\n";
        return 1;
    }
    return 0;
}

// Runs `trials` seeded random instances (or the single deterministic
// instance for corollary / cl-selberg) and reports them all.
int run_verify(const Options& o) {
    const Inequality iq = gallagher::inequality_from_string(o.inequality);
    std::vector<VerificationReport> reports;

    const auto run_seeded = [&](auto make_report) {
        if (o.trials < 1) throw std::invalid_argument("trials must be >= 1");
        reports.resize(static_cast<std::size_t>(o.trials));
        std::vector<std::string> errors(reports.size());
        gallagher::parallel_for(reports.size(), [&](std::size_t t) {
            const std::uint64_t seed_t =
                gallagher::splitmix64(o.seed + 0x9E3779B97F4A7C15ULL * t);
            try {
                reports[t] = make_report(seed_t);
                reports[t].seed = seed_t;
            } catch (const std::exception& e) {
                errors[t] = e.what();
            }
        });
        for (const auto& e : errors)
            if (!e.empty()) throw std::runtime_error(e);
    };

    switch (iq) {
        case Inequality::Star:
        case Inequality::StarTilde:
        case Inequality::Plancherel: {
            const gallagher::WindowParams w(o.T, o.theta);
            const gallagher::RandomSumConfig cfg{o.terms, o.freq_max};
            run_seeded([&](std::uint64_t seed_t) {
                const auto s = gallagher::random_exponential_sum(seed_t, cfg);
                if (iq == Inequality::Star) return gallagher::check_gallagher_original(s, w);
                if (iq == Inequality::StarTilde) return gallagher::check_lemma(s, w);
                return gallagher::check_plancherel(s, w, o.tol);
            });
            break;
        }
        case Inequality::StarStar:
        case Inequality::StarStarTilde: {
            run_seeded([&](std::uint64_t seed_t) {
                const auto d = gallagher::random_dirichlet_polynomial(seed_t, 1, o.N);
                if (iq == Inequality::StarStar)
                    return gallagher::check_gallagher_series(d, o.T);
                return gallagher::check_theorem(d, o.T, o.kappa, cap_or(o, 100.0));
            });
            break;
        }
        case Inequality::Corollary: {
            const auto b = gallagher::moebius(o.N2);
            const gallagher::ArithmeticSequence ones(
                "ones", o.N1, Eigen::ArrayXd::Ones(o.N2 - o.N1 + 1));
            reports.push_back(gallagher::check_corollary(ones, b, o.N1, o.N2, o.T,
                                                         o.epsilon, cap_or(o, 100.0)));
            break;
        }
        case Inequality::ClSelberg: {
            if (o.h.empty()) throw std::invalid_argument("cl-selberg: need --h");
            const double h_max = *std::max_element(o.h.begin(), o.h.end());
            const auto hc = static_cast<std::int64_t>(std::ceil(h_max));
            const auto seq = gallagher::balance(
                gallagher::sieve_dk(o.k, 2 * o.N + hc), o.degree);
            for (double h : o.h)
                reports.push_back(gallagher::check_cl_selberg(
                    seq, gallagher::SelbergWindow(o.N, h), cap_or(o, 10.0)));
            break;
        }
    }
    return finish(o, iq, reports);
}

int run_sweep(const Options& o) {
    gallagher::SweepConfig cfg;
    cfg.inequality = gallagher::inequality_from_string(o.inequality);
    cfg.param_names = o.sweep_params;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.theta = o.theta;
    cfg.T = o.T;
    cfg.kappa = o.kappa;
    cfg.N = o.N;
    cfg.h = o.h.empty() ? 10.0 : o.h.front();
    cfg.max_terms = o.terms;
    cfg.freq_max = o.freq_max;

    std::vector<std::vector<double>> lists = o.value_lists;
    if (lists.empty())
        for (const auto& s : o.sweep_values) lists.push_back(parse_list(s));
    if (lists.size() != cfg.param_names.size())
        throw std::invalid_argument("sweep: need one --values list per --param");

    // Cartesian product, first parameter outermost.
    if (!lists.empty()) {
        std::vector<std::vector<double>> grid{{}};
        for (const auto& list : lists) {
            if (list.empty()) throw std::invalid_argument("sweep: empty value list");
            std::vector<std::vector<double>> next;
            next.reserve(grid.size() * list.size());
            for (const auto& row : grid)
                for (double v : list) {
                    auto r = row;
                    r.push_back(v);
                    next.push_back(std::move(r));
                }
            grid = std::move(next);
        }
        cfg.grid = std::move(grid);
    }

    const gallagher::SweepTable table = gallagher::estimate_constant(cfg);
    std::ostringstream ss;
    write_csv(table, ss);
    write_output(o.out, ss.str());
    return 0;
}

int run_selberg(const Options& o) {
    if (o.h.empty()) throw std::invalid_argument("selberg: need --h");
    const double h_max = *std::max_element(o.h.begin(), o.h.end());
    const auto hc = static_cast<std::int64_t>(std::ceil(h_max));
    const auto seq =
        gallagher::balance(gallagher::sieve_dk(o.k, 2 * o.N + hc), o.degree);

    std::vector<VerificationReport> reports;
    reports.reserve(o.h.size());
    for (double h : o.h)
        reports.push_back(gallagher::check_cl_selberg(
            seq, gallagher::SelbergWindow(o.N, h), cap_or(o, 10.0)));
    return finish(o, Inequality::ClSelberg, reports);
}

int run_sieve(const Options& o) {
    if (o.limit < 1) throw std::invalid_argument("sieve: need --limit >= 1");
    const auto seq = o.mu ? gallagher::moebius(o.limit) : gallagher::sieve_dk(o.k, o.limit);
    std::ostringstream ss;
    write_csv(seq, ss);
    write_output(o.out, ss.str());
    return 0;
}

void validate_format(const Options& o, const std::string& command) {
    if (o.format.empty()) return;
    const std::string expected =
        (command == "sweep" || command == "sieve") ? "csv" : "json";
    if (o.format != expected)
        throw std::invalid_argument("config: format for '" + command + "' must be '" +
                                    expected + "'");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    std::string config_path;

    CLI::App app{"Mean-square bounds for exponential sums and Dirichlet polynomials"};
    app.fallthrough();
    app.require_subcommand(0, 1);
    app.add_option("--config", config_path, "JSON config file; explicit flags override it");

    const auto make_sub = [&](const std::string& name, const std::string& desc) {
        auto* sub = app.add_subcommand(name, desc);
        // long help only: the short -h would collide with the --h option
        sub->set_help_flag("--help", "print help and exit");
        return sub;
    };
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "base RNG seed");
        sub->add_option("--out", o.out, "output path (default stdout)");
    };
    const auto add_instance = [&](CLI::App* sub) {
        sub->add_option("--trials", o.trials, "number of seeded instances");
        sub->add_option("--theta", o.theta, "window parameter in (0,1)");
        sub->add_option("--T", o.T, "integration half-length");
        sub->add_option("--terms", o.terms, "max terms per random sum");
        sub->add_option("--freq-max", o.freq_max, "frequency range [0, F]");
    };

    auto* v = make_sub("verify", "check one inequality on seeded instances");
    v->add_option("--inequality", o.inequality,
                  "star | star-tilde | star-star | star-star-tilde | corollary | "
                  "cl-selberg | plancherel");
    add_instance(v);
    v->add_option("--kappa", o.kappa, "tail window slack");
    v->add_option("--N", o.N, "Dirichlet coefficient range [1, N]");
    v->add_option("--N1", o.N1, "corollary support start");
    v->add_option("--N2", o.N2, "corollary support end");
    v->add_option("--epsilon", o.epsilon, "corollary tail exponent");
    v->add_option("--h", o.h, "Selberg window length(s)")->delimiter(',');
    v->add_option("--k", o.k, "divisor order for d_k");
    v->add_option("--degree", o.degree, "balancing polynomial degree");
    v->add_option("--cap", o.cap, "ratio cap for <<-type bounds");
    v->add_option("--tol", o.tol, "Plancherel relative tolerance");
    v->add_option("--plot-out", o.plot_out, "also write plot CSV here");
    v->add_option("--plot-param", o.plot_param, "x column for plot CSV");
    add_common(v);

    auto* sw = make_sub("sweep", "max-ratio table over a parameter grid");
    sw->add_option("--inequality", o.inequality, "inequality to sweep");
    sw->add_option("--param", o.sweep_params, "swept parameter name (repeatable)");
    sw->add_option("--values", o.sweep_values,
                   "comma list of values, one per --param (repeatable)");
    add_instance(sw);
    sw->add_option("--kappa", o.kappa, "tail window slack");
    sw->add_option("--N", o.N, "Dirichlet/Selberg range parameter");
    sw->add_option("--h", o.h, "Selberg window length")->delimiter(',');
    add_common(sw);

    auto* se = make_sub("selberg", "discrete window bound for balanced d_k");
    se->add_option("--N", o.N, "window range (N, 2N]");
    se->add_option("--h", o.h, "window length(s)")->delimiter(',');
    se->add_option("--k", o.k, "divisor order for d_k");
    se->add_option("--degree", o.degree, "balancing polynomial degree");
    se->add_option("--cap", o.cap, "ratio cap");
    se->add_option("--plot-out", o.plot_out, "also write plot CSV here");
    add_common(se);

    auto* si = make_sub("sieve", "emit d_k (or Moebius) values as CSV");
    si->add_option("--k", o.k, "divisor order");
    si->add_option("--limit", o.limit, "sieve up to this n");
    si->add_flag("--mu", o.mu, "emit Moebius instead of d_k");
    add_common(si);

    auto* p = make_sub("plancherel", "two-sided transform identity audit");
    add_instance(p);
    p->add_option("--tol", o.tol, "relative tolerance");
    p->add_option("--plot-out", o.plot_out, "also write plot CSV here");
    p->add_option("--plot-param", o.plot_param, "x column for plot CSV");
    add_common(p);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = nullptr;
    std::string command;
    for (CLI::App* s : {v, sw, se, si, p})
        if (s->parsed()) {
            sub = s;
            command = s->get_name();
        }

    try {
        if (!config_path.empty()) merge_config(load_config(config_path), sub, o, command);
        if (command.empty())
            throw std::invalid_argument(
                "no command given (verify | sweep | selberg | sieve | plancherel)");
        validate_format(o, command);
        if (command == "verify") return run_verify(o);
        if (command == "sweep") return run_sweep(o);
        if (command == "selberg") return run_selberg(o);
        if (command == "sieve") return run_sieve(o);
        if (command == "plancherel") {
            o.inequality = "plancherel";
            return run_verify(o);
        }
        throw std::invalid_argument("unknown command: " + command);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        ojson j;
        j["error"] = e.what();
        std::cerr << j.dump() << "\n";
        return 1;
    }
}

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

// Path injected by the build so the tests exercise the real binary.
#ifndef GALLAGHER_CLI_PATH
#error "GALLAGHER_CLI_PATH must point at the built executable"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() /
                 ("gallagher_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd = std::string("'") + GALLAGHER_CLI_PATH + "' " + args +
                            " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

}  // namespace

TEST_CASE("cli: divisor sieve emits exact csv") {
    const auto r = run("sieve --k 3 --limit 8");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "n,value\n"
          "1,1\n2,3\n3,3\n4,6\n5,3\n6,9\n7,3\n8,10\n");

    const auto mu = run("sieve --mu --limit 6");
    CHECK(mu.code == 0);
    CHECK(mu.out == "n,value\n1,1\n2,-1\n3,-1\n4,0\n5,-1\n6,1\n");
}

TEST_CASE("cli: usage errors exit 2, help exits 0") {
    CHECK(run("sieve --no-such-flag 1").code == 2);
    CHECK(run("").code == 2);                      // no command
    CHECK(run("sieve --k 2").code == 2);           // missing --limit
    CHECK(run("verify --inequality bogus --trials 1").code == 2);
    CHECK(run("--help").code == 0);
    const auto h = run("--help");
    CHECK(h.out.find("verify") != std::string::npos);
}

TEST_CASE("cli: verification run emits a json array, one report per trial") {
    const std::string args =
        "verify --inequality star-tilde --theta 0.5 --T 5 --trials 3 --seed 1 "
        "--terms 4";
    const auto r = run(args);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    for (const auto& rep : j) {
        CHECK(rep.at("inequality") == "star-tilde");
        CHECK(rep.at("pass") == true);
        CHECK(rep.at("ratio").get<double>() <= rep.at("constant").get<double>());
    }
    // distinct trials get distinct derived seeds
    CHECK(j[0].at("seed") != j[1].at("seed"));

    const auto again = run(args);
    CHECK(again.out == r.out);  // byte-identical reruns
}

TEST_CASE("cli: config supplies defaults, explicit flags win") {
    const fs::path cfg = work_dir() / "cfg.json";
    write_file(cfg, R"({"command":"sieve","parameters":{"k":3,"limit":8}})");

    const auto from_cfg = run("--config '" + cfg.string() + "'");
    CHECK(from_cfg.code == 0);
    CHECK(from_cfg.out == run("sieve --k 3 --limit 8").out);

    const auto overridden = run("sieve --limit 5 --config '" + cfg.string() + "'");
    CHECK(overridden.code == 0);
    CHECK(overridden.out == "n,value\n1,1\n2,3\n3,3\n4,6\n5,3\n");

    const fs::path bad = work_dir() / "bad.json";
    write_file(bad, R"({"bogus": 1})");
    const auto b = run("sieve --k 2 --limit 3 --config '" + bad.string() + "'");
    CHECK(b.code == 2);
    CHECK(b.err.find("usage error") != std::string::npos);

    const fs::path badfmt = work_dir() / "badfmt.json";
    write_file(badfmt, R"({"command":"verify","format":"csv"})");
    CHECK(run("--config '" + badfmt.string() + "'").code == 2);

    CHECK(run("sieve --k 2 --limit 3 --config /does/not/exist.json").code == 3);
}

TEST_CASE("cli: output redirection and io failures") {
    const fs::path out = work_dir() / "sieve.csv";
    const auto r = run("sieve --k 2 --limit 4 --out '" + out.string() + "'");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(out) == "n,value\n1,1\n2,2\n3,2\n4,3\n");

    CHECK(run("sieve --k 2 --limit 4 --out /no/such/dir/x.csv").code == 3);
}

TEST_CASE("cli: sweep table has the positional header") {
    const auto r = run(
        "sweep --inequality star-tilde --param theta --values 0.3,0.5 "
        "--trials 2 --seed 1 --terms 3 --T 5");
    CHECK(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "param_1,max_ratio,n_seeds");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("cli: remaining commands run end to end") {
    const auto se = run("selberg --N 30 --h 5 --k 3 --degree 2 --seed 2");
    CHECK(se.code == 0);
    const auto js = nlohmann::json::parse(se.out);
    REQUIRE(js.is_array());
    CHECK(js.size() == 1);
    CHECK(js[0].at("inequality") == "cl-selberg");
    CHECK(js[0].at("pass") == true);

    const auto p = run(
        "plancherel --theta 0.5 --T 2 --trials 1 --terms 3 --freq-max 1 --seed 3");
    CHECK(p.code == 0);
    const auto jp = nlohmann::json::parse(p.out);
    CHECK(jp[0].at("inequality") == "plancherel");
    CHECK(jp[0].at("pass") == true);

    const auto th = run("verify --inequality star-star-tilde --N 12 --T 30 --trials 2");
    CHECK(th.code == 0);
    const auto jt = nlohmann::json::parse(th.out);
    CHECK(jt.size() == 2);
    for (const auto& rep : jt) CHECK(rep.at("pass") == true);
}

TEST_CASE("cli: plot csv lands next to the main output") {
    const fs::path plot = work_dir() / "plot.csv";
    const auto r = run(
        "verify --inequality star-tilde --theta 0.4 --T 5 --trials 2 --seed 6 "
        "--terms 3 --plot-out '" + plot.string() + "'");
    CHECK(r.code == 0);
    const std::string text = slurp(plot);
    CHECK(text.substr(0, 11) == "# columns: ");
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

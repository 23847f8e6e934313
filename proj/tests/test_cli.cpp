#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mixfourier/io.hpp"
#include "mixfourier/model.hpp"

using namespace mixfourier;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path case_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mixfourier_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CliRun run_cli(const fs::path& dir, const std::string& args) {
    const fs::path out = dir / "stdout.log";
    const fs::path err = dir / "stderr.log";
    const std::string cmd = std::string(MIXFOURIER_CLI_PATH) + " " + args + " >" +
                            out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_demo_model(const fs::path& dir) {
    const auto m = make_mixture({0.3 * M_PI, M_PI, 1.6 * M_PI}, {1, 1, 1}, 0.9);
    const fs::path p = dir / "model.json";
    write_text_file(p.string(), mixture_json(m).dump(2) + "\n");
    return p;
}

fs::path write_samples(const fs::path& dir, const GaussianMixture& m, std::size_t n,
                       std::uint64_t seed) {
    const auto s = sample_mixture(m, n, seed);
    std::ostringstream ss;
    for (double x : s.values) ss << format_double(x) << "\n";
    const fs::path p = dir / "samples.txt";
    write_text_file(p.string(), ss.str());
    return p;
}

ordered_json load_json(const fs::path& p) { return ordered_json::parse(slurp(p)); }

// wall clock is the one column allowed to vary between reruns
std::string mask_runtime(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> hdr;
    {
        std::istringstream h(line);
        std::string cell;
        while (std::getline(h, cell, ',')) hdr.push_back(cell);
    }
    int drop = -1;
    for (std::size_t i = 0; i < hdr.size(); ++i)
        if (hdr[i] == "runtime_ms") drop = static_cast<int>(i);
    std::string outp = line + "\n";
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string cell;
        int idx = 0;
        std::string rebuilt;
        while (std::getline(row, cell, ',')) {
            if (!rebuilt.empty()) rebuilt += ',';
            rebuilt += (idx == drop) ? "X" : cell;
            ++idx;
        }
        outp += rebuilt + "\n";
    }
    return outp;
}

}  // namespace

TEST_CASE("help exits zero and names every subcommand") {
    const auto dir = case_dir("help");
    const auto r = run_cli(dir, "--help");
    CHECK(r.exit_code == 0);
    for (const char* sub : {"estimate", "phase-transition", "compare-em", "cutoff"})
        CHECK(r.out.find(sub) != std::string::npos);
}

TEST_CASE("unknown flag is a configuration error") {
    const auto dir = case_dir("badflag");
    CHECK(run_cli(dir, "estimate --bogus 3").exit_code == 1);
}

TEST_CASE("missing sample file exits one and names the path") {
    const auto dir = case_dir("missing");
    const auto r = run_cli(dir, "estimate --samples " + (dir / "absent.txt").string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("absent.txt") != std::string::npos);
}

TEST_CASE("exactly one input source is required") {
    const auto dir = case_dir("sources");
    const auto model = write_demo_model(dir);
    const auto samples = write_samples(dir, make_mixture({0.0}, {1.0}, 1.0), 50, 1);
    CHECK(run_cli(dir, "estimate --samples " + samples.string() + " --model " +
                           model.string()).exit_code == 1);
    CHECK(run_cli(dir, "estimate --K 4").exit_code == 1);
    // the bisection search needs sample data behind it
    CHECK(run_cli(dir, "--seed 4 estimate --model " + model.string() +
                           " --sigma 1e-5 --omega auto").exit_code == 1);
}

TEST_CASE("model path with defaults recovers the demo mixture") {
    const auto dir = case_dir("demo");
    const auto model = write_demo_model(dir);
    const auto r = run_cli(dir, "--out " + (dir / "o").string() + " --seed 4 estimate --model " +
                                    model.string() + " --sigma 1e-5 --K 5");
    REQUIRE(r.exit_code == 0);
    const auto j = load_json(dir / "o" / "estimate.json");
    CHECK(j.at("k_hat").get<int>() == 3);
    const double v = j.at("v_hat").get<double>();
    CHECK(v >= 0.44);
    CHECK(v <= 0.47);
    REQUIRE(j.at("means").size() == 3);
    CHECK(slurp(dir / "o" / "surface.csv").rfind("u,", 0) == 0);
}

TEST_CASE("sample path with omega auto fits a two component mixture") {
    const auto dir = case_dir("autosmp");
    const auto samples =
        write_samples(dir, make_mixture({-0.5, 0.5}, {0.5, 0.5}, 1.0), 10000, 3);
    const auto r = run_cli(dir, "--out " + (dir / "o").string() + " estimate --samples " +
                                    samples.string() +
                                    " --omega auto --K 4 --vmax 2 --vstep 0.01"
                                    " --known-k 2 --omega-init 1.6");
    REQUIRE(r.exit_code == 0);
    const auto j = load_json(dir / "o" / "estimate.json");
    CHECK(j.at("k_hat").get<int>() == 2);
    CHECK(std::abs(j.at("v_hat").get<double>() - 0.5) < 0.1);
    CHECK(j.at("means").size() == 2);
}

TEST_CASE("impossible threshold exits two but still writes diagnostics") {
    const auto dir = case_dir("reject");
    const auto model = write_demo_model(dir);
    const auto r = run_cli(dir, "--out " + (dir / "o").string() + " --seed 9 estimate --model " +
                                    model.string() + " --sigma 1e-5 --K 5 --T 1e9");
    CHECK(r.exit_code == 2);
    const auto j = load_json(dir / "o" / "estimate.json");
    CHECK(j.at("order_rejected").get<bool>());
    CHECK(j.at("k_hat").get<int>() == 0);
    CHECK(fs::exists(dir / "o" / "surface.csv"));
}

TEST_CASE("cutoff prints the dyadic band limit") {
    const auto dir = case_dir("cutoff");
    const auto samples = write_samples(dir, make_mixture({0.0}, {1.0}, 1.0), 10000, 47);
    const auto r = run_cli(dir, "cutoff --samples " + samples.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "3.0078125\n");
    CHECK(run_cli(dir, "cutoff --samples " + samples.string() + " --t 0").exit_code == 1);
    CHECK(run_cli(dir, "cutoff").exit_code == 1);
}

TEST_CASE("phase transition writes trials and a summary, reruns byte identical") {
    const auto dir = case_dir("phase");
    const std::string args = " phase-transition --trials 40";
    REQUIRE(run_cli(dir, "--out " + (dir / "a").string() + " --seed 77" + args).exit_code == 0);
    REQUIRE(run_cli(dir, "--out " + (dir / "b").string() + " --seed 77" + args).exit_code == 0);
    const std::string csv = slurp(dir / "a" / "phase_trials.csv");
    CHECK(csv == slurp(dir / "b" / "phase_trials.csv"));
    CHECK(slurp(dir / "a" / "phase_summary.json") == slurp(dir / "b" / "phase_summary.json"));
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 41);
    const auto j = load_json(dir / "a" / "phase_summary.json");
    const double rate = j.at("success_rate").get<double>();
    CHECK(rate >= 0.0);
    CHECK(rate <= 1.0);
    CHECK(j.contains("slope"));
    CHECK(run_cli(dir, "--seed 77 phase-transition --trials 0").exit_code == 1);
}

TEST_CASE("seed comes from flag or environment and the flag wins over config") {
    const auto dir = case_dir("seeds");
    CHECK(run_cli(dir, "phase-transition --trials 3").exit_code == 1);

    REQUIRE(run_cli(dir, "--out " + (dir / "flag").string() +
                             " --seed 501 phase-transition --trials 6").exit_code == 0);
    setenv("MIXFOURIER_SEED", "501", 1);
    const auto env_run =
        run_cli(dir, "--out " + (dir / "env").string() + " phase-transition --trials 6");
    unsetenv("MIXFOURIER_SEED");
    REQUIRE(env_run.exit_code == 0);
    CHECK(slurp(dir / "flag" / "phase_trials.csv") == slurp(dir / "env" / "phase_trials.csv"));

    const fs::path cfg = dir / "cfg.json";
    write_text_file(cfg.string(), "{\"seed\": 501, \"trials\": 6}\n");
    REQUIRE(run_cli(dir, "--config " + cfg.string() + " --out " + (dir / "cfg").string() +
                             " phase-transition").exit_code == 0);
    CHECK(slurp(dir / "flag" / "phase_trials.csv") == slurp(dir / "cfg" / "phase_trials.csv"));

    REQUIRE(run_cli(dir, "--config " + cfg.string() + " --out " + (dir / "win").string() +
                             " --seed 502 phase-transition").exit_code == 0);
    CHECK(slurp(dir / "flag" / "phase_trials.csv") != slurp(dir / "win" / "phase_trials.csv"));
}

TEST_CASE("compare trend emits paired rows and aggregate deltas") {
    const auto dir = case_dir("trend");
    const auto model = write_demo_model(dir);
    const auto r = run_cli(dir, "--out " + (dir / "o").string() + " --seed 42 compare-em --model " +
                                    model.string() + " --n-list 400 800 --trials 2 --K 4");
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp(dir / "o" / "compare_rows.csv");
    CHECK(csv.rfind("n,trial,method,var_rel_err,w1,runtime_ms,loglik,aic,bic\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 1 + 2 * 2 * 2);
    const auto sum = load_json(dir / "o" / "compare_summary.json");
    REQUIRE(sum.size() == 2);
    for (const auto& entry : sum) {
        CHECK(entry.contains("proposed"));
        CHECK(entry.contains("em"));
        CHECK(entry.at("delta").contains("loglik"));
        CHECK(entry.at("delta").contains("aic"));
        CHECK(entry.at("delta").contains("bic"));
    }
    CHECK(run_cli(dir, "--seed 42 compare-em --model " + model.string()).exit_code == 1);
    const auto samples = write_samples(dir, make_mixture({0.0}, {1.0}, 1.0), 50, 1);
    CHECK(run_cli(dir, "--seed 42 compare-em --model " + model.string() + " --samples " +
                           samples.string() + " --n-list 400").exit_code == 1);
}

TEST_CASE("separation sweep rows lead with the gap and rerun statistically identical") {
    const auto dir = case_dir("sweep");
    const std::string args = " --seed 31 compare-em --separations 0.4:0.8:0.2 --n 600 --trials 1";
    REQUIRE(run_cli(dir, "--out " + (dir / "a").string() + args).exit_code == 0);
    REQUIRE(run_cli(dir, "--out " + (dir / "b").string() + args).exit_code == 0);
    const std::string csv = slurp(dir / "a" / "compare_rows.csv");
    CHECK(csv.rfind("separation,n,", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 1 + 3 * 1 * 2);
    CHECK(mask_runtime(csv) == mask_runtime(slurp(dir / "b" / "compare_rows.csv")));
    CHECK(run_cli(dir, "--seed 31 compare-em --separations 0.8:0.4:0.2 --n 600").exit_code == 1);
}

TEST_CASE("jobs flag changes nothing in the artifacts") {
    const auto dir = case_dir("jobs");
    const auto samples =
        write_samples(dir, make_mixture({-0.5, 0.5}, {0.5, 0.5}, 1.0), 10000, 3);
    const std::string tail = " estimate --samples " + samples.string() +
                             " --omega auto --K 4 --known-k 2 --omega-init 1.6";
    REQUIRE(run_cli(dir, "--jobs 1 --out " + (dir / "j1").string() + tail).exit_code == 0);
    REQUIRE(run_cli(dir, "--jobs 4 --out " + (dir / "j4").string() + tail).exit_code == 0);
    CHECK(slurp(dir / "j1" / "estimate.json") == slurp(dir / "j4" / "estimate.json"));
    CHECK(slurp(dir / "j1" / "surface.csv") == slurp(dir / "j4" / "surface.csv"));
}

// Command line front end: estimation, experiment harnesses, cutoff search.
#include <omp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "mixfourier/errors.hpp"
#include "mixfourier/io.hpp"

namespace fs = std::filesystem;
using namespace mixfourier;

namespace {

struct Shared {
    std::string config_path;
    std::string out_dir = ".";
    int jobs = 0;
    std::optional<std::uint64_t> seed;
    ordered_json config;  // loaded file contents, flags win on conflict
};

ordered_json load_config(const std::string& path) {
    if (path.empty()) return ordered_json::object();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return ordered_json::parse(in);
}

// fills `value` from the config file when the flag was not passed
template <typename T>
void merge(const CLI::App& app, const ordered_json& cfg, const std::string& flag,
           const std::string& key, T& value) {
    if (app.count(flag) == 0 && cfg.contains(key)) value = cfg.at(key).get<T>();
}

std::uint64_t require_seed(const Shared& shared) {
    if (shared.seed) return *shared.seed;
    if (const char* env = std::getenv("MIXFOURIER_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
        throw ConfigError("MIXFOURIER_SEED is not an integer");
    }
    throw ConfigError("a seed is required (--seed or MIXFOURIER_SEED)");
}

GaussianMixture load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open model file: " + path);
    return mixture_from_json(ordered_json::parse(in));
}

void write_out(const Shared& shared, const std::string& name, const std::string& content) {
    fs::create_directories(shared.out_dir);
    write_text_file((fs::path(shared.out_dir) / name).string(), content);
}

std::vector<double> parse_span(const std::string& text) {
    // "a:b:step" inclusive ladder
    std::vector<double> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(':', pos);
        const std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        char* end = nullptr;
        parts.push_back(std::strtod(tok.c_str(), &end));
        if (!end || *end != '\0' || tok.empty()) throw ConfigError("bad span: " + text);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() != 3) throw ConfigError("span needs start:stop:step, got " + text);
    const double a = parts[0], b = parts[1], step = parts[2];
    if (!(step > 0.0) || b < a) throw ConfigError("span needs stop >= start and step > 0");
    std::vector<double> out;
    for (double x = a; x <= b + 1e-9; x += step) out.push_back(x);
    return out;
}

struct EstimateArgs {
    std::string samples_path;
    std::string model_path;
    std::string omega = "auto";
    int half_count = 4;
    double vmax = 2.0;
    double vstep = 0.01;
    double threshold = 0.0;
    int known_k = 0;  // 0 = unknown
    double sigma = 0.0;
    int bisection_t = 8;
    double omega_init = 10.0;
    std::size_t music_resolution = 4096;
    double merge_gap = 0.0;
};

int run_estimate(const Shared& shared, const CLI::App& cmd, EstimateArgs a) {
    const auto& cfg = shared.config;
    merge(cmd, cfg, "--samples", "samples", a.samples_path);
    merge(cmd, cfg, "--model", "model", a.model_path);
    merge(cmd, cfg, "--omega", "omega", a.omega);
    merge(cmd, cfg, "--K", "K", a.half_count);
    merge(cmd, cfg, "--vmax", "vmax", a.vmax);
    merge(cmd, cfg, "--vstep", "vstep", a.vstep);
    merge(cmd, cfg, "--T", "T", a.threshold);
    merge(cmd, cfg, "--known-k", "known_k", a.known_k);
    merge(cmd, cfg, "--sigma", "sigma", a.sigma);
    merge(cmd, cfg, "--t", "t", a.bisection_t);
    merge(cmd, cfg, "--omega-init", "omega_init", a.omega_init);
    merge(cmd, cfg, "--music-resolution", "music_resolution", a.music_resolution);
    merge(cmd, cfg, "--merge-gap", "merge_gap", a.merge_gap);

    if (a.samples_path.empty() == a.model_path.empty())
        throw ConfigError("estimate needs exactly one of --samples or --model");
    const bool omega_given = cmd.count("--omega") > 0 || cfg.contains("omega");
    if (!a.model_path.empty() && omega_given && a.omega == "auto")
        throw ConfigError("--omega auto searches sample data; give a number with --model");

    PipelineConfig pc;
    pc.svr.candidates = make_candidates(a.vmax, a.vstep);
    pc.svr.threshold = a.threshold;
    if (a.known_k > 0) pc.svr.known_order = a.known_k;
    pc.music_resolution = a.music_resolution;
    pc.merge_gap = a.merge_gap;

    EstimationResult result;
    SvrSurface surface;
    if (!a.samples_path.empty()) {
        SampleSet samples;
        samples.values = read_sample_file(a.samples_path);
        double omega_max = 0.0;
        if (a.omega == "auto") {
            omega_max = cutoff_search(samples, a.bisection_t, a.omega_init);
        } else {
            char* end = nullptr;
            omega_max = std::strtod(a.omega.c_str(), &end);
            if (!end || *end != '\0' || !(omega_max > 0.0))
                throw ConfigError("--omega must be a positive number or auto");
        }
        const FourierGrid grid(omega_max, a.half_count);
        const FourierData data = ecf(samples, grid);
        surface = svr_surface(data, pc.svr.candidates);
        result = estimate_fourier_full(data, pc);
    } else {
        const GaussianMixture model = load_model(a.model_path);
        double omega_max = 1.5;  // default keeps the location window wide (+-pi*K/(2*1.5))
        if (a.omega != "auto") {
            char* end = nullptr;
            omega_max = std::strtod(a.omega.c_str(), &end);
            if (!end || *end != '\0' || !(omega_max > 0.0))
                throw ConfigError("--omega must be a positive number for the model path");
        }
        const FourierGrid grid(omega_max, a.half_count);
        const std::uint64_t seed = a.sigma > 0.0 ? require_seed(shared) : 0;
        const FourierData data = synth_fourier(model, grid, a.sigma, seed);
        surface = svr_surface(data, pc.svr.candidates);
        result = estimate_fourier_full(data, pc);
    }

    write_out(shared, "estimate.json", estimation_json(result).dump(2) + "\n");
    write_out(shared, "surface.csv", surface_csv(surface, a.threshold));
    if (result.order_rejected) {
        std::fprintf(stderr, "estimation error: every ratio cell fell under the threshold\n");
        return 2;
    }
    std::printf("k_hat=%d v_hat=%s s2_hat=%s\n", result.k_hat,
                format_double(result.v_hat).c_str(), format_double(result.s2_hat).c_str());
    return 0;
}

struct PhaseArgs {
    int k = 2;
    std::size_t trials = 2000;
    double log_srf_min = 0.0, log_srf_max = 3.0;
    double log_snr_min = 2.0, log_snr_max = 10.0;
    bool unknown_variance = false;
    double v_true = 1.0;
    double vmax = 2.0;
    double vstep = 0.02;
    double threshold_scale = 2.0;
};

int run_phase(const Shared& shared, const CLI::App& cmd, PhaseArgs a) {
    const auto& cfg = shared.config;
    merge(cmd, cfg, "--k", "k", a.k);
    merge(cmd, cfg, "--trials", "trials", a.trials);
    merge(cmd, cfg, "--log-srf-min", "log_srf_min", a.log_srf_min);
    merge(cmd, cfg, "--log-srf-max", "log_srf_max", a.log_srf_max);
    merge(cmd, cfg, "--log-snr-min", "log_snr_min", a.log_snr_min);
    merge(cmd, cfg, "--log-snr-max", "log_snr_max", a.log_snr_max);
    merge(cmd, cfg, "--unknown-variance", "unknown_variance", a.unknown_variance);
    merge(cmd, cfg, "--v-true", "v_true", a.v_true);
    merge(cmd, cfg, "--vmax", "vmax", a.vmax);
    merge(cmd, cfg, "--vstep", "vstep", a.vstep);
    merge(cmd, cfg, "--threshold-scale", "threshold_scale", a.threshold_scale);

    PhaseConfig pc;
    pc.k = a.k;
    pc.trials = a.trials;
    pc.log_srf_min = a.log_srf_min;
    pc.log_srf_max = a.log_srf_max;
    pc.log_snr_min = a.log_snr_min;
    pc.log_snr_max = a.log_snr_max;
    pc.known_variance = !a.unknown_variance;
    pc.seed = require_seed(shared);
    pc.v_true = a.v_true;
    pc.v_grid_max = a.vmax;
    pc.v_grid_step = a.vstep;
    pc.threshold_scale = a.threshold_scale;

    const auto records = phase_transition(pc);
    const auto fit = fit_transition_slope(records);
    write_out(shared, "phase_trials.csv", phase_csv(records));
    write_out(shared, "phase_summary.json", phase_summary_json(records, fit, pc).dump(2) + "\n");
    std::printf("trials=%zu boundary_slope=%s\n", records.size(),
                format_double(fit.boundary_slope).c_str());
    return 0;
}

struct CompareArgs {
    std::string model_path;
    std::string samples_path;  // never valid here; kept for the conflict diagnostic
    std::vector<std::size_t> n_list;
    std::string separations;
    std::size_t n = 5000;
    std::size_t trials = 50;
    int half_count = 0;  // 0: per-mode default
    double omega_init = 1.6;
    int bisection_t = 8;
    double vmax = 2.0;
    double vstep = 0.01;
    double order_threshold_scale = 20.0;
    double em_tol = 1e-5;
    int em_max_iter = 1000;
};

int run_compare(const Shared& shared, const CLI::App& cmd, CompareArgs a) {
    const auto& cfg = shared.config;
    merge(cmd, cfg, "--model", "model", a.model_path);
    merge(cmd, cfg, "--n-list", "n_list", a.n_list);
    merge(cmd, cfg, "--trials", "trials", a.trials);
    merge(cmd, cfg, "--n", "n", a.n);
    merge(cmd, cfg, "--separations", "separations", a.separations);
    merge(cmd, cfg, "--K", "K", a.half_count);
    merge(cmd, cfg, "--omega-init", "omega_init", a.omega_init);
    merge(cmd, cfg, "--t", "t", a.bisection_t);
    merge(cmd, cfg, "--vmax", "vmax", a.vmax);
    merge(cmd, cfg, "--vstep", "vstep", a.vstep);
    merge(cmd, cfg, "--order-threshold-scale", "order_threshold_scale", a.order_threshold_scale);
    merge(cmd, cfg, "--em-tol", "em_tol", a.em_tol);
    merge(cmd, cfg, "--em-max-iter", "em_max_iter", a.em_max_iter);

    if (!a.samples_path.empty())
        throw ConfigError("compare-em draws its own samples; --samples conflicts with --model");

    std::vector<CompareRow> rows;
    bool with_separation = false;
    if (!a.separations.empty()) {
        SweepConfig sc;
        sc.separations = parse_span(a.separations);
        sc.n = a.n;
        sc.trials = a.trials;
        sc.seed = require_seed(shared);
        sc.half_count = a.half_count > 0 ? a.half_count : 8;
        sc.omega_init = a.omega_init;
        sc.bisection_t = a.bisection_t;
        sc.v_max = a.vmax;
        sc.v_step = a.vstep;
        sc.em_tol = a.em_tol;
        sc.em_max_iter = a.em_max_iter;
        rows = separation_sweep(sc);
        with_separation = true;
    } else {
        if (a.model_path.empty() || a.n_list.empty())
            throw ConfigError("compare-em needs --model and --n-list, or --separations");
        CompareConfig cc;
        cc.model = load_model(a.model_path);
        cc.n_list = a.n_list;
        cc.trials = a.trials;
        cc.seed = require_seed(shared);
        cc.half_count = a.half_count > 0 ? a.half_count : 4;
        cc.omega_init = a.omega_init;
        cc.bisection_t = a.bisection_t;
        cc.v_max = a.vmax;
        cc.v_step = a.vstep;
        cc.order_threshold_scale = a.order_threshold_scale;
        cc.em_tol = a.em_tol;
        cc.em_max_iter = a.em_max_iter;
        rows = compare_em(cc).rows;
    }

    write_out(shared, "compare_rows.csv", compare_csv(rows, with_separation));
    write_out(shared, "compare_summary.json", compare_summary_json(rows).dump(2) + "\n");
    std::printf("rows=%zu\n", rows.size());
    return 0;
}

struct CutoffArgs {
    std::string samples_path;
    int bisection_t = 8;
    double omega_init = 10.0;
};

int run_cutoff(const Shared& shared, const CLI::App& cmd, CutoffArgs a) {
    const auto& cfg = shared.config;
    merge(cmd, cfg, "--samples", "samples", a.samples_path);
    merge(cmd, cfg, "--t", "t", a.bisection_t);
    merge(cmd, cfg, "--omega-init", "omega_init", a.omega_init);
    if (a.samples_path.empty()) throw ConfigError("cutoff needs --samples");
    SampleSet samples;
    samples.values = read_sample_file(a.samples_path);
    const double omega = cutoff_search(samples, a.bisection_t, a.omega_init);
    std::printf("%s\n", format_double(omega).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian mixture estimation by Fourier singular value ratios"};
    app.require_subcommand(1);

    Shared shared;
    app.add_option("--config", shared.config_path, "JSON config file; flags win on conflict");
    app.add_option("--out", shared.out_dir, "output directory");
    app.add_option("--jobs", shared.jobs, "worker threads (default: all cores)");
    std::uint64_t seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "random seed");

    EstimateArgs ea;
    auto* est = app.add_subcommand("estimate", "fit order, variance, means, weights");
    auto* est_samples = est->add_option("--samples", ea.samples_path, "sample file, one float per line");
    auto* est_model = est->add_option("--model", ea.model_path, "mixture JSON for the transform path");
    est_samples->excludes(est_model);
    est->add_option("--omega", ea.omega, "band limit, number or auto");
    est->add_option("--K", ea.half_count, "positive grid frequencies");
    est->add_option("--vmax", ea.vmax, "candidate grid top");
    est->add_option("--vstep", ea.vstep, "candidate grid step");
    est->add_option("--T", ea.threshold, "ratio numerator threshold");
    est->add_option("--known-k", ea.known_k, "fix the model order");
    est->add_option("--sigma", ea.sigma, "fourier noise level for the model path");
    est->add_option("--t", ea.bisection_t, "bisection steps for omega auto");
    est->add_option("--omega-init", ea.omega_init, "bisection bracket for omega auto");
    est->add_option("--music-resolution", ea.music_resolution, "location grid size");
    est->add_option("--merge-gap", ea.merge_gap, "merge peaks closer than this");

    PhaseArgs pa;
    auto* pha = app.add_subcommand("phase-transition", "order recovery monte carlo");
    pha->add_option("--k", pa.k, "true order (2 or 3)");
    pha->add_option("--trials", pa.trials, "trial count");
    pha->add_option("--log-srf-min", pa.log_srf_min, "log srf lower edge");
    pha->add_option("--log-srf-max", pa.log_srf_max, "log srf upper edge");
    pha->add_option("--log-snr-min", pa.log_snr_min, "log snr lower edge");
    pha->add_option("--log-snr-max", pa.log_snr_max, "log snr upper edge");
    pha->add_flag("--unknown-variance", pa.unknown_variance, "search the variance grid");
    pha->add_option("--v-true", pa.v_true, "true variance parameter");
    pha->add_option("--vmax", pa.vmax, "variance grid top");
    pha->add_option("--vstep", pa.vstep, "variance grid step");
    pha->add_option("--threshold-scale", pa.threshold_scale, "threshold in noise units");

    CompareArgs ca;
    auto* cmp = app.add_subcommand("compare-em", "head to head against em");
    auto* cmp_model = cmp->add_option("--model", ca.model_path, "mixture JSON");
    auto* cmp_samples = cmp->add_option("--samples", ca.samples_path, "not accepted here");
    cmp_samples->excludes(cmp_model);
    cmp->add_option("--n-list", ca.n_list, "sample sizes for the trend run");
    cmp->add_option("--separations", ca.separations, "start:stop:step sweep of mean gaps");
    cmp->add_option("--n", ca.n, "samples per trial in the sweep");
    cmp->add_option("--trials", ca.trials, "trials per point");
    cmp->add_option("--K", ca.half_count, "positive grid frequencies");
    cmp->add_option("--omega-init", ca.omega_init, "bisection bracket");
    cmp->add_option("--t", ca.bisection_t, "bisection steps");
    cmp->add_option("--vmax", ca.vmax, "candidate grid top");
    cmp->add_option("--vstep", ca.vstep, "candidate grid step");
    cmp->add_option("--order-threshold-scale", ca.order_threshold_scale,
                    "order check threshold in 1/sqrt(n) units");
    cmp->add_option("--em-tol", ca.em_tol, "em stopping gain");
    cmp->add_option("--em-max-iter", ca.em_max_iter, "em iteration cap");

    CutoffArgs ua;
    auto* cut = app.add_subcommand("cutoff", "binary search of the band limit");
    cut->add_option("--samples", ua.samples_path, "sample file");
    cut->add_option("--t", ua.bisection_t, "bisection steps");
    cut->add_option("--omega-init", ua.omega_init, "initial bracket");

    try {
        app.parse(argc, argv);
        shared.config = load_config(shared.config_path);
        if (seed_opt->count() > 0) shared.seed = seed_flag;
        else if (shared.config.contains("seed"))
            shared.seed = shared.config.at("seed").get<std::uint64_t>();
        merge(app, shared.config, "--out", "out", shared.out_dir);
        merge(app, shared.config, "--jobs", "jobs", shared.jobs);
        if (shared.jobs > 0) omp_set_num_threads(shared.jobs);

        if (est->parsed()) return run_estimate(shared, *est, ea);
        if (pha->parsed()) return run_phase(shared, *pha, pa);
        if (cmp->parsed()) return run_compare(shared, *cmp, ca);
        return run_cutoff(shared, *cut, ua);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const EstimationError& e) {
        std::fprintf(stderr, "estimation error: %s\n", e.what());
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

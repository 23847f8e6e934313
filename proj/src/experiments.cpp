#include "mixfourier/experiments.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>

#include "mixfourier/errors.hpp"
#include "mixfourier/rng.hpp"

namespace mixfourier {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

double optimal_cutoff(int k, double v) {
    if (k < 2) throw ConfigError("band formula needs k >= 2");
    if (!(v > 0.0)) throw ConfigError("variance parameter must be positive");
    return std::sqrt((2.0 * k - 2.0) / v);
}

double resolution_limit_noise(double v, int k, double pi_min, double noise_sup) {
    if (k < 2) throw ConfigError("resolution formula needs k >= 2");
    if (!(v > 0.0) || !(pi_min > 0.0) || !(noise_sup > 0.0))
        throw ConfigError("resolution formula needs positive inputs");
    const double expo = 1.0 / (2.0 * k - 2.0);
    return std::sqrt(v / (2.0 * k - 2.0)) * std::pow(noise_sup / pi_min, expo);
}

double resolution_limit_samples(double v, int k, double pi_min, std::size_t n) {
    if (n == 0) throw ConfigError("sample count must be positive");
    return resolution_limit_noise(v, k, pi_min, 1.0 / std::sqrt(static_cast<double>(n)));
}

TrialRecord phase_trial(const PhaseConfig& config, std::size_t trial) {
    const auto t0 = std::chrono::steady_clock::now();
    const int k = config.k;
    const double v = config.v_true;

    const std::uint64_t seed = child_seed(config.seed, trial);
    Rng rng(seed);
    const double lsrf =
        config.log_srf_min + rng.uniform() * (config.log_srf_max - config.log_srf_min);
    const double lsnr =
        config.log_snr_min + rng.uniform() * (config.log_snr_max - config.log_snr_min);
    const double srf = std::exp(lsrf);
    const double snr = std::exp(lsnr);

    const double omega = optimal_cutoff(k, v);
    const FourierGrid grid(omega, k);
    const double d_min = M_PI / (srf * omega);
    const double pi_min = 1.0 / static_cast<double>(k);
    const double sigma = pi_min / snr;

    std::vector<double> means(k);
    for (int i = 0; i < k; ++i)
        means[i] = (static_cast<double>(i) - 0.5 * (k - 1)) * d_min;
    const GaussianMixture model =
        make_mixture(means, std::vector<double>(k, pi_min), 2.0 * v);

    const FourierData data = synth_fourier(model, grid, sigma, child_seed(seed, 1));

    SvrConfig cfg;
    cfg.candidates = config.known_variance
                         ? std::vector<double>{v}
                         : make_candidates(config.v_grid_max, config.v_grid_step);
    cfg.threshold = config.threshold_scale * sigma;

    TrialRecord r;
    r.trial = trial;
    r.seed = seed;
    r.srf = srf;
    r.snr = snr;
    r.d_min = d_min;
    r.sigma = sigma;
    r.k_true = k;
    try {
        const SvrEstimate est = estimate_fourier(data, cfg);
        r.k_hat = est.k_hat;
        r.v_hat = est.v_hat;
    } catch (const EstimationError&) {
        r.k_hat = 0;
        r.v_hat = 0.0;
    }
    r.success = (r.k_hat == k);
    r.runtime_ms = ms_since(t0);
    return r;
}

std::vector<TrialRecord> phase_transition(const PhaseConfig& config) {
    if (config.k < 2 || config.k > 3) throw ConfigError("diagram supports k in {2, 3}");
    if (config.trials < 1) throw ConfigError("need at least one trial");
    std::vector<TrialRecord> records(config.trials);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(config.trials); ++t)
        records[t] = phase_trial(config, t);
    return records;
}

LogisticFit fit_transition_slope(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw ConfigError("no records to fit");
    const std::size_t n = records.size();
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = std::log(records[i].srf);
        x(i, 2) = std::log(records[i].snr);
        y(i) = records[i].success ? 1.0 : 0.0;
    }

    const double ridge = 1e-3;
    Eigen::Vector3d w = Eigen::Vector3d::Zero();
    LogisticFit fit;
    for (int it = 0; it < 100; ++it) {
        const Eigen::VectorXd eta = x * w;
        Eigen::VectorXd p(n), wt(n);
        for (std::size_t i = 0; i < n; ++i) {
            p(i) = 1.0 / (1.0 + std::exp(-eta(i)));
            wt(i) = std::max(p(i) * (1.0 - p(i)), 1e-9);
        }
        const Eigen::Matrix3d h =
            x.transpose() * wt.asDiagonal() * x + ridge * Eigen::Matrix3d::Identity();
        const Eigen::Vector3d g = x.transpose() * (y - p) - ridge * w;
        const Eigen::Vector3d delta = h.ldlt().solve(g);
        w += delta;
        fit.iterations = it + 1;
        if (delta.norm() < 1e-10) break;
    }
    fit.intercept = w(0);
    fit.coef_log_srf = w(1);
    fit.coef_log_snr = w(2);
    fit.boundary_slope = std::abs(w(2)) > 1e-12
                             ? -w(1) / w(2)
                             : std::numeric_limits<double>::infinity();
    return fit;
}

std::vector<double> success_by_snr_bin(const std::vector<TrialRecord>& records,
                                       double log_snr_min, double log_snr_max, int bins) {
    if (bins < 1 || !(log_snr_max > log_snr_min)) throw ConfigError("bad bin layout");
    std::vector<double> hit(bins, 0.0), count(bins, 0.0);
    for (const TrialRecord& r : records) {
        const double z = (std::log(r.snr) - log_snr_min) / (log_snr_max - log_snr_min);
        int b = static_cast<int>(z * bins);
        b = std::max(0, std::min(bins - 1, b));
        count[b] += 1.0;
        if (r.success) hit[b] += 1.0;
    }
    std::vector<double> rate(bins);
    for (int b = 0; b < bins; ++b)
        rate[b] = count[b] > 0.0 ? hit[b] / count[b]
                                 : std::numeric_limits<double>::quiet_NaN();
    return rate;
}

namespace {

struct Protocol {
    int half_count;
    double omega_init;
    int bisection_t;
    double v_max;
    double v_step;
    double em_tol;
    int em_max_iter;
    int known_order;
};

struct PairOutcome {
    CompareRow proposed;
    CompareRow em;
    bool order_success = false;
};

PairOutcome run_pair(const GaussianMixture& truth, std::size_t n, std::uint64_t base,
                     const Protocol& proto, std::optional<double> order_threshold_scale) {
    const SampleSet samples = sample_mixture(truth, n, child_seed(base, 0));
    const MixingDistribution truth_mix = mixing_distribution(truth);

    PairOutcome out;

    auto t0 = std::chrono::steady_clock::now();
    const double omega = cutoff_search(samples, proto.bisection_t, proto.omega_init);
    const FourierGrid grid(omega, proto.half_count);
    const FourierData data = ecf(samples, grid);
    PipelineConfig pc;
    pc.svr.candidates = make_candidates(proto.v_max, proto.v_step);
    pc.svr.known_order = proto.known_order;
    const EstimationResult res = estimate_fourier_full(data, pc);
    const double wall_proposed = ms_since(t0);

    const Scorecard sc_p = scorecard(res.mixture(), samples.values);
    out.proposed.n = n;
    out.proposed.method = "proposed";
    out.proposed.var_rel_err = relative_error(res.s2_hat, truth.variance_s2);
    out.proposed.w1 = wasserstein1(res.mixing(), truth_mix);
    out.proposed.runtime_ms = wall_proposed;
    out.proposed.loglik = sc_p.loglik;
    out.proposed.aic = sc_p.aic;
    out.proposed.bic = sc_p.bic;

    t0 = std::chrono::steady_clock::now();
    EmFit fit;
    bool fitted = false;
    for (std::uint64_t attempt = 0; attempt < 3 && !fitted; ++attempt) {
        try {
            EmConfig ec;
            ec.order = truth.order();
            ec.tol = proto.em_tol;
            ec.max_iter = proto.em_max_iter;
            ec.seed = child_seed(base, 1 + attempt);
            fit = em_fit(samples.values, ec);
            fitted = true;
        } catch (const EstimationError&) {
            if (attempt == 2) throw;
        }
    }
    const double wall_em = ms_since(t0);

    const Scorecard sc_e = scorecard(fit.model, samples.values);
    out.em.n = n;
    out.em.method = "em";
    out.em.var_rel_err = relative_error(fit.model.variance_s2, truth.variance_s2);
    out.em.w1 = wasserstein1(mixing_distribution(fit.model), truth_mix);
    out.em.runtime_ms = wall_em;
    out.em.loglik = sc_e.loglik;
    out.em.aic = sc_e.aic;
    out.em.bic = sc_e.bic;

    if (order_threshold_scale) {
        SvrConfig oc;
        oc.candidates = pc.svr.candidates;
        oc.threshold = threshold_for_samples(*order_threshold_scale, n);
        try {
            out.order_success = (estimate_fourier(data, oc).k_hat == truth.order());
        } catch (const EstimationError&) {
            out.order_success = false;
        }
    }
    return out;
}

}  // namespace

CompareResult compare_em(const CompareConfig& config) {
    if (config.model.means.empty()) throw ConfigError("comparison needs a model");
    if (config.n_list.empty() || config.trials < 1)
        throw ConfigError("comparison needs sample sizes and trials");

    const Protocol proto{config.half_count, config.omega_init,  config.bisection_t,
                         config.v_max,      config.v_step,      config.em_tol,
                         config.em_max_iter, config.model.order()};

    const std::size_t total = config.n_list.size() * config.trials;
    CompareResult result;
    result.rows.resize(2 * total);
    result.order.resize(total);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(total); ++f) {
        const std::size_t ni = f / config.trials;
        const std::size_t t = f % config.trials;
        const std::uint64_t base = child_seed(config.seed, f);
        PairOutcome pair = run_pair(config.model, config.n_list[ni], base, proto,
                                    config.order_threshold_scale);
        pair.proposed.trial = t;
        pair.em.trial = t;
        result.order[f] = {config.n_list[ni], t, pair.order_success};
        result.rows[2 * f] = std::move(pair.proposed);
        result.rows[2 * f + 1] = std::move(pair.em);
    }
    return result;
}

std::vector<CompareRow> separation_sweep(const SweepConfig& config) {
    if (config.separations.empty() || config.trials < 1 || config.n == 0)
        throw ConfigError("sweep needs separations, trials and a sample size");

    const Protocol proto{config.half_count, config.omega_init,  config.bisection_t,
                         config.v_max,      config.v_step,      config.em_tol,
                         config.em_max_iter, 2};

    const std::size_t total = config.separations.size() * config.trials;
    std::vector<CompareRow> rows(2 * total);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(total); ++f) {
        const std::size_t si = f / config.trials;
        const std::size_t t = f % config.trials;
        const double sep = config.separations[si];
        const GaussianMixture truth =
            make_mixture({-0.5 * sep, 0.5 * sep}, {0.5, 0.5}, 1.0);
        const std::uint64_t base = child_seed(config.seed, f);
        PairOutcome pair = run_pair(truth, config.n, base, proto, std::nullopt);
        for (CompareRow* row : {&pair.proposed, &pair.em}) {
            row->separation = sep;
            row->trial = t;
        }
        rows[2 * f] = std::move(pair.proposed);
        rows[2 * f + 1] = std::move(pair.em);
    }
    return rows;
}

}  // namespace mixfourier

#include "mixfourier/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "mixfourier/errors.hpp"

namespace mixfourier {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<double> read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sample file: " + path);
    std::vector<double> xs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t a = 0, b = line.size();
        while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
        if (a == b) continue;
        const std::string tok = line.substr(a, b - a);
        char* end = nullptr;
        const double x = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size())
            throw ConfigError("bad number at line " + std::to_string(lineno) + " of " + path);
        xs.push_back(x);
    }
    return xs;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
    if (!out) throw ConfigError("write failed: " + path);
}

std::string fourier_csv(const FourierData& data) {
    std::ostringstream os;
    os << "q,omega,re,im\n";
    const int K = data.grid.half_count();
    for (int q = -K; q <= K; ++q)
        os << q << ',' << format_double(data.grid.omega(q)) << ','
           << format_double(data.at(q).real()) << ',' << format_double(data.at(q).imag())
           << '\n';
    return os.str();
}

std::string surface_csv(const SvrSurface& surface, double threshold) {
    std::ostringstream os;
    os << "u,l,ratio,passes_threshold\n";
    for (std::size_t i = 0; i < surface.candidates.size(); ++i)
        for (int l = 1; l <= surface.half_count; ++l)
            os << format_double(surface.candidates[i]) << ',' << l << ','
               << format_double(surface.ratio[i][l - 1]) << ','
               << (surface.sigma[i][l - 1] > threshold ? 1 : 0) << '\n';
    return os.str();
}

std::string phase_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream os;
    os << "trial,seed,srf,snr,d_min,sigma,k_true,k_hat,v_hat,success\n";
    for (const TrialRecord& r : records)
        os << r.trial << ',' << r.seed << ',' << format_double(r.srf) << ','
           << format_double(r.snr) << ',' << format_double(r.d_min) << ','
           << format_double(r.sigma) << ',' << r.k_true << ',' << r.k_hat << ','
           << format_double(r.v_hat) << ',' << (r.success ? 1 : 0) << '\n';
    return os.str();
}

std::string compare_csv(const std::vector<CompareRow>& rows, bool with_separation) {
    std::ostringstream os;
    if (with_separation) os << "separation,";
    os << "n,trial,method,var_rel_err,w1,runtime_ms,loglik,aic,bic\n";
    for (const CompareRow& r : rows) {
        if (with_separation) os << format_double(r.separation) << ',';
        os << r.n << ',' << r.trial << ',' << r.method << ','
           << format_double(r.var_rel_err) << ',' << format_double(r.w1) << ','
           << format_double(r.runtime_ms) << ',' << format_double(r.loglik) << ','
           << format_double(r.aic) << ',' << format_double(r.bic) << '\n';
    }
    return os.str();
}

ordered_json estimation_json(const EstimationResult& result) {
    ordered_json j;
    j["v_hat"] = result.v_hat;
    j["s2_hat"] = result.s2_hat;
    j["k_hat"] = result.k_hat;
    j["means"] = result.means;
    j["weights"] = result.weights;
    j["ratio"] = result.ratio;
    j["merged_means"] = result.merged_means;
    j["order_rejected"] = result.order_rejected;
    return j;
}

ordered_json phase_summary_json(const std::vector<TrialRecord>& records, const LogisticFit& fit,
                                const PhaseConfig& config) {
    double rate = 0.0;
    for (const TrialRecord& r : records) rate += r.success ? 1.0 : 0.0;
    rate /= static_cast<double>(records.size());

    ordered_json j;
    j["k"] = config.k;
    j["trials"] = records.size();
    j["known_variance"] = config.known_variance;
    j["seed"] = config.seed;
    j["log_srf_range"] = {config.log_srf_min, config.log_srf_max};
    j["log_snr_range"] = {config.log_snr_min, config.log_snr_max};
    j["success_rate"] = rate;
    j["slope"] = {{"intercept", fit.intercept},
                  {"coef_log_srf", fit.coef_log_srf},
                  {"coef_log_snr", fit.coef_log_snr},
                  {"boundary_slope", fit.boundary_slope}};
    j["success_by_snr_bin"] =
        success_by_snr_bin(records, config.log_snr_min, config.log_snr_max, 5);
    return j;
}

ordered_json compare_summary_json(const std::vector<CompareRow>& rows) {
    // group key: (separation bits, n); insertion-ordered by first appearance
    struct Group {
        double separation;
        std::size_t n;
        std::vector<double> ll_p, ll_e, aic_p, aic_e, bic_p, bic_e;
        std::vector<double> var_p, var_e, w1_p, w1_e, rt_p, rt_e;
    };
    std::vector<Group> groups;
    auto find_group = [&](double sep, std::size_t n) -> Group& {
        for (Group& g : groups) {
            const bool same_sep =
                (std::isnan(sep) && std::isnan(g.separation)) || sep == g.separation;
            if (same_sep && g.n == n) return g;
        }
        groups.push_back(Group{sep, n, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}});
        return groups.back();
    };
    for (const CompareRow& r : rows) {
        Group& g = find_group(r.separation, r.n);
        const bool em = r.method == "em";
        (em ? g.ll_e : g.ll_p).push_back(r.loglik);
        (em ? g.aic_e : g.aic_p).push_back(r.aic);
        (em ? g.bic_e : g.bic_p).push_back(r.bic);
        (em ? g.var_e : g.var_p).push_back(r.var_rel_err);
        (em ? g.w1_e : g.w1_p).push_back(r.w1);
        (em ? g.rt_e : g.rt_p).push_back(r.runtime_ms);
    }

    ordered_json out = ordered_json::array();
    for (const Group& g : groups) {
        ordered_json j;
        if (!std::isnan(g.separation)) j["separation"] = g.separation;
        j["n"] = g.n;
        j["proposed"] = {{"mean_loglik", mean(g.ll_p)},
                         {"mean_aic", mean(g.aic_p)},
                         {"mean_bic", mean(g.bic_p)},
                         {"median_var_rel_err", median(g.var_p)},
                         {"median_w1", median(g.w1_p)},
                         {"mean_runtime_ms", mean(g.rt_p)}};
        j["em"] = {{"mean_loglik", mean(g.ll_e)},
                   {"mean_aic", mean(g.aic_e)},
                   {"mean_bic", mean(g.bic_e)},
                   {"median_var_rel_err", median(g.var_e)},
                   {"median_w1", median(g.w1_e)},
                   {"mean_runtime_ms", mean(g.rt_e)}};
        // differences oriented as EM minus proposed
        j["delta"] = {{"loglik", mean(g.ll_e) - mean(g.ll_p)},
                      {"aic", mean(g.aic_e) - mean(g.aic_p)},
                      {"bic", mean(g.bic_e) - mean(g.bic_p)}};
        out.push_back(std::move(j));
    }
    return out;
}

ordered_json mixture_json(const GaussianMixture& m) {
    ordered_json j;
    j["means"] = m.means;
    j["weights"] = m.weights;
    j["variance"] = m.variance_s2;
    return j;
}

GaussianMixture mixture_from_json(const ordered_json& j) {
    if (!j.contains("means") || !j.contains("weights") || !j.contains("variance"))
        throw ConfigError("model JSON needs means, weights, variance");
    return make_mixture(j.at("means").get<std::vector<double>>(),
                        j.at("weights").get<std::vector<double>>(),
                        j.at("variance").get<double>());
}

}  // namespace mixfourier

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mixfourier/experiments.hpp"
#include "mixfourier/pipeline.hpp"

namespace mixfourier {

using ordered_json = nlohmann::ordered_json;

// 17 significant digits, round-trip safe, locale independent.
std::string format_double(double x);

// One float per line; blank lines skipped. Throws ConfigError naming the path
// on a missing file or an unparsable line.
std::vector<double> read_sample_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

// CSV emitters: comma separated, header row, LF endings, 17-digit floats.
std::string fourier_csv(const FourierData& data);
std::string surface_csv(const SvrSurface& surface, double threshold);
std::string phase_csv(const std::vector<TrialRecord>& records);
std::string compare_csv(const std::vector<CompareRow>& rows, bool with_separation);

// JSON payloads with stable key order.
ordered_json estimation_json(const EstimationResult& result);
ordered_json phase_summary_json(const std::vector<TrialRecord>& records, const LogisticFit& fit,
                                const PhaseConfig& config);
ordered_json compare_summary_json(const std::vector<CompareRow>& rows);
ordered_json mixture_json(const GaussianMixture& m);
GaussianMixture mixture_from_json(const ordered_json& j);

}  // namespace mixfourier

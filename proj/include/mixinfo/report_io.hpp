#pragma once

#include <string>

#include <json.hpp>

#include "mixinfo/dqm.hpp"
#include "mixinfo/lecam.hpp"
#include "mixinfo/projection.hpp"

namespace mixinfo {

using ordered_json = nlohmann::ordered_json;

// Extended projection diagnostics emitted by the `project` command.
struct ProjectReport {
    InfoReport info;
    double pythagoras_residual = 0.0;
    double theta2 = 0.0;  // second parameter of the sufficiency witness
    double witness = 0.0;
    double cond_score_max_gap = 0.0;

    bool operator==(const ProjectReport&) const = default;
};

// All emitters are byte-deterministic: JSON keys in the documented fixed order
// with shortest round-trip number literals; CSV with 17 significant digits,
// '.' decimal point, no locale influence.

ordered_json dqm_to_json(const DqmReport& rep);
DqmReport dqm_from_json(const ordered_json& j);
std::string dqm_to_csv(const DqmReport& rep);

ordered_json info_to_json(const InfoReport& rep);
InfoReport info_from_json(const ordered_json& j);
std::string info_to_csv(const InfoReport& rep);

ordered_json project_to_json(const ProjectReport& rep);
ProjectReport project_from_json(const ordered_json& j);
std::string project_to_csv(const ProjectReport& rep);

ordered_json sim_to_json(const SimConfig& config, const SimResult& result);
// Returns the config echo and result parsed back from the document.
std::pair<SimConfig, SimResult> sim_from_json(const ordered_json& j);
std::string sim_to_csv(const SimConfig& config, const SimResult& result);

ordered_json gaplimit_to_json(const SimConfig& config, const GapLimitReport& rep);
std::pair<SimConfig, GapLimitReport> gaplimit_from_json(const ordered_json& j);
std::string gaplimit_to_csv(const SimConfig& config, const GapLimitReport& rep);

ordered_json tv_to_json(const ModelParams& params, double theta, std::uint64_t seed,
                        const TvDecayReport& rep);
TvDecayReport tv_from_json(const ordered_json& j);
std::string tv_to_csv(const ModelParams& params, double theta, std::uint64_t seed,
                      const TvDecayReport& rep);

// 17-significant-digit, locale-independent rendering used by the CSV writers.
std::string format_number(double v);

// Writes content to path, or to stdout when path is "-"; Error on failure.
void write_report(const std::string& path, const std::string& content);

}  // namespace mixinfo

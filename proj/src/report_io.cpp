#include "mixinfo/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mixinfo/errors.hpp"

namespace mixinfo {

namespace {

ordered_json fit_to_json(const PowerLawFit& fit) {
    ordered_json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    j["points_used"] = fit.points_used;
    return j;
}

PowerLawFit fit_from_json(const ordered_json& j) {
    PowerLawFit fit;
    fit.slope = j.at("slope").get<double>();
    fit.intercept = j.at("intercept").get<double>();
    fit.r_squared = j.at("r_squared").get<double>();
    fit.points_used = j.at("points_used").get<std::size_t>();
    return fit;
}

// Shared "model, alpha, beta, theta" prefix of every report.
void put_header(ordered_json& j, const ModelParams& params, double theta) {
    j["model"] = family_name(params.family);
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["theta"] = theta;
}

ModelParams params_from_json(const ordered_json& j) {
    ModelParams p;
    p.family = family_from_name(j.at("model").get<std::string>());
    p.alpha = j.at("alpha").get<double>();
    p.beta = j.at("beta").get<double>();
    return p;
}

std::string csv_header(const ModelParams& params, double theta) {
    std::ostringstream os;
    os << family_name(params.family) << ',' << format_number(params.alpha) << ','
       << format_number(params.beta) << ',' << format_number(theta);
    return os.str();
}

const char* bool_word(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

ordered_json dqm_to_json(const DqmReport& rep) {
    ordered_json j;
    put_header(j, rep.params, rep.theta);
    j["t_grid"] = rep.t_grid;
    j["singular_mass"] = rep.singular_mass;
    j["remainder_l2"] = rep.remainder_l2;
    j["score_l2"] = rep.score_l2;
    j["singular_slope"] = rep.singular_slope ? fit_to_json(*rep.singular_slope)
                                             : ordered_json(nullptr);
    j["remainder_slope"] = fit_to_json(rep.remainder_slope);
    j["pass"] = ordered_json::array({rep.pass_i, rep.pass_ii, rep.pass_iii});
    return j;
}

DqmReport dqm_from_json(const ordered_json& j) {
    DqmReport rep;
    rep.params = params_from_json(j);
    rep.theta = j.at("theta").get<double>();
    rep.t_grid = j.at("t_grid").get<std::vector<double>>();
    rep.singular_mass = j.at("singular_mass").get<std::vector<double>>();
    rep.remainder_l2 = j.at("remainder_l2").get<std::vector<double>>();
    rep.score_l2 = j.at("score_l2").get<double>();
    if (!j.at("singular_slope").is_null())
        rep.singular_slope = fit_from_json(j.at("singular_slope"));
    rep.remainder_slope = fit_from_json(j.at("remainder_slope"));
    const auto& pass = j.at("pass");
    if (!pass.is_array() || pass.size() != 3)
        throw Error("dqm_from_json: pass must be an array of three booleans");
    rep.pass_i = pass[0].get<bool>();
    rep.pass_ii = pass[1].get<bool>();
    rep.pass_iii = pass[2].get<bool>();
    return rep;
}

std::string dqm_to_csv(const DqmReport& rep) {
    std::ostringstream os;
    os << "t,singular_mass,remainder_l2\n";
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i)
        os << format_number(rep.t_grid[i]) << ',' << format_number(rep.singular_mass[i]) << ','
           << format_number(rep.remainder_l2[i]) << '\n';
    // Footer rows: label, singular column, remainder column.
    const auto& s = rep.singular_slope;
    os << "slope," << (s ? format_number(s->slope) : "") << ','
       << format_number(rep.remainder_slope.slope) << '\n';
    os << "intercept," << (s ? format_number(s->intercept) : "") << ','
       << format_number(rep.remainder_slope.intercept) << '\n';
    os << "r_squared," << (s ? format_number(s->r_squared) : "") << ','
       << format_number(rep.remainder_slope.r_squared) << '\n';
    os << "points_used," << (s ? std::to_string(s->points_used) : "") << ','
       << rep.remainder_slope.points_used << '\n';
    os << "score_l2," << format_number(rep.score_l2) << ",\n";
    os << "pass_i," << bool_word(rep.pass_i) << ",\n";
    os << "pass_ii," << bool_word(rep.pass_ii) << ",\n";
    os << "pass_iii," << bool_word(rep.pass_iii) << ",\n";
    return os.str();
}

ordered_json info_to_json(const InfoReport& rep) {
    ordered_json j;
    put_header(j, rep.params, rep.theta);
    j["info_P"] = rep.info_P;
    j["info_Q"] = rep.info_Q;
    j["defect"] = rep.defect;
    j["preserved"] = rep.preserved;
    return j;
}

InfoReport info_from_json(const ordered_json& j) {
    InfoReport rep;
    rep.params = params_from_json(j);
    rep.theta = j.at("theta").get<double>();
    rep.info_P = j.at("info_P").get<double>();
    rep.info_Q = j.at("info_Q").get<double>();
    rep.defect = j.at("defect").get<double>();
    rep.preserved = j.at("preserved").get<bool>();
    return rep;
}

std::string info_to_csv(const InfoReport& rep) {
    std::ostringstream os;
    os << "model,alpha,beta,theta,info_P,info_Q,defect,preserved\n";
    os << csv_header(rep.params, rep.theta) << ',' << format_number(rep.info_P) << ','
       << format_number(rep.info_Q) << ',' << format_number(rep.defect) << ','
       << bool_word(rep.preserved) << '\n';
    return os.str();
}

ordered_json project_to_json(const ProjectReport& rep) {
    ordered_json j = info_to_json(rep.info);
    j["pythagoras_residual"] = rep.pythagoras_residual;
    j["theta2"] = rep.theta2;
    j["witness"] = rep.witness;
    j["cond_score_max_gap"] = rep.cond_score_max_gap;
    return j;
}

ProjectReport project_from_json(const ordered_json& j) {
    ProjectReport rep;
    rep.info = info_from_json(j);
    rep.pythagoras_residual = j.at("pythagoras_residual").get<double>();
    rep.theta2 = j.at("theta2").get<double>();
    rep.witness = j.at("witness").get<double>();
    rep.cond_score_max_gap = j.at("cond_score_max_gap").get<double>();
    return rep;
}

std::string project_to_csv(const ProjectReport& rep) {
    std::ostringstream os;
    os << "model,alpha,beta,theta,info_P,info_Q,defect,preserved,pythagoras_residual,theta2,"
          "witness,cond_score_max_gap\n";
    os << csv_header(rep.info.params, rep.info.theta) << ',' << format_number(rep.info.info_P)
       << ',' << format_number(rep.info.info_Q) << ',' << format_number(rep.info.defect) << ','
       << bool_word(rep.info.preserved) << ',' << format_number(rep.pythagoras_residual) << ','
       << format_number(rep.theta2) << ',' << format_number(rep.witness) << ','
       << format_number(rep.cond_score_max_gap) << '\n';
    return os.str();
}

namespace {

// The config echo deliberately omits `threads`: thread count never changes a
// result, and reports must be byte-identical across thread counts. Parsers
// return it at its default.
void put_sim_config(ordered_json& j, const SimConfig& config, bool mle_fields) {
    put_header(j, config.params, config.theta);
    j["n"] = config.n;
    j["replicates"] = config.replicates;
    j["seed"] = config.seed;
    if (mle_fields) {
        j["mle_grid"] = config.mle_grid;
        j["mle_refinements"] = config.mle_refinements;
    }
}

SimConfig sim_config_from_json(const ordered_json& j, bool mle_fields) {
    SimConfig config;
    config.params = params_from_json(j);
    config.theta = j.at("theta").get<double>();
    config.n = j.at("n").get<std::size_t>();
    config.replicates = j.at("replicates").get<std::size_t>();
    config.seed = j.at("seed").get<std::uint64_t>();
    if (mle_fields) {
        config.mle_grid = j.at("mle_grid").get<int>();
        config.mle_refinements = j.at("mle_refinements").get<int>();
    }
    return config;
}

}  // namespace

ordered_json sim_to_json(const SimConfig& config, const SimResult& result) {
    ordered_json j;
    put_sim_config(j, config, /*mle_fields=*/true);
    j["replicate_count"] = result.replicate_count;
    j["a_n_count"] = result.a_n_count;
    j["a_n_frequency"] = result.a_n_frequency;
    j["mismatch_rate"] = result.mismatch_rate;
    j["sentinel_count"] = result.sentinel_count;
    j["error_count"] = result.error_count;
    j["sqrtn_errors"] = result.sqrtn_errors.sorted_values();
    j["gapL_scaled"] = result.gapL_scaled.sorted_values();
    j["gapR_scaled"] = result.gapR_scaled.sorted_values();
    return j;
}

std::pair<SimConfig, SimResult> sim_from_json(const ordered_json& j) {
    SimConfig config = sim_config_from_json(j, /*mle_fields=*/true);
    SimResult result;
    result.replicate_count = j.at("replicate_count").get<std::size_t>();
    result.a_n_count = j.at("a_n_count").get<std::size_t>();
    result.a_n_frequency = j.at("a_n_frequency").get<double>();
    result.mismatch_rate = j.at("mismatch_rate").get<double>();
    result.sentinel_count = j.at("sentinel_count").get<std::size_t>();
    result.error_count = j.at("error_count").get<std::size_t>();
    result.sqrtn_errors = EmpiricalDistribution(j.at("sqrtn_errors").get<std::vector<double>>());
    result.gapL_scaled = EmpiricalDistribution(j.at("gapL_scaled").get<std::vector<double>>());
    result.gapR_scaled = EmpiricalDistribution(j.at("gapR_scaled").get<std::vector<double>>());
    return {config, result};
}

std::string sim_to_csv(const SimConfig& config, const SimResult& result) {
    std::ostringstream os;
    os << "series,index,value\n";
    auto scalar = [&os](const char* name, const std::string& value) {
        os << name << ",," << value << '\n';
    };
    scalar("model", family_name(config.params.family));
    scalar("alpha", format_number(config.params.alpha));
    scalar("beta", format_number(config.params.beta));
    scalar("theta", format_number(config.theta));
    scalar("n", std::to_string(config.n));
    scalar("replicates", std::to_string(config.replicates));
    scalar("seed", std::to_string(config.seed));
    scalar("mle_grid", std::to_string(config.mle_grid));
    scalar("mle_refinements", std::to_string(config.mle_refinements));
    scalar("replicate_count", std::to_string(result.replicate_count));
    scalar("a_n_count", std::to_string(result.a_n_count));
    scalar("a_n_frequency", format_number(result.a_n_frequency));
    scalar("mismatch_rate", format_number(result.mismatch_rate));
    scalar("sentinel_count", std::to_string(result.sentinel_count));
    scalar("error_count", std::to_string(result.error_count));
    auto series = [&os](const char* name, const EmpiricalDistribution& dist) {
        const auto& vals = dist.sorted_values();
        for (std::size_t i = 0; i < vals.size(); ++i)
            os << name << ',' << i << ',' << format_number(vals[i]) << '\n';
    };
    series("sqrtn_errors", result.sqrtn_errors);
    series("gapL_scaled", result.gapL_scaled);
    series("gapR_scaled", result.gapR_scaled);
    return os.str();
}

ordered_json gaplimit_to_json(const SimConfig& config, const GapLimitReport& rep) {
    ordered_json j;
    put_sim_config(j, config, /*mle_fields=*/false);
    j["usable_replicates"] = rep.usable_replicates;
    j["sentinel_count"] = rep.sentinel_count;
    j["ks_L"] = rep.ks_L;
    j["ks_R"] = rep.ks_R;
    j["median_L"] = rep.median_L;
    j["median_R"] = rep.median_R;
    j["limit_median"] = rep.limit_median;
    j["two_sample_ks"] = rep.two_sample_ks;
    return j;
}

std::pair<SimConfig, GapLimitReport> gaplimit_from_json(const ordered_json& j) {
    SimConfig config = sim_config_from_json(j, /*mle_fields=*/false);
    GapLimitReport rep;
    rep.usable_replicates = j.at("usable_replicates").get<std::size_t>();
    rep.sentinel_count = j.at("sentinel_count").get<std::size_t>();
    rep.ks_L = j.at("ks_L").get<double>();
    rep.ks_R = j.at("ks_R").get<double>();
    rep.median_L = j.at("median_L").get<double>();
    rep.median_R = j.at("median_R").get<double>();
    rep.limit_median = j.at("limit_median").get<double>();
    rep.two_sample_ks = j.at("two_sample_ks").get<double>();
    return {config, rep};
}

std::string gaplimit_to_csv(const SimConfig& config, const GapLimitReport& rep) {
    std::ostringstream os;
    os << "model,alpha,beta,theta,n,replicates,seed,usable_replicates,sentinel_count,"
          "ks_L,ks_R,median_L,median_R,limit_median,two_sample_ks\n";
    os << csv_header(config.params, config.theta) << ',' << config.n << ',' << config.replicates
       << ',' << config.seed << ',' << rep.usable_replicates << ',' << rep.sentinel_count << ','
       << format_number(rep.ks_L) << ',' << format_number(rep.ks_R) << ','
       << format_number(rep.median_L) << ',' << format_number(rep.median_R) << ','
       << format_number(rep.limit_median) << ',' << format_number(rep.two_sample_ks) << '\n';
    return os.str();
}

ordered_json tv_to_json(const ModelParams& params, double theta, std::uint64_t seed,
                        const TvDecayReport& rep) {
    ordered_json j;
    put_header(j, params, theta);
    j["seed"] = seed;
    j["n_grid"] = rep.n_grid;
    j["replicates"] = rep.replicates;
    j["failures"] = rep.failures;
    j["estimates"] = rep.estimates;
    j["dropped"] = rep.dropped;
    j["slope"] = rep.slope;
    j["intercept"] = rep.intercept;
    j["points_used"] = rep.points_used;
    return j;
}

TvDecayReport tv_from_json(const ordered_json& j) {
    TvDecayReport rep;
    rep.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
    rep.replicates = j.at("replicates").get<std::size_t>();
    rep.failures = j.at("failures").get<std::vector<std::size_t>>();
    rep.estimates = j.at("estimates").get<std::vector<double>>();
    rep.dropped = j.at("dropped").get<std::vector<bool>>();
    rep.slope = j.at("slope").get<double>();
    rep.intercept = j.at("intercept").get<double>();
    rep.points_used = j.at("points_used").get<std::size_t>();
    return rep;
}

std::string tv_to_csv(const ModelParams& params, double theta, std::uint64_t seed,
                      const TvDecayReport& rep) {
    std::ostringstream os;
    os << "n,failures,replicates,estimate,dropped\n";
    for (std::size_t i = 0; i < rep.n_grid.size(); ++i)
        os << rep.n_grid[i] << ',' << rep.failures[i] << ',' << rep.replicates << ','
           << format_number(rep.estimates[i]) << ',' << bool_word(rep.dropped[i]) << '\n';
    os << "model," << family_name(params.family) << ",,,\n";
    os << "alpha," << format_number(params.alpha) << ",,,\n";
    os << "beta," << format_number(params.beta) << ",,,\n";
    os << "theta," << format_number(theta) << ",,,\n";
    os << "seed," << seed << ",,,\n";
    os << "slope," << format_number(rep.slope) << ",,,\n";
    os << "intercept," << format_number(rep.intercept) << ",,,\n";
    os << "points_used," << rep.points_used << ",,,\n";
    return os.str();
}

void write_report(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw Error("write_report: failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_report: cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write_report: failed writing to '" + path + "'");
}

}  // namespace mixinfo

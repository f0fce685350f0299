#include "mixinfo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>

#include <CLI11.hpp>

#include "mixinfo/dqm.hpp"
#include "mixinfo/errors.hpp"
#include "mixinfo/lecam.hpp"
#include "mixinfo/projection.hpp"
#include "mixinfo/report_io.hpp"

namespace mixinfo {

namespace {

struct Opts {
    std::string model;
    double theta = 0.0;
    double alpha = 0.4;
    double beta = 0.7;
    std::string format = "json";
    std::string output = "-";
    double tol = 1e-10;
    std::uint64_t seed = 0;

    std::vector<double> t_grid{0.4, 0.2, 0.1, 0.05};
    double slope_threshold = 2.0;

    double theta2 = 0.0;  // defaults to theta + 1 when the flag is absent

    std::uint64_t n = 2000;
    std::uint64_t replicates = 1000;
    int mle_grid = 512;
    int mle_refine = 60;
    int threads = 0;

    std::uint64_t gaps_n = 4000;
    std::uint64_t gaps_replicates = 4000;

    std::vector<std::uint64_t> n_grid{10, 20, 40, 80};
    std::uint64_t tv_replicates = 20000;
};

// Options shared by every subcommand. alpha/beta are recorded per subcommand so
// their presence can be rejected for families that do not take them.
struct CommonHandles {
    CLI::Option* alpha = nullptr;
    CLI::Option* beta = nullptr;
};

CommonHandles add_common(CLI::App* cmd, Opts& o) {
    cmd->add_option("--model", o.model, "Model family: ks, ks_variant or control")
        ->required()
        ->check(CLI::IsMember({"ks", "ks_variant", "control"}));
    cmd->add_option("--theta", o.theta, "Location parameter")
        ->capture_default_str()
        ->check(CLI::Number);
    CommonHandles h;
    h.alpha = cmd->add_option("--alpha", o.alpha, "ks_variant only: base mass of z=+1 in (0,1)")
                  ->capture_default_str();
    h.beta = cmd->add_option("--beta", o.beta,
                             "ks_variant only: weight of the correctly labeled side in (0,1)")
                 ->capture_default_str();
    cmd->add_option("--format", o.format, "Report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output,-o", o.output, "Output path, '-' for stdout")
        ->capture_default_str();
    return h;
}

void add_tol(CLI::App* cmd, Opts& o) {
    cmd->add_option("--tol", o.tol, "Quadrature tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

void add_seed(CLI::App* cmd, Opts& o) {
    cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
}

void add_mle(CLI::App* cmd, Opts& o) {
    cmd->add_option("--mle-grid", o.mle_grid, "Coarse grid size of the likelihood scan")
        ->capture_default_str()
        ->check(CLI::Range(3, std::numeric_limits<int>::max()));
    cmd->add_option("--mle-refine", o.mle_refine, "Golden-section refinement steps")
        ->capture_default_str()
        ->check(CLI::Range(0, std::numeric_limits<int>::max()));
}

void add_threads(CLI::App* cmd, Opts& o) {
    cmd->add_option("--threads", o.threads,
                    "Worker threads (<= 0: hardware concurrency); never affects results")
        ->capture_default_str();
}

ModelParams build_params(const Opts& o, const CommonHandles& h) {
    const Family family = family_from_name(o.model);
    if (family != Family::ks_variant && (h.alpha->count() > 0 || h.beta->count() > 0))
        throw CLI::ValidationError("--alpha/--beta apply to ks_variant only");
    if (family == Family::ks_variant) {
        if (!(o.alpha > 0.0 && o.alpha < 1.0))
            throw CLI::ValidationError("--alpha must lie strictly inside (0,1)");
        if (!(o.beta > 0.0 && o.beta < 1.0))
            throw CLI::ValidationError("--beta must lie strictly inside (0,1)");
        return ModelParams::ks_variant(o.alpha, o.beta);
    }
    return family == Family::ks ? ModelParams::ks() : ModelParams::control();
}

void emit(const Opts& o, const ordered_json& j, const std::string& csv) {
    write_report(o.output, o.format == "json" ? j.dump(2) + "\n" : csv);
}

int cmd_info(const Opts& o, const ModelParams& params) {
    const InfoReport rep = pythagoras_check(o.theta, params, o.tol);
    emit(o, info_to_json(rep), info_to_csv(rep));
    return 0;  // preserved=false is a finding, not a failure
}

int cmd_dqm(const Opts& o, const ModelParams& params) {
    const DqmReport rep = dqm_verify(o.theta, o.t_grid, params, o.slope_threshold, o.tol);
    emit(o, dqm_to_json(rep), dqm_to_csv(rep));
    int rc = 0;
    if (!rep.pass_i) {
        std::cerr << "dqm: condition (i) failed: singular mass is not o(t^2)\n";
        rc = 1;
    }
    if (!rep.pass_ii) {
        std::cerr << "dqm: condition (ii) failed: score is not square integrable\n";
        rc = 1;
    }
    if (!rep.pass_iii) {
        std::cerr << "dqm: condition (iii) failed: expansion remainder is not o(t^2)\n";
        rc = 1;
    }
    return rc;
}

int cmd_project(const Opts& o, const ModelParams& params, bool theta2_given) {
    ProjectReport rep;
    rep.info = pythagoras_check(o.theta, params, o.tol);
    rep.pythagoras_residual =
        std::fabs(rep.info.info_P - (rep.info.info_Q + rep.info.defect));
    rep.theta2 = theta2_given ? o.theta2 : o.theta + 1.0;
    rep.witness = sufficiency_witness(o.theta, rep.theta2, params);
    rep.cond_score_max_gap = cond_score_max_gap(o.theta, params, 200, o.seed);
    emit(o, project_to_json(rep), project_to_csv(rep));
    return 0;
}

SimConfig build_sim_config(const Opts& o, const ModelParams& params, std::uint64_t n,
                           std::uint64_t replicates) {
    SimConfig cfg;
    cfg.params = params;
    cfg.theta = o.theta;
    cfg.n = static_cast<std::size_t>(n);
    cfg.replicates = static_cast<std::size_t>(replicates);
    cfg.seed = o.seed;
    cfg.mle_grid = o.mle_grid;
    cfg.mle_refinements = o.mle_refine;
    cfg.threads = o.threads;
    return cfg;
}

int cmd_simulate(const Opts& o, const ModelParams& params) {
    const SimConfig cfg = build_sim_config(o, params, o.n, o.replicates);
    const SimResult res = simulate(cfg);
    emit(o, sim_to_json(cfg, res), sim_to_csv(cfg, res));
    if (res.error_count > 0) {
        std::cerr << "simulate: " << res.error_count << " replicate(s) dropped by errors\n";
        return 1;
    }
    return 0;
}

int cmd_gaps(const Opts& o, const ModelParams& params) {
    const SimConfig cfg = build_sim_config(o, params, o.gaps_n, o.gaps_replicates);
    const GapLimitReport rep = gap_limit_report(cfg);
    emit(o, gaplimit_to_json(cfg, rep), gaplimit_to_csv(cfg, rep));
    return 0;
}

int cmd_tvrate(const Opts& o, const ModelParams& params) {
    std::vector<std::size_t> n_grid(o.n_grid.begin(), o.n_grid.end());
    const TvDecayReport rep =
        tv_decay_fit(o.theta, n_grid, static_cast<std::size_t>(o.tv_replicates), o.seed, params,
                     o.mle_grid, o.mle_refine, o.threads);
    emit(o, tv_to_json(params, o.theta, o.seed, rep), tv_to_csv(params, o.theta, o.seed, rep));
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
    CLI::App app{"Fisher-information laboratory for a labeled location mixture"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read options from a key=value file ([section] per subcommand); "
                   "flags override the file");

    Opts o;

    CLI::App* info = app.add_subcommand(
        "info", "Fisher information of the full and the y-only experiment");
    const CommonHandles info_h = add_common(info, o);
    add_tol(info, o);

    CLI::App* dqm = app.add_subcommand(
        "dqm", "Certify differentiability in quadratic mean on a |t| grid");
    const CommonHandles dqm_h = add_common(dqm, o);
    add_tol(dqm, o);
    dqm->add_option("--t-grid", o.t_grid, "Comma-separated |t| grid, each in (0,1]")
        ->capture_default_str()
        ->delimiter(',');
    dqm->add_option("--slope-threshold", o.slope_threshold,
                    "Fitted log-log slope certifying o(t^2)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    CLI::App* project = app.add_subcommand(
        "project", "Score projection diagnostics and the sufficiency witness");
    const CommonHandles project_h = add_common(project, o);
    add_tol(project, o);
    add_seed(project, o);
    CLI::Option* theta2_opt =
        project->add_option("--theta2", o.theta2,
                            "Second parameter of the sufficiency witness (default theta+1)");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Replicated product experiment: MLE, gaps, reconstruction event");
    const CommonHandles simulate_h = add_common(simulate, o);
    add_seed(simulate, o);
    simulate->add_option("--n", o.n, "Sample size per replicate")
        ->capture_default_str()
        ->check(CLI::Range(std::uint64_t{2}, std::numeric_limits<std::uint64_t>::max()));
    simulate->add_option("--replicates", o.replicates, "Number of replicates")
        ->capture_default_str()
        ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
    add_mle(simulate, o);
    add_threads(simulate, o);

    CLI::App* gaps = app.add_subcommand(
        "gaps", "Scaled sign-boundary gaps against their cube-root limit law");
    const CommonHandles gaps_h = add_common(gaps, o);
    add_seed(gaps, o);
    gaps->add_option("--n", o.gaps_n, "Sample size per replicate")
        ->capture_default_str()
        ->check(CLI::Range(std::uint64_t{2}, std::numeric_limits<std::uint64_t>::max()));
    gaps->add_option("--replicates", o.gaps_replicates, "Number of replicates")
        ->capture_default_str()
        ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));

    CLI::App* tvrate = app.add_subcommand(
        "tvrate", "Decay rate of the reconstruction failure probability");
    const CommonHandles tvrate_h = add_common(tvrate, o);
    add_seed(tvrate, o);
    tvrate->add_option("--n-grid", o.n_grid, "Comma-separated increasing sample sizes")
        ->capture_default_str()
        ->delimiter(',');
    tvrate->add_option("--replicates", o.tv_replicates, "Replicates per sample size")
        ->capture_default_str()
        ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
    add_mle(tvrate, o);
    add_threads(tvrate, o);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));

        CLI::App* sub = app.get_subcommands().front();
        const CommonHandles& h = sub == info       ? info_h
                                 : sub == dqm      ? dqm_h
                                 : sub == project  ? project_h
                                 : sub == simulate ? simulate_h
                                 : sub == gaps     ? gaps_h
                                                   : tvrate_h;
        const ModelParams params = build_params(o, h);

        if (sub == dqm) {
            if (o.t_grid.size() < 3)
                throw CLI::ValidationError("--t-grid needs at least 3 entries");
            for (double t : o.t_grid)
                if (!(t > 0.0 && t <= 1.0))
                    throw CLI::ValidationError("--t-grid entries must lie in (0,1]");
        }
        if (sub == project && theta2_opt->count() > 0 && o.theta2 == o.theta)
            throw CLI::ValidationError("--theta2 must differ from --theta");
        if (sub == tvrate) {
            if (o.n_grid.size() < 3)
                throw CLI::ValidationError("--n-grid needs at least 3 entries");
            for (std::size_t i = 0; i < o.n_grid.size(); ++i) {
                if (o.n_grid[i] < 2)
                    throw CLI::ValidationError("--n-grid entries must be >= 2");
                if (i > 0 && o.n_grid[i] <= o.n_grid[i - 1])
                    throw CLI::ValidationError("--n-grid must be strictly increasing");
            }
        }

        try {
            if (sub == info) return cmd_info(o, params);
            if (sub == dqm) return cmd_dqm(o, params);
            if (sub == project) return cmd_project(o, params, theta2_opt->count() > 0);
            if (sub == simulate) return cmd_simulate(o, params);
            if (sub == gaps) return cmd_gaps(o, params);
            return cmd_tvrate(o, params);
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(std::move(args));
}

}  // namespace mixinfo

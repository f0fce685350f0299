#include "mixinfo/lecam.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include "mixinfo/errors.hpp"

namespace mixinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt 5 - 1) / 2

double log_h(const std::vector<double>& ys, double theta, const ModelParams& params) {
    double s = 0.0;
    switch (params.family) {
        case Family::ks:
            // log h = 2 log|d| - |d| - log 4; the constant cannot move the argmax.
            for (double y : ys) {
                const double d = std::fabs(y - theta);
                s += 2.0 * std::log(d) - d;
            }
            return s;
        case Family::ks_variant: {
            const double a = params.alpha, b = params.beta;
            const double lc1 = std::log(a * b + (1.0 - a) * (1.0 - b));
            const double lc2 = std::log(a * (1.0 - b) + (1.0 - a) * b);
            for (double y : ys) {
                const double d = y - theta;
                const double ad = std::fabs(d);
                s += 2.0 * std::log(ad) - ad + (d > 0.0 ? lc1 : lc2);
            }
            return s;
        }
        default:
            for (double y : ys) {
                const double d = y - theta;
                s -= 0.5 * d * d;
            }
            return s;
    }
}

struct ReplicateOutcome {
    double sqrtn_err = 0.0;
    double gapL = 0.0;       // n^{1/3}(theta - y_L), NaN when y_L is a sentinel
    double gapR = 0.0;
    bool a_n = false;
    bool sentinel = false;
    int status = 0;          // 0 ok, 1 dropped by per-replicate error, 2 coupling violation
    std::string message;
};

}  // namespace

GapStats gap_stats(const std::vector<PointX>& sample) {
    if (sample.empty()) throw DomainError("gap_stats: empty sample");
    GapStats g{-kInf, kInf};
    for (const PointX& x : sample) {
        if (x.z == -1)
            g.y_L = std::max(g.y_L, x.y);
        else
            g.y_R = std::min(g.y_R, x.y);
    }
    return g;
}

double mle_Q(const std::vector<double>& ys, const ModelParams& params, int grid,
             int refinements) {
    validate_params(params);
    if (ys.size() < 2) throw DomainError("mle_Q: need at least 2 observations");
    if (grid < 3) throw DomainError("mle_Q: grid must have at least 3 points");
    if (refinements < 0) throw DomainError("mle_Q: refinements must be nonnegative");

    const auto [lo_it, hi_it] = std::minmax_element(ys.begin(), ys.end());
    const double lo = *lo_it - 8.0;
    const double hi = *hi_it + 8.0;
    const double step = (hi - lo) / static_cast<double>(grid - 1);

    // Coarse scan; strict > keeps the first (smallest-theta) maximizer.
    int best = -1;
    double best_ll = -kInf;
    for (int i = 0; i < grid; ++i) {
        const double th = lo + step * static_cast<double>(i);
        const double ll = log_h(ys, th, params);
        if (ll > best_ll) {
            best_ll = ll;
            best = i;
        }
    }
    if (best < 0) throw DomainError("mle_Q: log likelihood is -inf on the whole grid");

    double a = lo + step * static_cast<double>(std::max(0, best - 1));
    double b = lo + step * static_cast<double>(std::min(grid - 1, best + 1));

    // Golden-section ascent; >= sends exact ties toward the smaller theta.
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = log_h(ys, c, params);
    double fd = log_h(ys, d, params);
    for (int it = 0; it < refinements; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = log_h(ys, c, params);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = log_h(ys, d, params);
        }
    }
    return 0.5 * (a + b);
}

std::vector<int> reconstruct(const std::vector<double>& ys, double theta_hat) {
    std::vector<int> out;
    out.reserve(ys.size());
    for (double y : ys) {
        if (y == theta_hat) {
            std::ostringstream os;
            os << "reconstruct: y = " << y << " coincides exactly with theta_hat";
            throw DomainError(os.str());
        }
        out.push_back(y > theta_hat ? +1 : -1);
    }
    return out;
}

SimResult simulate(const SimConfig& config) {
    validate_params(config.params);
    if (config.params.family != Family::ks)
        throw DomainError(
            "simulate: the reconstruction coupling is specific to the ks family");
    if (config.n < 2) throw DomainError("simulate: n must be >= 2");
    if (config.replicates < 1) throw DomainError("simulate: replicates must be >= 1");

    const std::size_t R = config.replicates;
    const double root_n = std::sqrt(static_cast<double>(config.n));
    const double cube_n = std::cbrt(static_cast<double>(config.n));
    std::vector<ReplicateOutcome> slots(R);

    auto run_one = [&](std::size_t r) {
        ReplicateOutcome& out = slots[r];
        try {
            const std::vector<PointX> xs =
                sample_replicate(config.theta, config.n, config.seed, r, config.params);
            std::vector<double> ys;
            ys.reserve(xs.size());
            for (const PointX& x : xs) ys.push_back(x.y);

            const double th = mle_Q(ys, config.params, config.mle_grid, config.mle_refinements);
            const GapStats gaps = gap_stats(xs);
            const std::vector<int> zs = reconstruct(ys, th);

            bool match = true;
            for (std::size_t i = 0; i < xs.size(); ++i)
                if (zs[i] != xs[i].z) {
                    match = false;
                    break;
                }
            const bool a_n = gaps.y_L < th && th < gaps.y_R;
            if (a_n != match) {
                out.status = 2;
                std::ostringstream os;
                os << "coupling identity violated on replicate " << r << ": A_n = " << a_n
                   << " but sign match = " << match;
                out.message = os.str();
                return;
            }
            out.a_n = a_n;
            out.sqrtn_err = root_n * (th - config.theta);
            out.sentinel = !std::isfinite(gaps.y_L) || !std::isfinite(gaps.y_R);
            out.gapL = std::isfinite(gaps.y_L) ? cube_n * (config.theta - gaps.y_L)
                                               : std::numeric_limits<double>::quiet_NaN();
            out.gapR = std::isfinite(gaps.y_R) ? cube_n * (gaps.y_R - config.theta)
                                               : std::numeric_limits<double>::quiet_NaN();
        } catch (const ConsistencyError& e) {
            out.status = 2;
            out.message = e.what();
        } catch (const Error& e) {
            out.status = 1;
            out.message = e.what();
        }
    };

    int threads = config.threads;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(R)));

    if (threads == 1) {
        for (std::size_t r = 0; r < R; ++r) run_one(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t r = next.fetch_add(1); r < R; r = next.fetch_add(1)) run_one(r);
            });
        for (auto& th : pool) th.join();
    }

    // Sequential aggregation in replicate order: the only order-sensitive step.
    SimResult res;
    res.replicate_count = R;
    std::vector<double> errs, gl, gr;
    errs.reserve(R);
    gl.reserve(R);
    gr.reserve(R);
    for (std::size_t r = 0; r < R; ++r) {
        const ReplicateOutcome& out = slots[r];
        if (out.status == 2) throw ConsistencyError(out.message);
        if (out.status == 1) {
            ++res.error_count;
            continue;
        }
        if (out.a_n) ++res.a_n_count;
        if (out.sentinel) ++res.sentinel_count;
        errs.push_back(out.sqrtn_err);
        if (!std::isnan(out.gapL)) gl.push_back(out.gapL);
        if (!std::isnan(out.gapR)) gr.push_back(out.gapR);
    }
    const std::size_t usable = R - res.error_count;
    if (usable == 0) throw DomainError("simulate: every replicate failed");
    res.a_n_frequency = static_cast<double>(res.a_n_count) / static_cast<double>(usable);
    // Defined as the complement so the identity holds exactly in floating point;
    // the integer identity (mismatches = usable - a_n_count) is what the
    // per-replicate coupling assertion above guarantees.
    res.mismatch_rate = 1.0 - res.a_n_frequency;
    res.sqrtn_errors = EmpiricalDistribution(std::move(errs));
    res.gapL_scaled = EmpiricalDistribution(std::move(gl));
    res.gapR_scaled = EmpiricalDistribution(std::move(gr));
    return res;
}

double gap_limit_cdf(double u) {
    if (u <= 0.0) return 0.0;
    return 1.0 - std::exp(-u * u * u / 12.0);
}

GapLimitReport gap_limit_report(const SimConfig& config) {
    validate_params(config.params);
    if (config.params.family != Family::ks)
        throw DomainError("gap_limit_report: defined for the ks family only");
    if (config.n < 2) throw DomainError("gap_limit_report: n must be >= 2");
    if (config.replicates < 1) throw DomainError("gap_limit_report: replicates must be >= 1");

    // The gap statistics never look at the location estimate, so this loop skips
    // the per-replicate MLE entirely. Replicate r still draws from stream
    // (seed, r): the gaps here are bitwise the ones simulate() would see.
    const double cube_n = std::cbrt(static_cast<double>(config.n));
    std::vector<double> gl, gr;
    gl.reserve(config.replicates);
    gr.reserve(config.replicates);
    GapLimitReport rep;
    for (std::size_t r = 0; r < config.replicates; ++r) {
        const std::vector<PointX> xs =
            sample_replicate(config.theta, config.n, config.seed, r, config.params);
        const GapStats gaps = gap_stats(xs);
        if (!std::isfinite(gaps.y_L) || !std::isfinite(gaps.y_R)) ++rep.sentinel_count;
        if (std::isfinite(gaps.y_L)) gl.push_back(cube_n * (config.theta - gaps.y_L));
        if (std::isfinite(gaps.y_R)) gr.push_back(cube_n * (gaps.y_R - config.theta));
    }

    rep.usable_replicates = std::min(gl.size(), gr.size());
    if (rep.usable_replicates < 100) {
        std::ostringstream os;
        os << "gap_limit_report: only " << rep.usable_replicates
           << " usable replicates (need >= 100)";
        throw DomainError(os.str());
    }
    const EmpiricalDistribution gapL(std::move(gl));
    const EmpiricalDistribution gapR(std::move(gr));
    rep.ks_L = ks_distance(gapL, gap_limit_cdf);
    rep.ks_R = ks_distance(gapR, gap_limit_cdf);
    rep.median_L = gapL.median();
    rep.median_R = gapR.median();
    rep.limit_median = std::cbrt(12.0 * std::log(2.0));
    rep.two_sample_ks = ks_distance_two_sample(gapL, gapR);
    return rep;
}

double gap_limit_check(const SimConfig& config) { return gap_limit_report(config).ks_L; }

TvDecayReport tv_decay_fit(double theta, const std::vector<std::size_t>& n_grid,
                           std::size_t replicates, std::uint64_t seed, const ModelParams& params,
                           int mle_grid, int mle_refinements, int threads) {
    if (params.family != Family::ks)
        throw DomainError("tv_decay_fit: defined for the ks family only");
    if (n_grid.size() < 3) throw DomainError("tv_decay_fit: need at least 3 sample sizes");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw DomainError("tv_decay_fit: n grid must be strictly increasing");

    TvDecayReport rep;
    rep.n_grid = n_grid;
    rep.replicates = replicates;

    std::vector<double> xs, ys;
    for (std::size_t n : n_grid) {
        SimConfig cfg;
        cfg.params = params;
        cfg.theta = theta;
        cfg.n = n;
        cfg.replicates = replicates;
        cfg.seed = seed;
        cfg.mle_grid = mle_grid;
        cfg.mle_refinements = mle_refinements;
        cfg.threads = threads;
        const SimResult sim = simulate(cfg);
        const std::size_t usable = sim.replicate_count - sim.error_count;
        const std::size_t fails = usable - sim.a_n_count;
        rep.failures.push_back(fails);
        rep.estimates.push_back(sim.mismatch_rate);
        const bool drop = fails == 0;  // log of a zero estimate is undefined
        rep.dropped.push_back(drop);
        if (!drop) {
            xs.push_back(std::cbrt(static_cast<double>(n)));
            ys.push_back(std::log(sim.mismatch_rate));
        }
    }
    if (xs.size() < 3)
        throw DomainError("tv_decay_fit: fewer than 3 sample sizes had observable failures");
    const LinearFit fit = linear_fit(xs, ys);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.points_used = xs.size();
    return rep;
}

}  // namespace mixinfo

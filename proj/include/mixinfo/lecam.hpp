#pragma once

#include <cstdint>
#include <vector>

#include "mixinfo/models.hpp"
#include "mixinfo/numerics.hpp"

namespace mixinfo {

struct SimConfig {
    ModelParams params = ModelParams::ks();
    double theta = 0.0;
    std::size_t n = 2;
    std::size_t replicates = 1;
    std::uint64_t seed = 0;
    int mle_grid = 512;
    int mle_refinements = 60;
    int threads = 0;  // <= 0: use hardware concurrency; never affects the results

    bool operator==(const SimConfig&) const = default;
};

// Largest y with z = -1 and smallest y with z = +1 (-inf / +inf when a sign
// is absent from the sample).
struct GapStats {
    double y_L;
    double y_R;
};

struct SimResult {
    double a_n_frequency = 0.0;   // fraction of usable replicates with y_L < theta_hat < y_R
    double mismatch_rate = 0.0;   // fraction where the reconstructed signs differ; 1 - a_n_frequency
    EmpiricalDistribution sqrtn_errors;  // sqrt(n) * (theta_hat - theta)
    EmpiricalDistribution gapL_scaled;   // n^{1/3} * (theta - y_L), sentinel replicates excluded
    EmpiricalDistribution gapR_scaled;   // n^{1/3} * (y_R - theta), sentinel replicates excluded
    std::size_t replicate_count = 0;     // as configured
    std::size_t a_n_count = 0;           // integer numerator behind a_n_frequency
    std::size_t sentinel_count = 0;      // replicates whose sample had only one sign
    std::size_t error_count = 0;         // replicates dropped by a per-replicate error

    bool operator==(const SimResult&) const = default;
};

GapStats gap_stats(const std::vector<PointX>& sample);

// Maximizer of the y-only log likelihood over [min y - 8, max y + 8]: coarse
// grid scan (sample abscissae can never win: the ks likelihood is -inf there),
// then golden-section refinement on the best grid bracket. Ties resolve toward
// the smallest theta.
double mle_Q(const std::vector<double>& ys, const ModelParams& params, int grid = 512,
             int refinements = 60);

// Elementwise sgn(y - theta_hat); DomainError if some y equals theta_hat exactly.
std::vector<int> reconstruct(const std::vector<double>& ys, double theta_hat);

// Seeded product-experiment simulation (ks family). Replicate r always draws
// from the stream (seed, r), and aggregation runs in replicate order, so the
// result is bit-identical for any thread count.
SimResult simulate(const SimConfig& config);

struct GapLimitReport {
    double ks_L = 0.0;           // KS distance of gapL_scaled to the limit law
    double ks_R = 0.0;
    double median_L = 0.0;
    double median_R = 0.0;
    double limit_median = 0.0;   // (12 ln 2)^{1/3}
    double two_sample_ks = 0.0;  // gapL_scaled vs gapR_scaled
    std::size_t usable_replicates = 0;
    std::size_t sentinel_count = 0;

    bool operator==(const GapLimitReport&) const = default;
};

// CDF of the scaled-gap limit law, 1 - exp(-u^3/12) on u >= 0.
double gap_limit_cdf(double u);

GapLimitReport gap_limit_report(const SimConfig& config);
// The headline number: KS distance of the left gap to the limit law.
double gap_limit_check(const SimConfig& config);

struct TvDecayReport {
    std::vector<std::size_t> n_grid;
    std::vector<std::size_t> failures;   // replicates off the coupling event, per n
    std::vector<double> estimates;       // 1 - P(A_n), the coupling TV upper bound
    std::vector<bool> dropped;           // true when zero failures made log undefined
    std::size_t replicates = 0;
    double slope = 0.0;                  // of log(1 - P(A_n)) against n^{1/3}
    double intercept = 0.0;
    std::size_t points_used = 0;

    bool operator==(const TvDecayReport&) const = default;
};

TvDecayReport tv_decay_fit(double theta, const std::vector<std::size_t>& n_grid,
                           std::size_t replicates, std::uint64_t seed, const ModelParams& params,
                           int mle_grid = 512, int mle_refinements = 60, int threads = 0);

}  // namespace mixinfo

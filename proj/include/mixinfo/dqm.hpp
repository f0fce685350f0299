#pragma once

#include <optional>
#include <vector>

#include "mixinfo/models.hpp"
#include "mixinfo/numerics.hpp"

namespace mixinfo {

// Certification record for the three differentiability-in-quadratic-mean conditions:
// (i) the part of P_{theta+t} singular w.r.t. P_theta has mass o(t^2),
// (ii) the score is square-integrable,
// (iii) the first-order expansion of sqrt(f_{theta+t}/f_theta) has L2 remainder o(t^2).
struct DqmReport {
    ModelParams params;
    double theta = 0.0;
    std::vector<double> t_grid;         // the |t| grid, caller order
    std::vector<double> singular_mass;  // per |t|, worse of the two signs
    std::vector<double> remainder_l2;   // per |t|, worse of the two signs
    double score_l2 = 0.0;
    // Absent when every singular mass is zero (dominated family: nothing to fit).
    std::optional<PowerLawFit> singular_slope;
    PowerLawFit remainder_slope;
    bool pass_i = false;
    bool pass_ii = false;
    bool pass_iii = false;

    bool operator==(const DqmReport&) const = default;
};

// Mass of the part of P_{theta+t} that P_theta cannot see: integral of
// f_{theta+t} over {f_theta = 0}. Exactly 0 for the control family.
double singular_mass(double theta, double t, const ModelParams& params, double tol = 1e-10);

// sqrt(f_{theta+t}(x) / f_theta(x)); DomainError off the support of P_theta.
double density_ratio_sqrt(const PointX& x, double theta, double t, const ModelParams& params);

// L2(P_theta) mass of the expansion remainder r = sqrt(p_t) - 1 - (t/2) * score.
double remainder_l2(double theta, double t, const ModelParams& params, double tol = 1e-10);

// Hellinger remainder of the scalar location family g itself:
// integral of (sqrt(g(y-t)) - sqrt(g(y)) - t*gamma(y))^2 dy.
double hellinger_remainder_g(double t, double tol = 1e-10);

// Squared L2 norm of the score under P_theta (finiteness is condition (ii)).
double dqm_score_l2(double theta, const ModelParams& params, double tol = 1e-10);

// Runs the per-t measurements at both signs, keeps the worse value per |t|,
// fits rates, and sets pass flags (slope thresholds establish the o(t^2) claims).
DqmReport dqm_verify(double theta, const std::vector<double>& t_grid, const ModelParams& params,
                     double slope_threshold = 2.0, double tol = 1e-10);

}  // namespace mixinfo

#include "mixinfo/projection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mixinfo/errors.hpp"
#include "mixinfo/numerics.hpp"

namespace mixinfo {

namespace {

// Sign-weighted component masses at y; their sum reproduces h_density.
struct Components {
    double plus;
    double minus;
};

Components components_at(double y, double theta, const ModelParams& params) {
    return {sign_weight(+1, params) * f_density({y, +1}, theta, params),
            sign_weight(-1, params) * f_density({y, -1}, theta, params)};
}

}  // namespace

double cond_prob_z(double y, double theta, const ModelParams& params) {
    validate_params(params);
    const auto [wp, wm] = components_at(y, theta, params);
    const double h = wp + wm;
    if (!(h > 0.0)) {
        std::ostringstream os;
        os << "cond_prob_z: zero image density at y = " << y;
        throw DomainError(os.str());
    }
    return wp / h;
}

double cond_score(double y, double theta, const ModelParams& params) {
    validate_params(params);
    const auto [wp, wm] = components_at(y, theta, params);
    if (!(wp + wm > 0.0)) {
        std::ostringstream os;
        os << "cond_score: zero image density at y = " << y;
        throw DomainError(os.str());
    }
    // Branch-aware: at support edges the conditional mass sits entirely on one
    // sign, and the other branch's score must not be evaluated.
    if (wm == 0.0) return score_P({y, +1}, theta, params);
    if (wp == 0.0) return score_P({y, -1}, theta, params);
    const double p = wp / (wp + wm);
    return p * score_P({y, +1}, theta, params) + (1.0 - p) * score_P({y, -1}, theta, params);
}

double fisher_info_P(double theta, const ModelParams& params, double tol) {
    validate_params(params);
    double total = 0.0;
    for (int z : {+1, -1}) {
        auto part = integrate(
            [&](double y) {
                const PointX x{y, z};
                const double f = f_density(x, theta, params);
                if (!(f > 0.0)) return 0.0;
                const double s = score_P(x, theta, params);
                return s * s * f;
            },
            {theta}, TailDecay::exponential, tol);
        total += sign_weight(z, params) * part.value;
    }
    return total;
}

double fisher_info_Q(double theta, const ModelParams& params, double tol) {
    validate_params(params);
    auto res = integrate(
        [&](double y) {
            const double h = h_density(y, theta, params);
            if (!(h > 0.0)) return 0.0;
            const double s = cond_score(y, theta, params);
            return s * s * h;
        },
        {theta}, TailDecay::exponential, tol);
    return res.value;
}

double info_defect(double theta, const ModelParams& params, double tol) {
    validate_params(params);
    double total = 0.0;
    for (int z : {+1, -1}) {
        auto part = integrate(
            [&](double y) {
                const PointX x{y, z};
                const double f = f_density(x, theta, params);
                if (!(f > 0.0)) return 0.0;
                const double gap = score_P(x, theta, params) - cond_score(y, theta, params);
                return gap * gap * f;
            },
            {theta}, TailDecay::exponential, tol);
        total += sign_weight(z, params) * part.value;
    }
    return total;
}

InfoReport pythagoras_check(double theta, const ModelParams& params, double tol,
                            double identity_tol) {
    InfoReport rep;
    rep.params = params;
    rep.theta = theta;
    rep.info_P = fisher_info_P(theta, params, tol);
    rep.info_Q = fisher_info_Q(theta, params, tol);
    rep.defect = info_defect(theta, params, tol);
    const double residual = rep.info_P - rep.info_Q - rep.defect;
    if (std::fabs(residual) > identity_tol) {
        std::ostringstream os;
        os << "projection identity violated: info_P - info_Q - defect = " << residual
           << " at theta = " << theta << " (" << family_name(params.family) << ")";
        throw ConsistencyError(os.str());
    }
    rep.preserved = rep.defect <= identity_tol;
    return rep;
}

double sufficiency_witness(double theta1, double theta2, const ModelParams& params,
                           std::size_t grid_points) {
    validate_params(params);
    if (theta1 == theta2) throw DomainError("sufficiency_witness: theta1 must differ from theta2");
    if (grid_points < 2) throw DomainError("sufficiency_witness: need at least 2 grid points");

    const double lo = std::min(theta1, theta2) - 8.0;
    const double hi = std::max(theta1, theta2) + 8.0;
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);

    double best = -1.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double y = lo + step * static_cast<double>(i);
        if (!(h_density(y, theta1, params) > 0.0)) continue;
        if (!(h_density(y, theta2, params) > 0.0)) continue;
        best = std::max(best,
                        std::fabs(cond_prob_z(y, theta1, params) - cond_prob_z(y, theta2, params)));
    }
    if (best < 0.0)
        throw DomainError("sufficiency_witness: no grid point has positive density under both");
    return best;
}

double cond_score_max_gap(double theta, const ModelParams& params, std::size_t points,
                          std::uint64_t seed) {
    const std::vector<PointX> xs = sample(theta, points, seed, params);
    double gap = 0.0;
    for (const PointX& x : xs)
        gap = std::max(gap,
                       std::fabs(cond_score(x.y, theta, params) - score_Q(x.y, theta, params)));
    return gap;
}

}  // namespace mixinfo

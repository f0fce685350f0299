#pragma once

#include "mixinfo/models.hpp"

namespace mixinfo {

// Fisher information of the full experiment P and its image Q = P о S^{-1}
// under S(y,z) = y, plus the squared L2 gap between the score and its
// projection onto functions of S.
struct InfoReport {
    ModelParams params;
    double theta = 0.0;
    double info_P = 0.0;
    double info_Q = 0.0;
    double defect = 0.0;
    bool preserved = false;

    bool operator==(const InfoReport&) const = default;
};

// P_theta(z = +1 | S = y). DomainError where the image density vanishes.
double cond_prob_z(double y, double theta, const ModelParams& params);

// Projection of the score: E[score_P | S = y], evaluated by exact two-point
// branch averaging (never touching an off-support branch).
double cond_score(double y, double theta, const ModelParams& params);

double fisher_info_P(double theta, const ModelParams& params, double tol = 1e-10);
double fisher_info_Q(double theta, const ModelParams& params, double tol = 1e-10);

// Quadrature of (score_P - cond_score о S)^2 against P_theta.
double info_defect(double theta, const ModelParams& params, double tol = 1e-10);

// Computes the three integrals and asserts info_P = info_Q + defect within
// identity_tol (ConsistencyError otherwise); preserved means defect <= identity_tol.
InfoReport pythagoras_check(double theta, const ModelParams& params, double tol = 1e-10,
                            double identity_tol = 1e-7);

// sup over a y-grid of |P_theta1(z=+1|y) - P_theta2(z=+1|y)|; strictly positive
// values certify that S is not sufficient.
double sufficiency_witness(double theta1, double theta2, const ModelParams& params,
                           std::size_t grid_points = 2001);

// max |cond_score - score_Q| over the y's of a seeded sample from P_theta
// (the numerical face of the projected-score identity).
double cond_score_max_gap(double theta, const ModelParams& params, std::size_t points = 200,
                          std::uint64_t seed = 0);

}  // namespace mixinfo

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mixinfo {

// One observation x = (y, z) of the full experiment.
struct PointX {
    double y = 0.0;
    int z = +1;  // -1 or +1
};

enum class Family { ks, ks_variant, control };

// ks: symmetric mixture, z tells which side of theta the gamma draw landed on.
// ks_variant: same gamma kernel, sign label correct only with probability beta,
//             z itself carrying mass alpha under the base measure.
// control: y ~ N(theta,1) with an independent logistic(theta) label; the label's
//          information is invisible to S(y,z) = y.
struct ModelParams {
    Family family = Family::ks;
    double alpha = 0.5;  // ks_variant: base-measure mass of z=+1
    double beta = 1.0;   // ks_variant: mixture weight of the correctly-labeled side

    static ModelParams ks() { return ModelParams{Family::ks, 0.5, 1.0}; }
    static ModelParams ks_variant(double alpha, double beta) {
        return ModelParams{Family::ks_variant, alpha, beta};
    }
    static ModelParams control() { return ModelParams{Family::control, 0.5, 1.0}; }

    bool operator==(const ModelParams&) const = default;
};

// Throws DomainError unless the parameters satisfy the family's constraints.
void validate_params(const ModelParams& params);

std::string family_name(Family family);
Family family_from_name(const std::string& name);  // DomainError on unknown name

// Gamma(3,1) kernel: g(w) = w^2 e^{-w} / 2 on w > 0, else 0.
double g_density(double w);
// dg/dw = w (2 - w) e^{-w} / 2 on w > 0, else 0.
double g_derivative(double w);
// Hellinger derivative of the location family: -g'(w) / (2 sqrt(g(w))) on w > 0, else 0.
double gamma_hellinger(double w);

// Joint density of x = (y,z) w.r.t. m (x) nu (ks, control) or m (x) mu (ks_variant);
// the sign measure's mass lives in sign_weight, never inside the density.
double f_density(const PointX& x, double theta, const ModelParams& params);
// Pointwise d/dtheta of f_density (closed form, branch algebra).
double f_density_dtheta(const PointX& x, double theta, const ModelParams& params);

// Base-measure mass of the sign z (nu{+-1} = 1/2, or mu{+1} = alpha for the variant).
double sign_weight(int z, const ModelParams& params);

// Density of S = y under theta (the y-marginal against Lebesgue measure).
double h_density(double y, double theta, const ModelParams& params);
// Pointwise d/dtheta of h_density.
double h_density_dtheta(double y, double theta, const ModelParams& params);

// Score of the full experiment, d/dtheta log f. DomainError off the support of P_theta.
double score_P(const PointX& x, double theta, const ModelParams& params);
// Score of the image experiment, d/dtheta log h. DomainError where h vanishes.
double score_Q(double y, double theta, const ModelParams& params);

double logistic(double t);

// Deterministic per-replicate stream: replicate r of master seed s always sees the
// same uniforms, regardless of which thread runs it.
class RandomStream {
  public:
    RandomStream(std::uint64_t master_seed, std::uint64_t replicate);
    double uniform01();  // strictly inside (0,1)

  private:
    std::uint64_t state_;
};

// n i.i.d. draws from P_theta; the gamma variate is the sum of three unit
// exponentials obtained by inverse CDF from the stream's uniforms.
std::vector<PointX> sample(double theta, std::size_t n, std::uint64_t seed,
                           const ModelParams& params);

// Same draws, addressed as one replicate of a larger design.
std::vector<PointX> sample_replicate(double theta, std::size_t n, std::uint64_t master_seed,
                                     std::uint64_t replicate, const ModelParams& params);

}  // namespace mixinfo

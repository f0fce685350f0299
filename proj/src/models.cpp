#include "mixinfo/models.hpp"

#include <cmath>
#include <sstream>

#include "mixinfo/errors.hpp"

namespace mixinfo {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
constexpr double kInvTwoSqrt2 = 0.353553390593273762200422181052;  // 1/(2 sqrt 2)
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

double normal_pdf(double d) { return kInvSqrt2Pi * std::exp(-0.5 * d * d); }

// d/dtheta log of the y-branch shared by ks and ks_variant scores:
// (d-2)/d to the right of theta, (2+d)/(-d) to the left (d = y - theta).
double branch_score(double d) { return d > 0 ? (d - 2.0) / d : (2.0 + d) / (-d); }

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

}  // namespace

void validate_params(const ModelParams& params) {
    switch (params.family) {
        case Family::ks:
            if (params.alpha != 0.5 || params.beta != 1.0)
                throw DomainError("ks family fixes alpha = 1/2 and beta = 1");
            break;
        case Family::ks_variant:
            if (!(params.alpha > 0.0 && params.alpha < 1.0))
                throw DomainError("ks_variant requires alpha in (0,1)");
            if (!(params.beta > 0.0 && params.beta < 1.0))
                throw DomainError("ks_variant requires beta in (0,1)");
            break;
        case Family::control:
            break;  // alpha, beta ignored
    }
}

std::string family_name(Family family) {
    switch (family) {
        case Family::ks: return "ks";
        case Family::ks_variant: return "ks_variant";
        default: return "control";
    }
}

Family family_from_name(const std::string& name) {
    if (name == "ks") return Family::ks;
    if (name == "ks_variant") return Family::ks_variant;
    if (name == "control") return Family::control;
    throw DomainError("unknown model family: " + name);
}

double g_density(double w) {
    if (w <= 0.0) return 0.0;
    return 0.5 * w * w * std::exp(-w);
}

double g_derivative(double w) {
    if (w <= 0.0) return 0.0;
    return 0.5 * w * (2.0 - w) * std::exp(-w);
}

double gamma_hellinger(double w) {
    if (w <= 0.0) return 0.0;
    // -g'(w) / (2 sqrt(g(w))) simplified on w > 0
    return (w - 2.0) * std::exp(-0.5 * w) * kInvTwoSqrt2;
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double sign_weight(int z, const ModelParams& params) {
    if (z != 1 && z != -1) throw DomainError("sign must be +1 or -1");
    if (params.family == Family::ks_variant)
        return z == 1 ? params.alpha : 1.0 - params.alpha;
    return 0.5;
}

double f_density(const PointX& x, double theta, const ModelParams& params) {
    const double d = x.y - theta;
    switch (params.family) {
        case Family::ks:
            return x.z == 1 ? g_density(d) : g_density(-d);
        case Family::ks_variant: {
            const double b = params.beta;
            return x.z == 1 ? b * g_density(d) + (1.0 - b) * g_density(-d)
                            : (1.0 - b) * g_density(d) + b * g_density(-d);
        }
        default: {
            const double pz = x.z == 1 ? logistic(theta) : 1.0 - logistic(theta);
            return 2.0 * pz * normal_pdf(d);  // the 2 undoes nu{z} = 1/2
        }
    }
}

double f_density_dtheta(const PointX& x, double theta, const ModelParams& params) {
    const double d = x.y - theta;
    switch (params.family) {
        case Family::ks:
            return x.z == 1 ? -g_derivative(d) : g_derivative(-d);
        case Family::ks_variant: {
            const double b = params.beta;
            return x.z == 1 ? -b * g_derivative(d) + (1.0 - b) * g_derivative(-d)
                            : -(1.0 - b) * g_derivative(d) + b * g_derivative(-d);
        }
        default: {
            const double s = logistic(theta);
            const double pz = x.z == 1 ? s : 1.0 - s;
            const double dpz = x.z == 1 ? s * (1.0 - s) : -s * (1.0 - s);
            return 2.0 * normal_pdf(d) * (dpz + pz * d);
        }
    }
}

double h_density(double y, double theta, const ModelParams& params) {
    const double d = y - theta;
    switch (params.family) {
        case Family::ks:
            return 0.5 * g_density(d) + 0.5 * g_density(-d);
        case Family::ks_variant: {
            const double a = params.alpha, b = params.beta;
            const double c1 = a * b + (1.0 - a) * (1.0 - b);
            const double c2 = a * (1.0 - b) + (1.0 - a) * b;
            return c1 * g_density(d) + c2 * g_density(-d);
        }
        default:
            return normal_pdf(d);
    }
}

double h_density_dtheta(double y, double theta, const ModelParams& params) {
    const double d = y - theta;
    switch (params.family) {
        case Family::ks:
            return -0.5 * g_derivative(d) + 0.5 * g_derivative(-d);
        case Family::ks_variant: {
            const double a = params.alpha, b = params.beta;
            const double c1 = a * b + (1.0 - a) * (1.0 - b);
            const double c2 = a * (1.0 - b) + (1.0 - a) * b;
            return -c1 * g_derivative(d) + c2 * g_derivative(-d);
        }
        default:
            return normal_pdf(d) * d;
    }
}

double score_P(const PointX& x, double theta, const ModelParams& params) {
    const double d = x.y - theta;
    switch (params.family) {
        case Family::ks:
            if ((x.z == 1 && d > 0.0) || (x.z == -1 && d < 0.0)) return branch_score(d);
            break;
        case Family::ks_variant:
            if (d != 0.0) return branch_score(d);
            break;
        default: {
            const double s = logistic(theta);
            return d + (x.z == 1 ? 1.0 - s : -s);
        }
    }
    std::ostringstream os;
    os << "score_P undefined: x = (" << x.y << ", " << x.z << ") is outside the support at theta = "
       << theta;
    throw DomainError(os.str());
}

double score_Q(double y, double theta, const ModelParams& params) {
    const double d = y - theta;
    if (params.family == Family::control) return d;
    if (d == 0.0) {
        std::ostringstream os;
        os << "score_Q undefined at y = theta = " << theta << " (zero density)";
        throw DomainError(os.str());
    }
    return branch_score(d);
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t replicate)
    : state_(mix64(mix64(master_seed) ^ (kGolden * (replicate + 1)))) {}

double RandomStream::uniform01() {
    state_ += kGolden;
    const std::uint64_t u = mix64(state_);
    // 53-bit mantissa centered in its cell: never exactly 0 or 1, safe under log().
    return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<PointX> sample_replicate(double theta, std::size_t n, std::uint64_t master_seed,
                                     std::uint64_t replicate, const ModelParams& params) {
    validate_params(params);
    if (n < 1) throw DomainError("sample: n must be >= 1");
    RandomStream rs(master_seed, replicate);
    std::vector<PointX> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        PointX x;
        switch (params.family) {
            case Family::ks: {
                x.z = rs.uniform01() < 0.5 ? +1 : -1;
                const double w =
                    -(std::log(rs.uniform01()) + std::log(rs.uniform01()) + std::log(rs.uniform01()));
                x.y = theta + (x.z == 1 ? w : -w);
                break;
            }
            case Family::ks_variant: {
                x.z = rs.uniform01() < params.alpha ? +1 : -1;
                const bool correct = rs.uniform01() < params.beta;
                const int dir = (x.z == 1) == correct ? +1 : -1;
                const double w =
                    -(std::log(rs.uniform01()) + std::log(rs.uniform01()) + std::log(rs.uniform01()));
                x.y = theta + dir * w;
                break;
            }
            default: {
                x.z = rs.uniform01() < logistic(theta) ? +1 : -1;
                const double r = std::sqrt(-2.0 * std::log(rs.uniform01()));
                x.y = theta + r * std::cos(kTwoPi * rs.uniform01());
                break;
            }
        }
        out.push_back(x);
    }
    return out;
}

std::vector<PointX> sample(double theta, std::size_t n, std::uint64_t seed,
                           const ModelParams& params) {
    return sample_replicate(theta, n, seed, 0, params);
}

}  // namespace mixinfo

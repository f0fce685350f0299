#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mixinfo {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

enum class TailDecay { none, exponential };

// Adaptive Gauss-Kronrod (G7,K15) integration over the union of the panels cut by
// `breakpoints`, never straddling a breakpoint. With TailDecay::exponential the
// integral extends over (-inf, breakpoints.front()] and [breakpoints.back(), +inf)
// via the substitution u = e^{-(x-b)} (resp. mirrored), which is exact in one panel
// for integrands proportional to e^{-x}.
//
// Throws DomainError on bad breakpoints, QuadratureError on NaN from f or when the
// error target is still unmet after the subdivision budget (carrying the best estimate).
QuadratureResult integrate(const std::function<double(double)>& f,
                           const std::vector<double>& breakpoints,
                           TailDecay tail,
                           double tol = 1e-10);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares y = slope*x + intercept.
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

struct PowerLawFit {
    double slope = 0.0;       // estimated exponent
    double intercept = 0.0;   // log-space intercept
    double r_squared = 0.0;
    std::size_t points_used = 0;

    bool operator==(const PowerLawFit&) const = default;
};

// OLS in log-log space through (log t, log v); slope is the rate exponent.
// Rejects nonpositive coordinates (DomainError naming the offending index).
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& samples);

class EmpiricalDistribution {
  public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<double> values);

    const std::vector<double>& sorted_values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double median() const;    // average of middle order statistics
    double mean() const;
    double variance() const;  // unbiased (n-1 denominator); needs size >= 2

    bool operator==(const EmpiricalDistribution&) const = default;

  private:
    std::vector<double> values_;  // ascending
};

// sup_x |F_n(x) - cdf(x)| for a nondecreasing cdf. DomainError on empty sample.
double ks_distance(const EmpiricalDistribution& sample,
                   const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_m(x) - G_n(x)|.
double ks_distance_two_sample(const EmpiricalDistribution& a,
                              const EmpiricalDistribution& b);

}  // namespace mixinfo

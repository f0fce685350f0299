#include "mixinfo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <sstream>

#include "mixinfo/errors.hpp"

namespace mixinfo {

namespace {

// 15-point Kronrod / 7-point Gauss pair on [-1,1] (QUADPACK dqk15 constants).
// xgk[1], xgk[3], ... are the Gauss abscissae; xgk[0], xgk[2], ... extend them.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// How a panel's coordinate maps into the integrand's argument.
enum class Map : std::uint8_t {
    direct,      // x = u
    right_tail,  // x = x0 - ln u, du-weight 1/u : covers [x0, +inf) for u in (0,1]
    left_tail,   // x = x0 + ln u, du-weight 1/u : covers (-inf, x0]
};

struct Panel {
    double a, b;        // in u-space
    double value;       // K15 estimate of the integral over [a,b]
    double err;         // QUADPACK-style error estimate
    Map map;
    double x0;
    std::uint64_t seq;  // creation order, for deterministic tie-breaking
};

struct PanelOrder {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.err != q.err) return p.err < q.err;  // max-heap on error
        return p.seq > q.seq;                      // older panel wins ties
    }
};

double eval_mapped(const std::function<double(double)>& f, Map map, double x0, double u,
                   double* abscissa) {
    double x, v;
    switch (map) {
        case Map::direct:
            x = u;
            v = f(x);
            break;
        case Map::right_tail:
            x = x0 - std::log(u);
            v = f(x) / u;
            break;
        default:
            x = x0 + std::log(u);
            v = f(x) / u;
            break;
    }
    *abscissa = x;
    return v;
}

Panel make_panel(const std::function<double(double)>& f, Map map, double x0, double a, double b,
                 std::uint64_t seq) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    double absc;
    const double fc = eval_mapped(f, map, x0, centr, &absc);
    if (std::isnan(fc)) {
        std::ostringstream os;
        os << "integrand returned NaN at x = " << absc;
        throw QuadratureError(os.str(), 0.0, std::numeric_limits<double>::infinity());
    }

    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::fabs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = hlgth * kXgk[j];
        double a1, a2;
        const double f1 = eval_mapped(f, map, x0, centr - dx, &a1);
        const double f2 = eval_mapped(f, map, x0, centr + dx, &a2);
        if (std::isnan(f1) || std::isnan(f2)) {
            std::ostringstream os;
            os << "integrand returned NaN at x = " << (std::isnan(f1) ? a1 : a2);
            throw QuadratureError(os.str(), 0.0, std::numeric_limits<double>::infinity());
        }
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    resabs *= std::fabs(hlgth);
    resasc *= std::fabs(hlgth);

    double err = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double epmach = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * epmach)) err = std::max(epmach * 50.0 * resabs, err);

    return Panel{a, b, resk * hlgth, err, map, x0, seq};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           const std::vector<double>& breakpoints, TailDecay tail, double tol) {
    if (tol <= 0.0) throw DomainError("integrate: tol must be positive");
    if (breakpoints.empty()) throw DomainError("integrate: at least one breakpoint required");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i]))
            throw DomainError("integrate: breakpoints must be finite");
        if (i > 0 && breakpoints[i] < breakpoints[i - 1])
            throw DomainError("integrate: breakpoints must be sorted ascending");
    }
    if (tail == TailDecay::none && breakpoints.size() < 2)
        throw DomainError("integrate: need >= 2 breakpoints without tails");

    constexpr int kMaxPanels = 4000;
    std::uint64_t seq = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    std::vector<Panel> frozen;  // panels at floating-point resolution; keep, never split
    double val_sum = 0.0, err_sum = 0.0;

    auto push = [&](Map map, double x0, double a, double b) {
        Panel p = make_panel(f, map, x0, a, b, seq++);
        val_sum += p.value;
        err_sum += p.err;
        heap.push(p);
    };

    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (breakpoints[i] < breakpoints[i + 1])
            push(Map::direct, 0.0, breakpoints[i], breakpoints[i + 1]);
    if (tail == TailDecay::exponential) {
        push(Map::right_tail, breakpoints.back(), 0.0, 1.0);
        push(Map::left_tail, breakpoints.front(), 0.0, 1.0);
    }
    if (heap.empty()) throw DomainError("integrate: empty integration domain");

    // Absolute target, with a machine-precision relative floor so O(1) values
    // cannot be asked for impossible accuracy.
    auto target = [&] { return std::max(tol, std::fabs(val_sum) * 5e-15); };

    int splits = 0;
    while (err_sum > target() && splits < kMaxPanels && !heap.empty()) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            frozen.push_back(worst);  // cannot bisect further; error stays counted
            continue;
        }
        val_sum -= worst.value;
        err_sum -= worst.err;
        push(worst.map, worst.x0, worst.a, mid);
        push(worst.map, worst.x0, mid, worst.b);
        ++splits;
    }

    // Deterministic final summation: sort panels by position, independent of heap order.
    std::vector<Panel> all = frozen;
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) {
        if (p.map != q.map) return p.map < q.map;
        if (p.x0 != q.x0) return p.x0 < q.x0;
        return p.a < q.a;
    });
    double value = 0.0, err = 0.0;
    for (const Panel& p : all) {
        value += p.value;
        err += p.err;
    }

    // A non-finite sum (integrand blew up somewhere we sampled) must never
    // pass the gate: inf > inf is false.
    if (!std::isfinite(value) || err > std::max(tol, std::fabs(value) * 5e-15)) {
        std::ostringstream os;
        os << "integrate: error target " << tol << " not reached after " << splits
           << " subdivisions (best estimate " << value << ", error " << err << ")";
        throw QuadratureError(os.str(), value, err);
    }
    return QuadratureResult{value, err, static_cast<int>(all.size())};
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DomainError("linear_fit: size mismatch");
    const std::size_t n = xs.size();
    if (n < 2) throw DomainError("linear_fit: need at least 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw DomainError("linear_fit: degenerate x values");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.r_squared = 1.0;  // all residuals vanish for a horizontal fit
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
            ss_res += r * r;
        }
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return fit;
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2) throw DomainError("fit_power_law: need at least 2 points");
    std::vector<double> lx, ly;
    lx.reserve(samples.size());
    ly.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [t, v] = samples[i];
        if (!(t > 0.0) || !(v > 0.0)) {
            std::ostringstream os;
            os << "fit_power_law: nonpositive coordinate at index " << i << " (t=" << t
               << ", v=" << v << ")";
            throw DomainError(os.str());
        }
        lx.push_back(std::log(t));
        ly.push_back(std::log(v));
    }
    const LinearFit lf = linear_fit(lx, ly);
    return PowerLawFit{lf.slope, lf.intercept, lf.r_squared, samples.size()};
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values)
    : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::median() const {
    if (values_.empty()) throw DomainError("median: empty sample");
    const std::size_t n = values_.size();
    return 0.5 * (values_[(n - 1) / 2] + values_[n / 2]);
}

double EmpiricalDistribution::mean() const {
    if (values_.empty()) throw DomainError("mean: empty sample");
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

double EmpiricalDistribution::variance() const {
    if (values_.size() < 2) throw DomainError("variance: need at least 2 values");
    const double m = mean();
    double s = 0.0;
    for (double v : values_) s += (v - m) * (v - m);
    return s / static_cast<double>(values_.size() - 1);
}

double ks_distance(const EmpiricalDistribution& sample,
                   const std::function<double(double)>& cdf) {
    if (sample.empty()) throw DomainError("ks_distance: empty sample");
    const auto& xs = sample.sorted_values();
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double F = cdf(xs[i]);
        d = std::max(d, std::fabs(F - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - F));
    }
    return d;
}

double ks_distance_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    if (a.empty() || b.empty()) throw DomainError("ks_distance_two_sample: empty sample");
    const auto& xs = a.sorted_values();
    const auto& ys = b.sorted_values();
    const double na = static_cast<double>(xs.size());
    const double nb = static_cast<double>(ys.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xs.size() && j < ys.size()) {
        const double x = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] <= x) ++i;
        while (j < ys.size() && ys[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace mixinfo

#include "flatcurve/gamma_fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "flatcurve/errors.hpp"

namespace flatcurve {

double digamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("digamma: x must be > 0");

    // psi(x) = psi(x + 1) - 1/x lifts small arguments into the asymptotic
    // regime; at x >= 10 the series below is accurate past 1e-14.
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli series: ln x - 1/(2x) - sum B_2n / (2n x^(2n))
    double series = std::log(x) - 0.5 * inv;
    series -= inv2 * (1.0 / 12.0 +
              inv2 * (-1.0 / 120.0 +
              inv2 * (1.0 / 252.0 +
              inv2 * (-1.0 / 240.0 +
              inv2 * (1.0 / 132.0 +
              inv2 * (-691.0 / 32760.0 +
              inv2 * (1.0 / 12.0)))))));
    return acc + series;
}

double trigamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("trigamma: x must be > 0");

    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // psi'(x) ~ 1/x + 1/(2x^2) + sum B_2n / x^(2n+1)
    double series = inv + 0.5 * inv2;
    series += inv * inv2 * (1.0 / 6.0 +
              inv2 * (-1.0 / 30.0 +
              inv2 * (1.0 / 42.0 +
              inv2 * (-1.0 / 30.0 +
              inv2 * (5.0 / 66.0 +
              inv2 * (-691.0 / 2730.0 +
              inv2 * (7.0 / 6.0)))))));
    return acc + series;
}

double gamma_pdf(double x, const GammaParams& p) {
    if (!(x > 0.0)) throw std::invalid_argument("gamma_pdf: x must be > 0");
    if (!(p.shape > 0.0 && p.scale > 0.0))
        throw std::invalid_argument("gamma_pdf: shape and scale must be > 0");
    const double log_pdf = (p.shape - 1.0) * std::log(x) - x / p.scale -
                           std::lgamma(p.shape) - p.shape * std::log(p.scale);
    return std::exp(log_pdf);
}

double gamma_log_likelihood(std::span<const double> values,
                            std::span<const double> weights, const GammaParams& p) {
    if (values.size() != weights.size())
        throw std::invalid_argument("gamma_log_likelihood: size mismatch");
    double ll = 0.0;
    double total_w = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        ll += weights[i] * ((p.shape - 1.0) * std::log(values[i]) - values[i] / p.scale);
        total_w += weights[i];
    }
    ll -= total_w * (std::lgamma(p.shape) + p.shape * std::log(p.scale));
    return ll;
}

namespace {

struct Moments {
    std::vector<double> values;  // ascending unique
    std::vector<double> weights; // summed per value
    double total_weight = 0.0;
    double mean = 0.0;
    double mean_log = 0.0;
    double variance = 0.0; // population variance
};

// Group duplicates and accumulate in ascending value order. Both fit entry
// points reduce to the same canonical form, so a weighted histogram and its
// expanded sample list yield bit-identical moments.
Moments compute_moments(std::span<const double> values, std::span<const double> weights) {
    if (values.size() != weights.size())
        throw std::invalid_argument("fit_gamma: values/weights size mismatch");

    std::map<double, double> grouped;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0))
            throw std::invalid_argument("fit_gamma: samples must be > 0");
        if (!(weights[i] >= 0.0))
            throw std::invalid_argument("fit_gamma: weights must be >= 0");
        if (weights[i] > 0.0) grouped[values[i]] += weights[i];
    }

    Moments m;
    for (auto [v, w] : grouped) {
        m.values.push_back(v);
        m.weights.push_back(w);
        m.total_weight += w;
    }
    if (m.total_weight < 2.0)
        throw std::invalid_argument("fit_gamma: need at least two samples");

    double sum = 0.0, sum_log = 0.0;
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        sum += m.weights[i] * m.values[i];
        sum_log += m.weights[i] * std::log(m.values[i]);
    }
    m.mean = sum / m.total_weight;
    m.mean_log = sum_log / m.total_weight;

    double ss = 0.0;
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        const double d = m.values[i] - m.mean;
        ss += m.weights[i] * d * d;
    }
    m.variance = ss / m.total_weight;
    if (!(m.variance > 0.0))
        throw std::invalid_argument("fit_gamma: samples are all equal (zero variance)");
    return m;
}

GammaFit fit_from_moments(const Moments& m, FitMethod method) {
    GammaFit fit;
    fit.diag.sample_count = static_cast<std::size_t>(std::llround(m.total_weight));

    const double a_mom = m.mean * m.mean / m.variance;
    if (method == FitMethod::MethodOfMoments) {
        fit.params.shape = a_mom;
        fit.params.scale = m.variance / m.mean;
    } else {
        // Solve f(a) = ln(a) - psi(a) - s = 0; f is strictly decreasing from
        // +inf (a -> 0) to 0- ... -s (a -> inf), so the root is unique.
        const double s = std::log(m.mean) - m.mean_log;
        if (!(s > 0.0))
            throw std::invalid_argument("fit_gamma: degenerate sample spread");

        double lo = a_mom, hi = a_mom;
        auto f = [s](double a) { return std::log(a) - digamma(a) - s; };
        while (f(lo) < 0.0) lo *= 0.5;
        while (f(hi) > 0.0) hi *= 2.0;

        double a = std::clamp(a_mom, lo, hi);
        int it = 0;
        for (; it < 200; ++it) {
            const double fa = f(a);
            if (fa > 0.0) lo = a;
            else hi = a;
            const double deriv = 1.0 / a - trigamma(a); // < 0
            double next = a - fa / deriv;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - a) < 1e-10 * std::max(1.0, a)) {
                a = next;
                break;
            }
            a = next;
        }
        fit.diag.iterations = it + 1;
        fit.params.shape = a;
        fit.params.scale = m.mean / a;
    }

    fit.diag.shape_gt_one = fit.params.shape > 1.0;
    fit.diag.log_likelihood =
        gamma_log_likelihood(m.values, m.weights, fit.params);
    return fit;
}

} // namespace

GammaFit fit_gamma(std::span<const double> samples, FitMethod method) {
    const std::vector<double> ones(samples.size(), 1.0);
    return fit_from_moments(compute_moments(samples, ones), method);
}

GammaFit fit_gamma_weighted(std::span<const double> values,
                            std::span<const double> weights, FitMethod method) {
    return fit_from_moments(compute_moments(values, weights), method);
}

std::vector<std::pair<double, double>> curve_points(const GammaParams& p,
                                                    std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("curve_points: empty grid");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(grid.size());
    double prev = 0.0;
    for (double x : grid) {
        if (!(x > prev))
            throw std::invalid_argument("curve_points: grid must be positive and ascending");
        pts.emplace_back(x, gamma_pdf(x, p));
        prev = x;
    }
    return pts;
}

} // namespace flatcurve

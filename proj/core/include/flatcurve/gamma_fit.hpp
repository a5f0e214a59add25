#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace flatcurve {

/// Shape/scale parameterization: f(x) = x^(a-1) exp(-x/b) / (Gamma(a) b^a).
struct GammaParams {
    double shape = 1.0; ///< a > 0
    double scale = 1.0; ///< b > 0
};

struct FitDiagnostics {
    std::size_t sample_count = 0; ///< total weight
    double log_likelihood = 0.0;
    int iterations = 0;
    bool shape_gt_one = false; ///< distance-distribution fits are expected to land here
};

struct GammaFit {
    GammaParams params;
    FitDiagnostics diag;
};

enum class FitMethod { Mle, MethodOfMoments };

/// Digamma psi(x) for x > 0: upward recurrence into the asymptotic regime,
/// then the Bernoulli-number series. Absolute error below 1e-12 over
/// [1e-3, 1e6].
double digamma(double x);

/// Trigamma psi'(x) for x > 0, same construction.
double trigamma(double x);

/// Density at x > 0, evaluated in the log domain so large shapes do not
/// overflow.
double gamma_pdf(double x, const GammaParams& p);

/// Weighted log-likelihood of the samples under p.
double gamma_log_likelihood(std::span<const double> values,
                            std::span<const double> weights, const GammaParams& p);

/// Fit by maximum likelihood (default): b = mean/a with a solved from
///   ln(a) - psi(a) = ln(mean) - mean(ln x)
/// by bracketed Newton iteration to 1e-10, started at the method-of-moments
/// estimate mean^2/variance. FitMethod::MethodOfMoments returns the moment
/// estimate itself. Requires at least two samples (by weight), all positive,
/// not all equal. Inputs are canonicalized to sorted (value, weight) pairs
/// first, so fitting a weighted histogram and fitting the expanded sample
/// list produce identical results.
GammaFit fit_gamma(std::span<const double> samples, FitMethod method = FitMethod::Mle);
GammaFit fit_gamma_weighted(std::span<const double> values,
                            std::span<const double> weights,
                            FitMethod method = FitMethod::Mle);

/// Density sampled over a strictly positive ascending grid.
std::vector<std::pair<double, double>> curve_points(const GammaParams& p,
                                                    std::span<const double> grid);

} // namespace flatcurve

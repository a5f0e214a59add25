#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flatcurve/centrality.hpp"
#include "flatcurve/epidemic.hpp"
#include "flatcurve/gamma_fit.hpp"
#include "flatcurve/metrics.hpp"

namespace flatcurve {

/// One sweep: every (beta, measure) cell runs `trials` independent trials.
struct ExperimentConfig {
    NodeId n = 100;
    NodeId k = 6;
    std::vector<double> betas;
    std::vector<std::optional<Measure>> measures; ///< nullopt = no isolation baseline
    double isolation_fraction = 0.0;
    std::uint32_t trials = 100;
    std::uint64_t master_seed = 42;
    ReferenceMode reference_mode = ReferenceMode::Analytic;
    FitMethod fit_method = FitMethod::Mle;
    unsigned threads = 0; ///< 0 = hardware concurrency

    void validate() const;
};

/// Aggregated outcome of one (beta, measure) cell. Structural metrics are
/// measured on the pre-isolation trial graphs; the histogram and fit come
/// from the post-isolation spreads.
struct CellResult {
    double beta = 0.0;
    std::optional<Measure> measure;
    double mean_path_length = 0.0;
    double mean_clustering = 0.0;
    std::optional<double> mean_s1, mean_s2, mean_s3;
    DistanceHistogram histogram;
    std::uint32_t peak_distance = 0;
    std::uint64_t peak_count = 0;
    std::optional<GammaFit> gamma; ///< unset when the pooled samples cannot be fitted
    double unreachable_fraction = 0.0;
    double wall_ms = 0.0; ///< informational only; never serialized
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<CellResult> cells; ///< beta-major, measures in config order
};

/// Run the full grid. Per-cell seeds derive from (master_seed, beta index,
/// measure index) and per-trial seeds from (cell seed, trial index), so the
/// output is independent of execution order and thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Per-beta ranking of peak counts with reduction ratios against the
/// no-isolation baseline cell. Requires a baseline at every beta.
struct FlatteningEntry {
    std::optional<Measure> measure;
    std::uint64_t peak_count = 0;
    double reduction_ratio = 1.0; ///< peak / baseline peak
};
struct FlatteningRow {
    double beta = 0.0;
    std::vector<FlatteningEntry> entries; ///< ascending peak count
};
struct FlatteningReport {
    std::vector<FlatteningRow> rows;
};
FlatteningReport compare_flattening(const ExperimentResult& result);

/// Declarative "key = value" config text (optionally under an [experiment]
/// section header, '#' comments). Unknown keys are errors. Recognized keys:
/// n, k, betas, measures, isolate, trials, seed, reference, fit, threads.
ExperimentConfig load_config(std::istream& in);

/// Expand the CLI/config measure list: "all" means the seven measures plus
/// the no-isolation baseline; otherwise a comma-free single token per call
/// ("none" or a measure name).
std::optional<Measure> parse_measure_token(const std::string& token);

/// Canonical one-line description of a cell's provenance, embedded in
/// histogram dumps.
std::string config_fingerprint(const ExperimentConfig& config, double beta,
                               const std::optional<Measure>& measure);

} // namespace flatcurve

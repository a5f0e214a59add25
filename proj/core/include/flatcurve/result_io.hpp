#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flatcurve/experiment.hpp"

namespace flatcurve {

/// Column order is part of the format:
/// beta,measure,L_mean,C_mean,S1,S2,S3,peak_distance,peak_count,
/// gamma_a,gamma_b,unreachable_frac,trials,seed
/// Reals are rendered with 6 significant digits; undefined values as "nan".
void emit_csv(const ExperimentResult& result, std::ostream& out);
void emit_csv_file(const ExperimentResult& result, const std::string& path);

/// JSON document with the config, per-cell metrics, full histograms and the
/// fitted-curve points. Reals are rounded to 6 significant digits before
/// serialization, so emit -> read -> emit is byte-stable.
void emit_json(const ExperimentResult& result, std::ostream& out);
void emit_json_file(const ExperimentResult& result, const std::string& path);

ExperimentResult read_result_json(std::istream& in);
ExperimentResult read_result_json_file(const std::string& path);

/// The grid the per-cell curve points are sampled on: step 1/8 from 1/8 up
/// to max histogram distance + 2.
std::vector<double> curve_grid(const DistanceHistogram& h);

/// Round to 6 significant digits (the file precision).
double round6(double x);

/// "%.6g" rendering used by both emitters.
std::string format6(double x);

} // namespace flatcurve

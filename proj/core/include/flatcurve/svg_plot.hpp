#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flatcurve/experiment.hpp"

namespace flatcurve {

/// One figure per measure: normalized distance-distribution bars overlaid
/// with the fitted Gamma curve, one series per beta. Axes are labeled
/// "iteration/distance" and "fitted PDF value"; the legend carries each
/// series' beta and mean clustering.
void emit_plot_svg(const ExperimentResult& result,
                   const std::optional<Measure>& measure, std::ostream& out);

/// Plain curve-point table for the same figure: beta,x,pdf rows.
void emit_curve_csv(const ExperimentResult& result,
                    const std::optional<Measure>& measure, std::ostream& out);

/// Writes curves_<measure>.svg and curves_<measure>.csv into out_dir for
/// every measure present in the result. Returns the paths written.
std::vector<std::string> emit_plots(const ExperimentResult& result,
                                    const std::string& out_dir);

} // namespace flatcurve

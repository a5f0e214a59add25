#include "flatcurve/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "flatcurve/errors.hpp"
#include "flatcurve/result_io.hpp"

namespace flatcurve {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 64, kRight = 24, kTop = 40, kBottom = 56;

const char* const kPalette[] = {"#4063d8", "#d66a2c", "#389826", "#cb3c33",
                                "#9558b2", "#8a7b4b", "#d45da0", "#5f6f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Series {
    const CellResult* cell;
    std::vector<std::pair<std::uint32_t, double>> pmf;
    std::vector<std::pair<double, double>> curve;
};

std::vector<Series> collect(const ExperimentResult& result,
                            const std::optional<Measure>& measure) {
    std::vector<Series> series;
    for (const CellResult& cell : result.cells) {
        if (cell.measure != measure) continue;
        Series s;
        s.cell = &cell;
        if (cell.histogram.total_mass() > 0) s.pmf = normalize(cell.histogram);
        if (cell.gamma) {
            // sample at file precision so figures rendered from a result json
            // match figures rendered from the in-memory result byte for byte
            const GammaParams rounded{round6(cell.gamma->params.shape),
                                      round6(cell.gamma->params.scale)};
            s.curve = curve_points(rounded, curve_grid(cell.histogram));
        }
        series.push_back(std::move(s));
    }
    std::stable_sort(series.begin(), series.end(), [](const Series& a, const Series& b) {
        return a.cell->beta < b.cell->beta;
    });
    return series;
}

} // namespace

void emit_plot_svg(const ExperimentResult& result,
                   const std::optional<Measure>& measure, std::ostream& out) {
    const std::vector<Series> series = collect(result, measure);
    if (series.empty())
        throw std::invalid_argument("emit_plot_svg: result has no cell for this measure");

    double x_max = 2.0, y_max = 0.0;
    for (const Series& s : series) {
        for (const auto& [d, mass] : s.pmf) {
            x_max = std::max(x_max, static_cast<double>(d));
            y_max = std::max(y_max, mass);
        }
        for (const auto& [x, y] : s.curve) y_max = std::max(y_max, y);
    }
    x_max += 1.0;
    if (y_max <= 0.0) y_max = 1.0;
    y_max *= 1.08;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto sx = [&](double x) { return kLeft + x / x_max * plot_w; };
    const auto sy = [&](double y) { return kTop + plot_h - y / y_max * plot_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    const std::string title =
        measure ? "isolation by " + std::string(to_string(*measure)) : "no isolation";
    out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
           "font-size=\"15\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop + plot_h) << "\" x2=\""
        << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(kTop + plot_h)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\""
        << fmt(kLeft) << "\" y2=\"" << fmt(kTop + plot_h) << "\" stroke=\"black\"/>\n";

    const int x_tick_step = std::max(1, static_cast<int>(x_max) / 12);
    for (int d = 0; d <= static_cast<int>(x_max); d += x_tick_step) {
        out << "<line x1=\"" << fmt(sx(d)) << "\" y1=\"" << fmt(kTop + plot_h)
            << "\" x2=\"" << fmt(sx(d)) << "\" y2=\"" << fmt(kTop + plot_h + 4)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(sx(d)) << "\" y=\"" << fmt(kTop + plot_h + 18)
            << "\" text-anchor=\"middle\">" << d << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double y = y_max * i / 4.0;
        out << "<line x1=\"" << fmt(kLeft - 4) << "\" y1=\"" << fmt(sy(y)) << "\" x2=\""
            << fmt(kLeft) << "\" y2=\"" << fmt(sy(y)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(sy(y) + 4)
            << "\" text-anchor=\"end\">" << format6(round6(y)) << "</text>\n";
    }
    out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 12)
        << "\" text-anchor=\"middle\">iteration/distance</text>\n";
    out << "<text x=\"16\" y=\"" << fmt(kTop + plot_h / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << fmt(kTop + plot_h / 2)
        << ")\">fitted PDF value</text>\n";

    // histogram bars: per distance, the series split the [d-0.4, d+0.4] band
    const double band = 0.8 / static_cast<double>(series.size());
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        out << "<g fill=\"" << color << "\" fill-opacity=\"0.45\">\n";
        for (const auto& [d, mass] : series[si].pmf) {
            const double x0 = sx(d - 0.4 + band * static_cast<double>(si));
            const double x1 = sx(d - 0.4 + band * static_cast<double>(si + 1));
            out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(sy(mass)) << "\" width=\""
                << fmt(x1 - x0) << "\" height=\"" << fmt(sy(0) - sy(mass)) << "\"/>\n";
        }
        out << "</g>\n";
    }

    // fitted curves
    for (std::size_t si = 0; si < series.size(); ++si) {
        if (series[si].curve.empty()) continue;
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
        for (const auto& [x, y] : series[si].curve) {
            if (x > x_max) break;
            out << fmt(sx(x)) << "," << fmt(sy(std::min(y, y_max))) << " ";
        }
        out << "\"/>\n";
    }

    // legend: beta and clustering per series
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        const double ly = kTop + 10 + 18 * static_cast<double>(si);
        out << "<rect x=\"" << fmt(kLeft + plot_w - 150) << "\" y=\"" << fmt(ly)
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << fmt(kLeft + plot_w - 132) << "\" y=\"" << fmt(ly + 10)
            << "\">beta=" << format6(series[si].cell->beta)
            << " (C=" << format6(round6(series[si].cell->mean_clustering)) << ")</text>\n";
    }

    out << "</svg>\n";
}

void emit_curve_csv(const ExperimentResult& result,
                    const std::optional<Measure>& measure, std::ostream& out) {
    const std::vector<Series> series = collect(result, measure);
    if (series.empty())
        throw std::invalid_argument("emit_curve_csv: result has no cell for this measure");
    out << "beta,x,pdf\n";
    for (const Series& s : series)
        for (const auto& [x, y] : s.curve)
            out << format6(s.cell->beta) << ',' << format6(x) << ',' << format6(round6(y))
                << "\n";
}

std::vector<std::string> emit_plots(const ExperimentResult& result,
                                    const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create directory " + out_dir + ": " + ec.message());

    std::vector<std::optional<Measure>> seen;
    for (const CellResult& cell : result.cells)
        if (std::find(seen.begin(), seen.end(), cell.measure) == seen.end())
            seen.push_back(cell.measure);

    std::vector<std::string> written;
    for (const auto& measure : seen) {
        const std::string stem =
            out_dir + "/curves_" + (measure ? std::string(to_string(*measure)) : "none");
        {
            std::ostringstream svg;
            emit_plot_svg(result, measure, svg);
            std::ofstream f(stem + ".svg", std::ios::binary);
            if (!f) throw IoError("cannot open for writing: " + stem + ".svg");
            f << svg.str();
        }
        {
            std::ostringstream csv;
            emit_curve_csv(result, measure, csv);
            std::ofstream f(stem + ".csv", std::ios::binary);
            if (!f) throw IoError("cannot open for writing: " + stem + ".csv");
            f << csv.str();
        }
        written.push_back(stem + ".svg");
        written.push_back(stem + ".csv");
    }
    return written;
}

} // namespace flatcurve

#include "flatcurve/result_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "flatcurve/errors.hpp"

namespace flatcurve {

using nlohmann::json;

std::string format6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double round6(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format6(x).c_str(), nullptr);
}

namespace {

std::string opt6(const std::optional<double>& v) {
    return v ? format6(*v) : "nan";
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << body;
    if (!out) throw IoError("write failed: " + path);
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["betas"] = cfg.betas;
    json measures = json::array();
    for (const auto& m : cfg.measures)
        measures.push_back(m ? std::string(to_string(*m)) : "none");
    j["measures"] = measures;
    j["isolation_fraction"] = cfg.isolation_fraction;
    j["trials"] = cfg.trials;
    j["master_seed"] = cfg.master_seed;
    j["reference_mode"] =
        cfg.reference_mode == ReferenceMode::Analytic ? "analytic" : "empirical";
    j["fit_method"] = cfg.fit_method == FitMethod::Mle ? "mle" : "mom";
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.n = j.at("n").get<NodeId>();
    cfg.k = j.at("k").get<NodeId>();
    cfg.betas = j.at("betas").get<std::vector<double>>();
    for (const auto& m : j.at("measures"))
        cfg.measures.push_back(parse_measure_token(m.get<std::string>()));
    cfg.isolation_fraction = j.at("isolation_fraction").get<double>();
    cfg.trials = j.at("trials").get<std::uint32_t>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    cfg.reference_mode = j.at("reference_mode").get<std::string>() == "empirical"
                             ? ReferenceMode::Empirical
                             : ReferenceMode::Analytic;
    cfg.fit_method = j.at("fit_method").get<std::string>() == "mom"
                         ? FitMethod::MethodOfMoments
                         : FitMethod::Mle;
    return cfg;
}

} // namespace

void emit_csv(const ExperimentResult& result, std::ostream& out) {
    out << "beta,measure,L_mean,C_mean,S1,S2,S3,peak_distance,peak_count,"
           "gamma_a,gamma_b,unreachable_frac,trials,seed\n";
    for (const CellResult& cell : result.cells) {
        out << format6(cell.beta) << ','
            << (cell.measure ? to_string(*cell.measure) : "none") << ','
            << format6(cell.mean_path_length) << ','
            << format6(cell.mean_clustering) << ','
            << opt6(cell.mean_s1) << ',' << opt6(cell.mean_s2) << ','
            << opt6(cell.mean_s3) << ',' << cell.peak_distance << ','
            << cell.peak_count << ','
            << (cell.gamma ? format6(cell.gamma->params.shape) : "nan") << ','
            << (cell.gamma ? format6(cell.gamma->params.scale) : "nan") << ','
            << format6(cell.unreachable_fraction) << ','
            << cell.histogram.trials << ',' << result.config.master_seed << "\n";
    }
}

std::vector<double> curve_grid(const DistanceHistogram& h) {
    const std::uint32_t max_d = h.max_distance();
    std::vector<double> grid;
    const int steps = 8 * (static_cast<int>(max_d) + 2);
    grid.reserve(steps);
    for (int i = 1; i <= steps; ++i) grid.push_back(i / 8.0);
    return grid;
}

void emit_json(const ExperimentResult& result, std::ostream& out) {
    json doc;
    doc["config"] = config_to_json(result.config);

    json cells = json::array();
    for (const CellResult& cell : result.cells) {
        json c;
        c["beta"] = cell.beta;
        c["measure"] = cell.measure ? std::string(to_string(*cell.measure)) : "none";
        c["L_mean"] = round6(cell.mean_path_length);
        c["C_mean"] = round6(cell.mean_clustering);
        c["S1"] = cell.mean_s1 ? json(round6(*cell.mean_s1)) : json();
        c["S2"] = cell.mean_s2 ? json(round6(*cell.mean_s2)) : json();
        c["S3"] = cell.mean_s3 ? json(round6(*cell.mean_s3)) : json();
        c["peak_distance"] = cell.peak_distance;
        c["peak_count"] = cell.peak_count;
        c["unreachable_frac"] = round6(cell.unreachable_fraction);
        c["trials"] = cell.histogram.trials;
        c["unreachable_total"] = cell.histogram.unreachable_total;

        json distances = json::array(), counts = json::array();
        for (std::size_t d = 1; d < cell.histogram.counts.size(); ++d) {
            if (cell.histogram.counts[d] > 0) {
                distances.push_back(d);
                counts.push_back(cell.histogram.counts[d]);
            }
        }
        c["histogram"] = {{"distance", distances}, {"count", counts}};

        if (cell.gamma) {
            // Curve points are sampled from the rounded parameters so that
            // emit -> read -> emit reproduces them byte for byte.
            const GammaParams stored{round6(cell.gamma->params.shape),
                                     round6(cell.gamma->params.scale)};
            c["gamma"] = {{"shape", stored.shape},
                          {"scale", stored.scale},
                          {"log_likelihood", round6(cell.gamma->diag.log_likelihood)},
                          {"sample_count", cell.gamma->diag.sample_count},
                          {"iterations", cell.gamma->diag.iterations},
                          {"shape_gt_one", cell.gamma->diag.shape_gt_one}};
            json xs = json::array(), ys = json::array();
            for (const auto& [x, y] : curve_points(stored, curve_grid(cell.histogram))) {
                xs.push_back(round6(x));
                ys.push_back(round6(y));
            }
            c["curve"] = {{"x", xs}, {"pdf", ys}};
        } else {
            c["gamma"] = json();
            c["curve"] = json();
        }
        cells.push_back(std::move(c));
    }
    doc["cells"] = std::move(cells);
    out << doc.dump(2) << "\n";
}

ExperimentResult read_result_json(std::istream& in) {
    json doc = json::parse(in);
    ExperimentResult result;
    result.config = config_from_json(doc.at("config"));
    for (const json& c : doc.at("cells")) {
        CellResult cell;
        cell.beta = c.at("beta").get<double>();
        cell.measure = parse_measure_token(c.at("measure").get<std::string>());
        cell.mean_path_length = c.at("L_mean").get<double>();
        cell.mean_clustering = c.at("C_mean").get<double>();
        if (!c.at("S1").is_null()) cell.mean_s1 = c.at("S1").get<double>();
        if (!c.at("S2").is_null()) cell.mean_s2 = c.at("S2").get<double>();
        if (!c.at("S3").is_null()) cell.mean_s3 = c.at("S3").get<double>();
        cell.peak_distance = c.at("peak_distance").get<std::uint32_t>();
        cell.peak_count = c.at("peak_count").get<std::uint64_t>();
        cell.unreachable_fraction = c.at("unreachable_frac").get<double>();

        const auto& hist = c.at("histogram");
        const auto distances = hist.at("distance").get<std::vector<std::uint32_t>>();
        const auto counts = hist.at("count").get<std::vector<std::uint64_t>>();
        if (distances.size() != counts.size())
            throw IoError("result json: histogram arrays disagree in length");
        std::uint32_t max_d = 0;
        for (std::uint32_t d : distances) max_d = std::max(max_d, d);
        cell.histogram.counts.assign(max_d + 1, 0);
        for (std::size_t i = 0; i < distances.size(); ++i)
            cell.histogram.counts[distances[i]] = counts[i];
        cell.histogram.trials = c.at("trials").get<std::uint64_t>();
        cell.histogram.unreachable_total = c.at("unreachable_total").get<std::uint64_t>();

        if (!c.at("gamma").is_null()) {
            const auto& gj = c.at("gamma");
            GammaFit fit;
            fit.params.shape = gj.at("shape").get<double>();
            fit.params.scale = gj.at("scale").get<double>();
            fit.diag.log_likelihood = gj.at("log_likelihood").get<double>();
            fit.diag.sample_count = gj.at("sample_count").get<std::size_t>();
            fit.diag.iterations = gj.at("iterations").get<int>();
            fit.diag.shape_gt_one = gj.at("shape_gt_one").get<bool>();
            cell.gamma = fit;
        }
        result.cells.push_back(std::move(cell));
    }
    return result;
}

void emit_csv_file(const ExperimentResult& result, const std::string& path) {
    std::ostringstream body;
    emit_csv(result, body);
    write_file(path, body.str());
}

void emit_json_file(const ExperimentResult& result, const std::string& path) {
    std::ostringstream body;
    emit_json(result, body);
    write_file(path, body.str());
}

ExperimentResult read_result_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    try {
        return read_result_json(in);
    } catch (const json::exception& e) {
        throw IoError("malformed result json in " + path + ": " + e.what());
    }
}

} // namespace flatcurve

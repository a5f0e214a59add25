#include "flatcurve/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "flatcurve/rng.hpp"

namespace flatcurve {

void ExperimentConfig::validate() const {
    WsParams{n, k, 0.0, 0}.validate();
    if (betas.empty()) throw std::invalid_argument("ExperimentConfig: no betas");
    for (double b : betas)
        if (!(b >= 0.0 && b <= 1.0))
            throw std::invalid_argument("ExperimentConfig: beta outside [0, 1]");
    if (measures.empty()) throw std::invalid_argument("ExperimentConfig: no measures");
    if (!(isolation_fraction >= 0.0 && isolation_fraction < 1.0))
        throw std::invalid_argument("ExperimentConfig: isolation fraction outside [0, 1)");
    if (trials == 0) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    // "none" inside a sweep is the no-isolation baseline column; only a sweep
    // made of nothing but baselines contradicts a positive fraction.
    if (isolation_fraction > 0.0 &&
        std::none_of(measures.begin(), measures.end(),
                     [](const std::optional<Measure>& m) { return m.has_value(); }))
        throw std::invalid_argument(
            "ExperimentConfig: isolation fraction > 0 needs at least one centrality measure");
}

namespace {

struct TrialOutcome {
    double clustering = 0.0;
    PathLength path_length;
    SmallWorldness indices;
    DistanceHistogram histogram;
};

TrialOutcome run_cell_trial(const ExperimentConfig& cfg, double beta,
                            const IsolationPolicy& policy, const ReferenceValues& refs,
                            std::uint64_t trial_seed) {
    SplitMix64 rng(trial_seed);
    const Graph g = watts_strogatz(cfg.n, cfg.k, beta, rng);

    TrialOutcome out;
    out.clustering = global_clustering(g);
    out.path_length = characteristic_path_length(g);
    if (out.path_length.defined)
        out.indices = small_worldness(out.clustering, out.path_length.mean, refs);
    out.histogram = spread_with_isolation(g, policy, rng);
    return out;
}

CellResult reduce_cell(const ExperimentConfig& cfg, double beta,
                       const std::optional<Measure>& measure,
                       std::vector<TrialOutcome>& outcomes) {
    CellResult cell;
    cell.beta = beta;
    cell.measure = measure;

    double c_sum = 0.0, l_sum = 0.0;
    double s1_sum = 0.0, s2_sum = 0.0, s3_sum = 0.0;
    std::uint32_t l_count = 0, s1_count = 0, s2_count = 0, s3_count = 0;
    std::vector<DistanceHistogram> hists;
    hists.reserve(outcomes.size());
    for (TrialOutcome& t : outcomes) {
        c_sum += t.clustering;
        if (t.path_length.defined) {
            l_sum += t.path_length.mean;
            ++l_count;
        }
        if (t.indices.s1) { s1_sum += *t.indices.s1; ++s1_count; }
        if (t.indices.s2) { s2_sum += *t.indices.s2; ++s2_count; }
        if (t.indices.s3) { s3_sum += *t.indices.s3; ++s3_count; }
        hists.push_back(std::move(t.histogram));
    }
    cell.mean_clustering = c_sum / static_cast<double>(outcomes.size());
    cell.mean_path_length = l_count > 0 ? l_sum / l_count : 0.0;
    if (s1_count == outcomes.size()) cell.mean_s1 = s1_sum / s1_count;
    if (s2_count == outcomes.size()) cell.mean_s2 = s2_sum / s2_count;
    if (s3_count == outcomes.size()) cell.mean_s3 = s3_sum / s3_count;

    cell.histogram = aggregate(hists);
    const auto [pd, pc] = peak(cell.histogram);
    cell.peak_distance = pd;
    cell.peak_count = pc;

    const double effective_fraction = measure ? cfg.isolation_fraction : 0.0;
    const std::uint64_t survivors =
        cfg.n - static_cast<std::uint64_t>(
                    std::floor(effective_fraction * static_cast<double>(cfg.n) + 1e-9));
    const std::uint64_t denom = cell.histogram.trials * (survivors - 1);
    cell.unreachable_fraction =
        denom > 0 ? static_cast<double>(cell.histogram.unreachable_total) /
                        static_cast<double>(denom)
                  : 0.0;

    // Pool the distance samples (value = distance, weight = count).
    std::vector<double> values, weights;
    for (std::size_t d = 1; d < cell.histogram.counts.size(); ++d) {
        if (cell.histogram.counts[d] > 0) {
            values.push_back(static_cast<double>(d));
            weights.push_back(static_cast<double>(cell.histogram.counts[d]));
        }
    }
    if (values.size() >= 2) {
        cell.gamma = fit_gamma_weighted(values, weights, cfg.fit_method);
    }
    return cell;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();

    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned workers =
        std::max(1u, config.threads != 0 ? config.threads : (hw != 0 ? hw : 1u));

    const ReferenceValues refs = reference_values(
        config.n, config.k, config.reference_mode, mix_seed(config.master_seed, 0x5EEDull));

    ExperimentResult result;
    result.config = config;

    for (std::size_t bi = 0; bi < config.betas.size(); ++bi) {
        for (std::size_t mi = 0; mi < config.measures.size(); ++mi) {
            const double beta = config.betas[bi];
            const std::optional<Measure>& measure = config.measures[mi];
            const IsolationPolicy policy{measure,
                                         measure ? config.isolation_fraction : 0.0};
            const std::uint64_t cell_seed =
                mix_seed(mix_seed(config.master_seed, bi), mi);

            const auto t0 = std::chrono::steady_clock::now();
            std::vector<TrialOutcome> outcomes(config.trials);
            std::exception_ptr failure;
            std::mutex failure_mutex;

            auto worker = [&](unsigned w) {
                for (std::uint32_t t = w; t < config.trials; t += workers) {
                    try {
                        outcomes[t] = run_cell_trial(config, beta, policy, refs,
                                                     mix_seed(cell_seed, t));
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            };

            if (workers == 1 || config.trials == 1) {
                worker(0);
            } else {
                std::vector<std::thread> pool;
                for (unsigned w = 0; w < std::min<unsigned>(workers, config.trials); ++w)
                    pool.emplace_back(worker, w);
                for (auto& th : pool) th.join();
            }

            try {
                if (failure) std::rethrow_exception(failure);
                CellResult cell = reduce_cell(config, beta, measure, outcomes);
                cell.wall_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
                result.cells.push_back(std::move(cell));
            } catch (const std::exception& e) {
                std::ostringstream ctx;
                ctx << "cell beta=" << beta << " measure="
                    << (measure ? to_string(*measure) : "none") << ": " << e.what();
                throw std::runtime_error(ctx.str());
            }
        }
    }
    return result;
}

FlatteningReport compare_flattening(const ExperimentResult& result) {
    std::map<double, const CellResult*> baselines;
    for (const CellResult& cell : result.cells)
        if (!cell.measure) baselines[cell.beta] = &cell;

    FlatteningReport report;
    std::map<double, FlatteningRow> rows;
    for (const CellResult& cell : result.cells) {
        auto base = baselines.find(cell.beta);
        if (base == baselines.end())
            throw std::invalid_argument(
                "compare_flattening: no baseline (measure none) cell at beta=" +
                std::to_string(cell.beta));
        FlatteningRow& row = rows[cell.beta];
        row.beta = cell.beta;
        row.entries.push_back(FlatteningEntry{
            cell.measure, cell.peak_count,
            static_cast<double>(cell.peak_count) /
                static_cast<double>(base->second->peak_count)});
    }
    for (auto& [beta, row] : rows) {
        std::stable_sort(row.entries.begin(), row.entries.end(),
                         [](const FlatteningEntry& a, const FlatteningEntry& b) {
                             return a.peak_count < b.peak_count;
                         });
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::optional<Measure> parse_measure_token(const std::string& token) {
    if (token == "none") return std::nullopt;
    const auto m = measure_from_string(token);
    if (!m) throw std::invalid_argument("unknown centrality measure: " + token);
    return m;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

} // namespace

ExperimentConfig load_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (trim(line) != "[experiment]")
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unknown section " + line);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        try {
            if (key == "n") cfg.n = static_cast<NodeId>(std::stoul(value));
            else if (key == "k") cfg.k = static_cast<NodeId>(std::stoul(value));
            else if (key == "betas") {
                cfg.betas.clear();
                for (const std::string& tok : split_list(value))
                    cfg.betas.push_back(std::stod(tok));
            } else if (key == "measures") {
                cfg.measures.clear();
                for (const std::string& tok : split_list(value)) {
                    if (tok == "all") {
                        for (int m = 0; m <= static_cast<int>(Measure::Eigenvector); ++m)
                            cfg.measures.push_back(static_cast<Measure>(m));
                        cfg.measures.push_back(std::nullopt);
                    } else {
                        cfg.measures.push_back(parse_measure_token(tok));
                    }
                }
            } else if (key == "isolate") cfg.isolation_fraction = std::stod(value);
            else if (key == "trials") cfg.trials = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "seed") cfg.master_seed = std::stoull(value);
            else if (key == "reference") {
                if (value == "analytic") cfg.reference_mode = ReferenceMode::Analytic;
                else if (value == "empirical") cfg.reference_mode = ReferenceMode::Empirical;
                else throw std::invalid_argument("expected analytic|empirical");
            } else if (key == "fit") {
                if (value == "mle") cfg.fit_method = FitMethod::Mle;
                else if (value == "mom") cfg.fit_method = FitMethod::MethodOfMoments;
                else throw std::invalid_argument("expected mle|mom");
            } else if (key == "threads") cfg.threads = static_cast<unsigned>(std::stoul(value));
            else throw std::invalid_argument("unknown key \"" + key + "\"");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
    return cfg;
}

std::string config_fingerprint(const ExperimentConfig& config, double beta,
                               const std::optional<Measure>& measure) {
    std::ostringstream out;
    out << "n=" << config.n << " k=" << config.k << " beta=" << beta
        << " measure=" << (measure ? to_string(*measure) : "none")
        << " isolate=" << (measure ? config.isolation_fraction : 0.0)
        << " trials=" << config.trials << " seed=" << config.master_seed
        << " reference="
        << (config.reference_mode == ReferenceMode::Analytic ? "analytic" : "empirical")
        << " fit=" << (config.fit_method == FitMethod::Mle ? "mle" : "mom");
    return out.str();
}

} // namespace flatcurve

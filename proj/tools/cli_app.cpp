#include "cli_app.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "flatcurve/epidemic.hpp"
#include "flatcurve/errors.hpp"
#include "flatcurve/experiment.hpp"
#include "flatcurve/generators.hpp"
#include "flatcurve/metrics.hpp"
#include "flatcurve/result_io.hpp"
#include "flatcurve/svg_plot.hpp"

namespace flatcurve::cli {

namespace {

std::string render_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

unsigned env_default_threads() {
    if (const char* env = std::getenv("FLATCURVE_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0') return static_cast<unsigned>(v);
    }
    return 0;
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

} // namespace

CliInvocation parse_cli(const std::vector<std::string>& args) {
    CliInvocation inv;
    inv.threads = env_default_threads();

    CLI::App app{"small-world infection-curve toolkit"};
    app.require_subcommand(1);

    const auto add_graph_flags = [&](CLI::App* cmd, bool with_model) {
        if (with_model)
            cmd->add_option("--model", inv.model, "graph model: ws | ring | er")
                ->capture_default_str()
                ->check(CLI::IsMember({"ws", "ring", "er"}));
        cmd->add_option("--n", inv.n, "node count")->capture_default_str();
        cmd->add_option("--k", inv.k, "mean degree (even)")->capture_default_str();
        cmd->add_option("--beta", inv.beta, "rewiring probability")->capture_default_str();
        cmd->add_option("--seed", inv.seed, "rng seed")->capture_default_str();
    };

    CLI::App* generate = app.add_subcommand("generate", "emit a graph as an edge list");
    add_graph_flags(generate, true);
    generate->add_option("--p", inv.er_p, "er edge probability")->capture_default_str();
    generate->add_option("--out", inv.out, "output path, - for stdout")->capture_default_str();

    CLI::App* metrics =
        app.add_subcommand("metrics", "clustering, path length and small-worldness");
    add_graph_flags(metrics, false);
    metrics->add_option("--in", inv.in, "read an edge list instead of generating")
        ->capture_default_str();
    metrics->add_option("--trials", inv.metric_trials, "graphs to average over")
        ->capture_default_str();
    metrics->add_option("--reference", inv.reference, "reference values: analytic | empirical")
        ->capture_default_str()
        ->check(CLI::IsMember({"analytic", "empirical"}));
    metrics->add_option("--out", inv.out, "output path, - for stdout")->capture_default_str();

    CLI::App* centrality = app.add_subcommand("centrality", "per-node influence scores");
    add_graph_flags(centrality, false);
    centrality->add_option("--in", inv.in, "read an edge list instead of generating")
        ->capture_default_str();
    centrality
        ->add_option("--measure", inv.measure,
                     "degree | betweenness | closeness | katz | pagerank | exf | eigenvector")
        ->capture_default_str();
    centrality
        ->add_option("--top", inv.top, "selection fraction; > 0 prints only the selected set")
        ->capture_default_str();
    centrality->add_option("--damping", inv.damping, "pagerank damping")->capture_default_str();
    centrality->add_option("--alpha", inv.alpha, "katz attenuation, 0 = 0.9/lambda_max")
        ->capture_default_str();
    centrality->add_option("--out", inv.out, "output path, - for stdout")->capture_default_str();

    CLI::App* spread = app.add_subcommand("spread", "single-trial infection histogram");
    add_graph_flags(spread, false);
    spread
        ->add_option("--source", inv.source,
                     "seed node id in the generated graph; -1 draws uniformly")
        ->capture_default_str();
    spread->add_option("--isolate", inv.isolate, "fraction of top-ranked nodes to remove")
        ->capture_default_str();
    spread->add_option("--centrality", inv.spread_measure, "ranking measure or none")
        ->capture_default_str();
    spread->add_option("--out", inv.out, "output path, - for stdout")->capture_default_str();

    CLI::App* experiment =
        app.add_subcommand("experiment", "monte-carlo sweep over (beta, measure) cells");
    experiment->add_option("--config", inv.config_path, "key = value config file")
        ->capture_default_str();
    CLI::Option* opt_n = experiment->add_option("--n", inv.n, "node count");
    opt_n->capture_default_str();
    CLI::Option* opt_k = experiment->add_option("--k", inv.k, "mean degree (even)");
    opt_k->capture_default_str();
    CLI::Option* opt_betas =
        experiment->add_option("--beta", inv.betas_csv, "comma-separated beta list");
    opt_betas->capture_default_str();
    CLI::Option* opt_measures = experiment->add_option(
        "--centrality", inv.measures_csv, "comma-separated measures, none, or all");
    opt_measures->capture_default_str();
    CLI::Option* opt_isolate =
        experiment->add_option("--isolate", inv.isolate, "isolation fraction");
    opt_isolate->capture_default_str();
    CLI::Option* opt_trials =
        experiment->add_option("--trials", inv.trials, "monte-carlo trials per cell");
    opt_trials->capture_default_str();
    CLI::Option* opt_seed = experiment->add_option("--seed", inv.seed, "master seed");
    opt_seed->capture_default_str();
    CLI::Option* opt_reference =
        experiment->add_option("--reference", inv.reference, "analytic | empirical");
    opt_reference->capture_default_str()->check(CLI::IsMember({"analytic", "empirical"}));
    CLI::Option* opt_fit = experiment->add_option("--fit", inv.fit, "mle | mom");
    opt_fit->capture_default_str()->check(CLI::IsMember({"mle", "mom"}));
    CLI::Option* opt_threads = experiment->add_option(
        "--threads", inv.threads, "worker threads; 0 = FLATCURVE_THREADS env or hardware");
    opt_threads->capture_default_str();
    experiment->add_option("--out", inv.exp_out, "csv output path")->capture_default_str();
    experiment->add_option("--json", inv.json_out, "json output path; default derives from --out")
        ->capture_default_str();
    experiment->add_option("--plot-dir", inv.plot_dir, "also emit svg/csv curves here")
        ->capture_default_str();

    CLI::App* plot = app.add_subcommand("plot", "render svg curves from a result json");
    plot->add_option("--in", inv.in, "result json path")->required();
    plot->add_option("--out-dir", inv.out_dir, "directory for svg/csv output")
        ->capture_default_str();

    app.add_flag("-v,--verbose", inv.verbosity, "increase logging on stderr");
    // top-level flags (-v) remain usable after a subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("flatcurve");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        for (CLI::App* sub : app.get_subcommands())
            throw HelpRequested{sub->help()};
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (generate->parsed()) inv.command = CliInvocation::Command::Generate;
    if (metrics->parsed()) inv.command = CliInvocation::Command::Metrics;
    if (centrality->parsed()) inv.command = CliInvocation::Command::Centrality;
    if (spread->parsed()) inv.command = CliInvocation::Command::Spread;
    if (experiment->parsed()) inv.command = CliInvocation::Command::Experiment;
    if (plot->parsed()) inv.command = CliInvocation::Command::Plot;

    // flag-level validation beyond types
    if (spread->parsed()) {
        if (!(inv.isolate >= 0.0 && inv.isolate < 1.0))
            throw UsageError("--isolate must lie in [0, 1)");
        if (inv.isolate > 0.0 && inv.spread_measure == "none")
            throw UsageError("--isolate > 0 conflicts with --centrality none");
        if (inv.spread_measure != "none" && !measure_from_string(inv.spread_measure))
            throw UsageError("unknown --centrality value: " + inv.spread_measure);
    }
    if (experiment->parsed()) {
        if (!(inv.isolate >= 0.0 && inv.isolate < 1.0))
            throw UsageError("--isolate must lie in [0, 1)");
        if (inv.measures_csv != "all") {
            bool any_measure = false;
            for (const std::string& tok : split_csv(inv.measures_csv)) {
                if (tok == "none") continue;
                if (!measure_from_string(tok))
                    throw UsageError("unknown --centrality value: " + tok);
                any_measure = true;
            }
            if (inv.isolate > 0.0 && !any_measure)
                throw UsageError("--isolate > 0 conflicts with --centrality none");
        }
        // a config file supplies values for flags the user did not pass
        if (!inv.config_path.empty()) {
            std::ifstream f(inv.config_path);
            if (!f) throw IoError("cannot open for reading: " + inv.config_path);
            const ExperimentConfig file_cfg = load_config(f);
            if (opt_n->count() == 0) inv.n = file_cfg.n;
            if (opt_k->count() == 0) inv.k = file_cfg.k;
            if (opt_betas->count() == 0 && !file_cfg.betas.empty()) {
                std::string joined;
                for (double b : file_cfg.betas) {
                    if (!joined.empty()) joined += ',';
                    joined += render_double(b);
                }
                inv.betas_csv = joined;
            }
            if (opt_measures->count() == 0 && !file_cfg.measures.empty()) {
                std::string joined;
                for (const auto& m : file_cfg.measures) {
                    if (!joined.empty()) joined += ',';
                    joined += m ? std::string(to_string(*m)) : "none";
                }
                inv.measures_csv = joined;
            }
            if (opt_isolate->count() == 0) inv.isolate = file_cfg.isolation_fraction;
            if (opt_trials->count() == 0) inv.trials = file_cfg.trials;
            if (opt_seed->count() == 0) inv.seed = file_cfg.master_seed;
            if (opt_reference->count() == 0)
                inv.reference = file_cfg.reference_mode == ReferenceMode::Empirical
                                    ? "empirical"
                                    : "analytic";
            if (opt_fit->count() == 0)
                inv.fit = file_cfg.fit_method == FitMethod::MethodOfMoments ? "mom" : "mle";
            if (opt_threads->count() == 0 && file_cfg.threads != 0)
                inv.threads = file_cfg.threads;
        }
        if (inv.json_out.empty()) {
            std::string base = inv.exp_out;
            const auto dot = base.rfind('.');
            if (dot != std::string::npos && base.find('/', dot) == std::string::npos)
                base.resize(dot);
            inv.json_out = base + ".json";
        }
    }
    if (centrality->parsed() && !measure_from_string(inv.measure))
        throw UsageError("unknown --measure value: " + inv.measure);
    if (inv.top < 0.0 || inv.top >= 1.0)
        throw UsageError("--top must lie in [0, 1)");
    return inv;
}

std::vector<std::string> render_argv(const CliInvocation& inv) {
    std::vector<std::string> a;
    const auto flag = [&](const char* name, const std::string& value) {
        a.push_back(name);
        a.push_back(value);
    };
    using Command = CliInvocation::Command;
    switch (inv.command) {
        case Command::Generate:
            a.push_back("generate");
            flag("--model", inv.model);
            flag("--n", std::to_string(inv.n));
            flag("--k", std::to_string(inv.k));
            flag("--beta", render_double(inv.beta));
            flag("--p", render_double(inv.er_p));
            flag("--seed", std::to_string(inv.seed));
            flag("--out", inv.out);
            break;
        case Command::Metrics:
            a.push_back("metrics");
            flag("--n", std::to_string(inv.n));
            flag("--k", std::to_string(inv.k));
            flag("--beta", render_double(inv.beta));
            flag("--seed", std::to_string(inv.seed));
            if (!inv.in.empty()) flag("--in", inv.in);
            flag("--trials", std::to_string(inv.metric_trials));
            flag("--reference", inv.reference);
            flag("--out", inv.out);
            break;
        case Command::Centrality:
            a.push_back("centrality");
            flag("--n", std::to_string(inv.n));
            flag("--k", std::to_string(inv.k));
            flag("--beta", render_double(inv.beta));
            flag("--seed", std::to_string(inv.seed));
            if (!inv.in.empty()) flag("--in", inv.in);
            flag("--measure", inv.measure);
            flag("--top", render_double(inv.top));
            flag("--damping", render_double(inv.damping));
            flag("--alpha", render_double(inv.alpha));
            flag("--out", inv.out);
            break;
        case Command::Spread:
            a.push_back("spread");
            flag("--n", std::to_string(inv.n));
            flag("--k", std::to_string(inv.k));
            flag("--beta", render_double(inv.beta));
            flag("--seed", std::to_string(inv.seed));
            flag("--source", std::to_string(inv.source));
            flag("--isolate", render_double(inv.isolate));
            flag("--centrality", inv.spread_measure);
            flag("--out", inv.out);
            break;
        case Command::Experiment:
            a.push_back("experiment");
            if (!inv.config_path.empty()) flag("--config", inv.config_path);
            flag("--n", std::to_string(inv.n));
            flag("--k", std::to_string(inv.k));
            flag("--beta", inv.betas_csv);
            flag("--centrality", inv.measures_csv);
            flag("--isolate", render_double(inv.isolate));
            flag("--trials", std::to_string(inv.trials));
            flag("--seed", std::to_string(inv.seed));
            flag("--reference", inv.reference);
            flag("--fit", inv.fit);
            flag("--threads", std::to_string(inv.threads));
            flag("--out", inv.exp_out);
            flag("--json", inv.json_out);
            if (!inv.plot_dir.empty()) flag("--plot-dir", inv.plot_dir);
            break;
        case Command::Plot:
            a.push_back("plot");
            flag("--in", inv.in);
            flag("--out-dir", inv.out_dir);
            break;
    }
    for (int i = 0; i < inv.verbosity; ++i) a.push_back("-v");
    return a;
}

namespace {

class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) : path_(path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open for writing: " + path);
        }
    }
    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
    void finish() {
        if (path_ != "-" && !file_) throw IoError("write failed: " + path_);
    }

private:
    std::string path_;
    std::ofstream file_;
};

Graph load_or_generate(const CliInvocation& inv) {
    if (!inv.in.empty()) {
        std::ifstream f(inv.in);
        if (!f) throw IoError("cannot open for reading: " + inv.in);
        return read_edge_list(f);
    }
    SplitMix64 rng(inv.seed);
    if (inv.model == "ring") return ring_lattice(inv.n, inv.k);
    if (inv.model == "er") return erdos_renyi(inv.n, inv.er_p, rng);
    return watts_strogatz(inv.n, inv.k, inv.beta, rng);
}

int run_generate(const CliInvocation& inv) {
    const Graph g = load_or_generate(inv);
    OutputTarget out(inv.out);
    write_edge_list(g, out.stream());
    out.finish();
    return 0;
}

int run_metrics(const CliInvocation& inv) {
    const ReferenceMode mode = inv.reference == "empirical" ? ReferenceMode::Empirical
                                                            : ReferenceMode::Analytic;
    OutputTarget out(inv.out);
    std::ostream& os = out.stream();

    if (!inv.in.empty()) {
        const Graph g = load_or_generate(inv);
        // reference values need an even k; fall back to the nearest even mean degree
        const double mean_deg =
            2.0 * static_cast<double>(g.edge_count()) / g.node_count();
        NodeId k_ref = static_cast<NodeId>(mean_deg / 2.0 + 0.5) * 2;
        const NodeId k_max = g.node_count() - 1 - ((g.node_count() - 1) % 2);
        k_ref = std::max<NodeId>(2, std::min<NodeId>(k_ref, k_max));
        const ReferenceValues refs =
            reference_values(g.node_count(), k_ref, mode, mix_seed(inv.seed, 1));
        const StructuralMetrics m = structural_metrics(g, refs);
        os << "C " << format6(m.clustering) << "\n";
        os << "L " << (m.path_length.defined ? format6(m.path_length.mean) : "undefined")
           << "\n";
        os << "disconnected_pair_fraction " << format6(m.path_length.disconnected_fraction)
           << "\n";
        os << "S1 " << (m.indices.s1 ? format6(*m.indices.s1) : "undefined") << "\n";
        os << "S2 " << (m.indices.s2 ? format6(*m.indices.s2) : "undefined") << "\n";
        os << "S3 " << (m.indices.s3 ? format6(*m.indices.s3) : "undefined") << "\n";
        out.finish();
        return 0;
    }

    const ReferenceValues refs =
        reference_values(inv.n, inv.k, mode, mix_seed(inv.seed, 1));
    double c = 0, l = 0, s1 = 0, s2 = 0, s3 = 0, frac = 0;
    for (std::uint32_t t = 0; t < inv.metric_trials; ++t) {
        const Graph g = watts_strogatz({inv.n, inv.k, inv.beta, mix_seed(inv.seed, t)});
        const StructuralMetrics m = structural_metrics(g, refs);
        c += m.clustering;
        l += m.path_length.mean;
        frac += m.path_length.disconnected_fraction;
        s1 += m.indices.s1.value_or(0.0);
        s2 += m.indices.s2.value_or(0.0);
        s3 += m.indices.s3.value_or(0.0);
    }
    const double t = inv.metric_trials;
    os << "C " << format6(c / t) << "\n";
    os << "L " << format6(l / t) << "\n";
    os << "disconnected_pair_fraction " << format6(frac / t) << "\n";
    os << "S1 " << format6(s1 / t) << "\n";
    os << "S2 " << format6(s2 / t) << "\n";
    os << "S3 " << format6(s3 / t) << "\n";
    out.finish();
    return 0;
}

int run_centrality(const CliInvocation& inv) {
    const Graph g = load_or_generate(inv);
    const Measure m = *measure_from_string(inv.measure);

    CentralityScores scores;
    switch (m) {
        case Measure::Katz:
            scores = katz_scores(g, inv.alpha > 0.0 ? std::optional<double>(inv.alpha)
                                                    : std::nullopt);
            break;
        case Measure::PageRank:
            scores = pagerank_scores(g, inv.damping);
            break;
        default:
            scores = compute_scores(g, m);
    }

    OutputTarget out(inv.out);
    std::ostream& os = out.stream();
    if (inv.top > 0.0) {
        const Ranking r = rank_top_fraction(scores, inv.top);
        os << "node,score\n";
        for (NodeId v : r.selected) os << v << ',' << format6(scores.scores[v]) << "\n";
    } else {
        os << "node,score\n";
        for (NodeId v = 0; v < g.node_count(); ++v)
            os << v << ',' << format6(scores.scores[v]) << "\n";
    }
    out.finish();
    return 0;
}

int run_spread(const CliInvocation& inv) {
    SplitMix64 rng(inv.seed);
    const Graph g = watts_strogatz(inv.n, inv.k, inv.beta, rng);

    IsolationPolicy policy;
    policy.fraction = inv.isolate;
    if (inv.spread_measure != "none") policy.measure = measure_from_string(inv.spread_measure);

    DistanceHistogram hist;
    if (inv.source < 0) {
        hist = spread_with_isolation(g, policy, rng);
    } else {
        if (inv.source >= static_cast<std::int64_t>(g.node_count()))
            throw std::invalid_argument("--source out of range");
        const NodeId old_source = static_cast<NodeId>(inv.source);
        if (policy.measure && policy.fraction > 0.0) {
            const Ranking r =
                rank_top_fraction(compute_scores(g, *policy.measure), policy.fraction);
            const IsolationResult iso = isolate(g, r.selected);
            const NodeId mapped = iso.old_to_new[old_source];
            if (mapped == IsolationResult::kRemoved)
                throw std::runtime_error("--source was removed by isolation");
            hist = distance_histogram(iso.graph, mapped);
        } else {
            hist = distance_histogram(g, old_source);
        }
    }

    std::ostringstream fp;
    fp << "n=" << inv.n << " k=" << inv.k << " beta=" << format6(inv.beta)
       << " measure=" << inv.spread_measure << " isolate=" << format6(inv.isolate)
       << " source=" << inv.source << " seed=" << inv.seed;
    OutputTarget out(inv.out);
    write_histogram_csv(hist, fp.str(), out.stream());
    out.finish();
    return 0;
}

// parse_cli already folded any config file into the invocation
ExperimentConfig build_experiment_config(const CliInvocation& inv) {
    ExperimentConfig cfg;
    cfg.n = inv.n;
    cfg.k = inv.k;
    cfg.betas.clear();
    for (const std::string& tok : split_csv(inv.betas_csv)) cfg.betas.push_back(std::stod(tok));
    cfg.measures.clear();
    for (const std::string& tok : split_csv(inv.measures_csv)) {
        if (tok == "all") {
            for (int m = 0; m <= static_cast<int>(Measure::Eigenvector); ++m)
                cfg.measures.push_back(static_cast<Measure>(m));
            cfg.measures.push_back(std::nullopt);
        } else {
            cfg.measures.push_back(parse_measure_token(tok));
        }
    }
    cfg.isolation_fraction = inv.isolate;
    cfg.trials = inv.trials;
    cfg.master_seed = inv.seed;
    cfg.reference_mode =
        inv.reference == "empirical" ? ReferenceMode::Empirical : ReferenceMode::Analytic;
    cfg.fit_method = inv.fit == "mom" ? FitMethod::MethodOfMoments : FitMethod::Mle;
    cfg.threads = inv.threads;
    return cfg;
}

int run_experiment_cmd(const CliInvocation& inv) {
    const ExperimentConfig cfg = build_experiment_config(inv);
    cfg.validate();
    const ExperimentResult result = run_experiment(cfg);

    emit_csv_file(result, inv.exp_out);
    emit_json_file(result, inv.json_out);
    if (!inv.plot_dir.empty()) emit_plots(result, inv.plot_dir);

    if (inv.verbosity > 0) {
        std::cerr << "wrote " << inv.exp_out << " and " << inv.json_out << "\n";
        for (const CellResult& cell : result.cells)
            std::cerr << "  beta=" << cell.beta << " measure="
                      << (cell.measure ? to_string(*cell.measure) : "none")
                      << " peak=" << cell.peak_count << " (" << cell.wall_ms << " ms)\n";
    }
    return 0;
}

int run_plot(const CliInvocation& inv) {
    const ExperimentResult result = read_result_json_file(inv.in);
    const auto written = emit_plots(result, inv.out_dir);
    if (inv.verbosity > 0)
        for (const std::string& path : written) std::cerr << "wrote " << path << "\n";
    return 0;
}

} // namespace

int run_invocation(const CliInvocation& inv) {
    using Command = CliInvocation::Command;
    switch (inv.command) {
        case Command::Generate: return run_generate(inv);
        case Command::Metrics: return run_metrics(inv);
        case Command::Centrality: return run_centrality(inv);
        case Command::Spread: return run_spread(inv);
        case Command::Experiment: return run_experiment_cmd(inv);
        case Command::Plot: return run_plot(inv);
    }
    return 2;
}

int app_main(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const CliInvocation inv = parse_cli(args);
        return run_invocation(inv);
    } catch (const HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace flatcurve::cli

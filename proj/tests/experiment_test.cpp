#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "flatcurve/experiment.hpp"
#include "flatcurve/result_io.hpp"
#include "oracles.hpp"

using namespace flatcurve;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.n = 60;
    cfg.k = 4;
    cfg.betas = {0.05, 0.2};
    cfg.measures = {std::nullopt, Measure::Degree, Measure::Closeness};
    cfg.isolation_fraction = 0.1;
    cfg.trials = 5;
    cfg.master_seed = 31337;
    return cfg;
}

std::string serialize(const ExperimentResult& r) {
    std::ostringstream csv, json;
    emit_csv(r, csv);
    emit_json(r, json);
    return csv.str() + "\n---\n" + json.str();
}

} // namespace

TEST_SUITE("experiment") {

TEST_CASE("config validation") {
    ExperimentConfig cfg = small_config();
    cfg.betas = {1.5};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = small_config();
    cfg.measures = {std::nullopt};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument); // isolation with only baselines

    cfg.isolation_fraction = 0.0;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("identical config and seed reproduce byte-identical output") {
    const ExperimentConfig cfg = small_config();
    const std::string a = serialize(run_experiment(cfg));
    const std::string b = serialize(run_experiment(cfg));
    CHECK(a == b);
}

TEST_CASE("output is independent of the thread count") {
    ExperimentConfig cfg = small_config();
    cfg.threads = 1;
    const std::string serial = serialize(run_experiment(cfg));
    cfg.threads = 4;
    const std::string parallel = serialize(run_experiment(cfg));
    CHECK(serial == parallel);
}

TEST_CASE("cells do not depend on which other cells run") {
    // seeds derive from cell indices, so dropping trailing betas or trailing
    // measures must leave the surviving cells bit-identical
    ExperimentConfig full = small_config();
    const ExperimentResult all = run_experiment(full);

    ExperimentConfig fewer = small_config();
    fewer.measures = {std::nullopt, Measure::Degree};
    fewer.betas = {full.betas[0]};
    const ExperimentResult sub = run_experiment(fewer);

    for (std::size_t bi = 0; bi < fewer.betas.size(); ++bi)
        for (std::size_t mi = 0; mi < fewer.measures.size(); ++mi) {
            const CellResult& a = sub.cells[bi * fewer.measures.size() + mi];
            const CellResult& b = all.cells[bi * full.measures.size() + mi];
            CHECK(a.histogram.counts == b.histogram.counts);
            CHECK(a.peak_count == b.peak_count);
            CHECK(a.mean_clustering == b.mean_clustering);
        }
}

TEST_CASE("histogram mass is conserved per cell") {
    const ExperimentResult r = run_experiment(small_config());
    for (const CellResult& cell : r.cells) {
        const std::uint64_t removed = cell.measure ? 6 : 0; // floor(0.1 * 60)
        const std::uint64_t survivors = 60 - removed;
        CHECK(cell.histogram.total_mass() + cell.histogram.unreachable_total ==
              cell.histogram.trials * (survivors - 1));
    }
}

TEST_CASE("single deterministic lattice trial matches hand-computed values") {
    ExperimentConfig cfg;
    cfg.n = 24;
    cfg.k = 4;
    cfg.betas = {0.0};
    cfg.measures = {std::nullopt};
    cfg.trials = 1;
    cfg.master_seed = 7;
    const ExperimentResult r = run_experiment(cfg);
    REQUIRE(r.cells.size() == 1);
    const CellResult& cell = r.cells[0];

    // ring lattice n=24, k=4: distance ceil(j/2) to the j-th neighbor around
    // the ring; enumerate independently
    double dist_sum = 0.0;
    std::vector<std::uint64_t> expected_counts(7, 0);
    for (int j = 1; j <= 23; ++j) {
        const int circ = std::min(j, 24 - j);
        const int d = (circ + 1) / 2;
        dist_sum += d;
        ++expected_counts[d];
    }
    CHECK(cell.mean_path_length == doctest::Approx(dist_sum / 23.0).epsilon(1e-12));
    CHECK(cell.mean_clustering == doctest::Approx(0.5).epsilon(1e-12)); // 3(k-2)/(4(k-1))
    for (std::uint32_t d = 1; d <= 6; ++d)
        CHECK(cell.histogram.count_at(d) == expected_counts[d]);
    CHECK(cell.peak_distance == 1); // bins 1..5 tie at 2; ties resolve low
}

TEST_CASE("compare_flattening ranks cells against the baseline") {
    ExperimentConfig cfg = small_config();
    const ExperimentResult r = run_experiment(cfg);
    const FlatteningReport report = compare_flattening(r);
    REQUIRE(report.rows.size() == cfg.betas.size());
    for (const FlatteningRow& row : report.rows) {
        REQUIRE(row.entries.size() == cfg.measures.size());
        for (std::size_t i = 1; i < row.entries.size(); ++i)
            CHECK(row.entries[i - 1].peak_count <= row.entries[i].peak_count);
        for (const FlatteningEntry& e : row.entries) {
            if (!e.measure)
                CHECK(e.reduction_ratio == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("compare_flattening requires a baseline") {
    ExperimentConfig cfg = small_config();
    cfg.measures = {Measure::Degree};
    const ExperimentResult r = run_experiment(cfg);
    CHECK_THROWS_AS(compare_flattening(r), std::invalid_argument);
}

TEST_CASE("config file parsing") {
    std::istringstream in(
        "[experiment]\n"
        "n = 100        # table-sized network\n"
        "k = 6\n"
        "betas = 0.025, 0.05, 0.1\n"
        "measures = closeness, none\n"
        "isolate = 0.15\n"
        "trials = 100\n"
        "seed = 42\n"
        "reference = analytic\n"
        "fit = mle\n"
        "threads = 2\n");
    const ExperimentConfig cfg = load_config(in);
    CHECK(cfg.n == 100);
    CHECK(cfg.k == 6);
    CHECK(cfg.betas == std::vector<double>{0.025, 0.05, 0.1});
    REQUIRE(cfg.measures.size() == 2);
    CHECK(cfg.measures[0] == Measure::Closeness);
    CHECK_FALSE(cfg.measures[1].has_value());
    CHECK(cfg.isolation_fraction == 0.15);
    CHECK(cfg.trials == 100);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.threads == 2);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config file rejects unknown keys and malformed lines") {
    std::istringstream unknown("banana = 3\n");
    CHECK_THROWS_AS(load_config(unknown), std::invalid_argument);
    std::istringstream malformed("n 100\n");
    CHECK_THROWS_AS(load_config(malformed), std::invalid_argument);
    std::istringstream bad_section("[plot]\n");
    CHECK_THROWS_AS(load_config(bad_section), std::invalid_argument);
}

TEST_CASE("measures 'all' expands to seven measures plus the baseline") {
    std::istringstream in("measures = all\n");
    const ExperimentConfig cfg = load_config(in);
    CHECK(cfg.measures.size() == 8);
    CHECK_FALSE(cfg.measures.back().has_value());
}

TEST_CASE("fingerprint carries the cell coordinates") {
    ExperimentConfig cfg = small_config();
    const std::string fp = config_fingerprint(cfg, 0.05, Measure::Closeness);
    CHECK(fp.find("n=60") != std::string::npos);
    CHECK(fp.find("beta=0.05") != std::string::npos);
    CHECK(fp.find("measure=closeness") != std::string::npos);
    CHECK(fp.find("seed=31337") != std::string::npos);
}

} // TEST_SUITE

#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "eok/errors.hpp"
#include "eok/experiment.hpp"
#include "eok/geometry.hpp"
#include "eok/rng.hpp"

using namespace eok;

namespace {

ExperimentConfig small_config() {
    return parse_config(
        "k = 3\n"
        "epsilon = 0.5\n"
        "densities = 0.12, 0.3\n"
        "n = 8..10\n"
        "trials = 6\n"
        "seed = 5\n"
        "analyses = geometry, holes, covers, hgraph, paths\n"
        "pair_cap = 50\n");
}

std::size_t data_lines(const std::string& csv) {
    std::size_t lines = 0, pos = 0;
    while (pos < csv.size()) {
        const auto nl = csv.find('\n', pos);
        if (csv[pos] != '#') ++lines;
        pos = nl + 1;
    }
    return lines;
}

}  // namespace

TEST_CASE("config parsing") {
    auto cfg = small_config();
    CHECK(cfg.ns == std::vector<std::size_t>{8, 9, 10});
    CHECK(cfg.densities == std::vector<double>{0.12, 0.3});
    CHECK(cfg.analyses.paths);
    CHECK(cfg.num_cells() == 6);
    CHECK(cfg.cell_density(4) == 0.3);
    CHECK(cfg.cell_n(4) == 9);
    CHECK(parse_config(write_config(cfg)) == cfg);

    CHECK_THROWS_AS(parse_config("k = 3\nbogus = 1\n"), ParseError);
    try {
        parse_config("k = 3\n\nn = 5..x\n");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_config("analyses = geometry, magic"), ParseError);
    CHECK_THROWS_AS(parse_config("k = 3").validate(), DomainError);
    CHECK_THROWS_AS(parse_config("densities = 0.1\nn = 80").validate(), DomainError);
}

TEST_CASE("trials = 0 gives a header-only report") {
    auto cfg = small_config();
    cfg.trials = 0;
    auto report = run_experiment(cfg);
    CHECK(report.trials.empty());
    CHECK(report.aggregates.empty());
    CHECK(data_lines(write_csv(report)) == 3);  // three table headers
}

TEST_CASE("reports are byte-identical across reruns and thread counts") {
    auto cfg = small_config();
    cfg.threads = 1;
    const auto one = write_csv(run_experiment(cfg));
    cfg.threads = 3;
    const auto three = write_csv(run_experiment(cfg));
    CHECK(one == three);
    CHECK(write_csv(run_experiment(cfg)) == three);
    CHECK(write_json(run_experiment(cfg)) == write_json(run_experiment(cfg)));
    auto j = nlohmann::json::parse(write_json(run_experiment(cfg)));
    CHECK(j["schema"] == std::string(kReportSchema));
    CHECK(j["trials"].size() == 36);
}

TEST_CASE("records replay against the solver") {
    auto cfg = small_config();
    auto report = run_experiment(cfg);
    REQUIRE(report.trials.size() == cfg.num_cells() * cfg.trials);
    for (std::size_t i = 0; i < report.trials.size(); ++i) {
        const auto& r = report.trials[i];
        CHECK(r.cell == i / cfg.trials);
        CHECK(r.trial == i % cfg.trials);
        CHECK(r.seed == derive_seed(cfg.master_seed, r.cell, r.trial));
        const Formula f = trial_formula(cfg, r.cell, r.seed);
        const auto s = enumerate_solutions(f);
        CHECK(r.satisfiable == !s.empty());
        CHECK(*r.solution_count == double(s.size()));
        CHECK(r.clauses == f.num_clauses());
        if (s.size() >= 2) {
            CHECK(r.min_overlap == overlap_stats(s).min_overlap->agree);
            CHECK(r.min_connect_l == min_connect_l(s));
            CHECK(r.hole_count == double(find_holes(f, s, *r.hole_min_size).size()));
            CHECK(r.pairs.has_value());
        }
        CHECK(r.cover_min == min_cover_size(f));
        CHECK_FALSE(r.wall_time.has_value());
    }
}

TEST_CASE("fields are present only for requested analyses") {
    auto cfg = small_config();
    cfg.analyses = {};
    cfg.analyses.covers = true;
    for (const auto& r : run_experiment(cfg).trials) {
        CHECK(r.solution_count.has_value());
        CHECK(r.cover_min.has_value());
        CHECK_FALSE(r.min_overlap.has_value());
        CHECK_FALSE(r.hole_count.has_value());
        CHECK_FALSE(r.pairs.has_value());
        CHECK_FALSE(r.path_via_H_success_rate.has_value());
    }
}

TEST_CASE("solution cap marks records truncated") {
    auto cfg = small_config();
    cfg.densities = {0.0};
    cfg.solution_cap = 1;  // any free variable has two solutions
    for (const auto& r : run_experiment(cfg).trials) {
        CHECK(r.truncated);
        CHECK(r.satisfiable);
        CHECK_FALSE(r.solution_count.has_value());
    }
}

TEST_CASE("subcritical cell is a single cluster at its min_connect_l") {
    auto cfg = parse_config("densities = 0.12\nn = 14\ntrials = 50\nseed = 3\nanalyses = geometry\n");
    auto report = run_experiment(cfg);
    std::size_t single = 0, sat = 0;
    for (const auto& r : report.trials) {
        if (!r.satisfiable) continue;
        ++sat;
        const auto s = enumerate_solutions(trial_formula(cfg, r.cell, r.seed));
        if (s.size() < 2 || cluster_components(s, *r.min_connect_l).is_single_cluster) ++single;
        CHECK(*r.min_connect_l <= *r.largest_formula_component);
    }
    CHECK(sat > 0);
    CHECK(single == sat);
    REQUIRE_FALSE(report.fits.empty());
    for (const auto& f : report.fits) CHECK(std::isfinite(f.gamma));
}

TEST_CASE("aggregates and fits") {
    auto cfg = small_config();
    auto report = run_experiment(cfg);
    REQUIRE(report.aggregates.size() == cfg.num_cells());
    for (const auto& a : report.aggregates) {
        std::size_t sat = 0;
        for (const auto& r : report.trials) sat += r.cell == a.cell && r.satisfiable;
        CHECK(a.satisfiable == sat);
        CHECK(a.sat_frequency == doctest::Approx(double(sat) / double(cfg.trials)));
        if (a.path_via_H_success_rate) CHECK(*a.path_via_H_success_rate == 1.0);
        if (a.overlap_ge_cover_rate) CHECK(*a.overlap_ge_cover_rate == 1.0);
    }
    // gamma is the through-origin least-squares slope.
    for (const auto& fit : report.fits) {
        if (fit.quantity != "min_connect_l") continue;
        double sxy = 0, sxx = 0;
        for (const auto& r : report.trials)
            if (cfg.cell_density(r.cell) == fit.density && r.satisfiable && r.min_connect_l) {
                sxy += std::log(double(r.n)) * double(*r.min_connect_l);
                sxx += std::log(double(r.n)) * std::log(double(r.n));
            }
        CHECK(fit.gamma == doctest::Approx(sxy / sxx));
    }
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eok/instance.hpp"
#include "eok/solver.hpp"

namespace eok {

enum class Model { counting, constant_prob };

struct Analyses {
    bool geometry = false;
    bool holes = false;
    bool covers = false;
    bool hgraph = false;
    bool paths = false;

    friend bool operator==(const Analyses&, const Analyses&) = default;
};

// Densities are r for the counting model and p for the constant-probability model.
// Cells are ordered density-major: cell = density_index * ns.size() + n_index.
struct ExperimentConfig {
    std::size_t k = 3;
    double epsilon = 0.5;
    Model model = Model::counting;
    CountingMode counting_mode = CountingMode::multinomial;
    std::vector<double> densities;
    std::vector<std::size_t> ns;
    std::size_t trials = 0;
    std::uint64_t master_seed = 1;
    Analyses analyses;
    std::size_t solution_cap = kDefaultSolutionLimit;  // per formula-hypergraph component
    double time_cap = 0.0;                             // seconds per trial, 0 disables
    double hole_min_fraction = 0.6;                    // holes counted at size >= ceil(fraction * n)
    std::size_t pair_cap = 2000;                       // solution pairs for hgraph/paths
    bool wall_time = false;
    std::size_t threads = 0;                           // 0: EOK_THREADS, else hardware concurrency

    std::size_t num_cells() const noexcept { return densities.size() * ns.size(); }
    double cell_density(std::size_t cell) const { return densities.at(cell / ns.size()); }
    std::size_t cell_n(std::size_t cell) const { return ns.at(cell % ns.size()); }

    // DomainError on empty grids, n outside [k, 64], bad epsilon or density.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// `key = value` lines, '#' comments, comma-separated lists, integer ranges `a..b`.
// ParseError on unknown keys or malformed values.
ExperimentConfig parse_config(std::string_view text);
void apply_config_line(ExperimentConfig& cfg, std::string_view line, std::size_t line_no = 0);
// Canonical form; parse_config(write_config(c)) == c.
std::string write_config(const ExperimentConfig& cfg);

struct TrialRecord {
    std::size_t cell = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double density = 0.0;
    std::size_t clauses = 0;
    bool satisfiable = false;
    bool truncated = false;
    std::optional<double> solution_count;

    // geometry
    std::optional<std::size_t> min_overlap;  // agreement count of the closest-to-antipodal pair
    std::optional<std::size_t> min_connect_l;
    std::optional<std::size_t> largest_formula_component;
    // holes
    std::optional<std::size_t> hole_min_size;
    std::optional<double> hole_count;
    // covers
    std::optional<std::size_t> cover_min;
    // hgraph / paths, over sampled (or all) solution pairs
    std::optional<std::size_t> pairs;
    std::optional<std::size_t> largest_H_component;
    std::optional<std::size_t> h_within_bound;  // pairs with largest H component <= lambda_c(c) ln n
    std::optional<double> path_via_H_success_rate;
    std::optional<double> component_path_success_rate;

    std::optional<double> wall_time;
};

struct CellAggregate {
    std::size_t cell = 0;
    std::size_t n = 0;
    double density = 0.0;
    std::size_t trials = 0;
    std::size_t satisfiable = 0;
    double sat_frequency = 0.0;
    double sat_stderr = 0.0;
    std::size_t truncated = 0;
    std::optional<double> mean_solution_count;
    std::optional<double> mean_min_overlap;  // as a fraction of n
    std::optional<double> min_min_overlap;
    std::optional<double> q_c;               // cover-exponent root at the equivalent clause density
    std::optional<double> mean_min_connect_l;
    std::optional<std::size_t> max_min_connect_l;
    std::optional<double> mean_largest_formula_component;
    std::optional<std::size_t> max_largest_formula_component;
    std::optional<double> connect_le_component_rate;
    std::optional<double> total_holes;
    std::optional<std::size_t> trials_with_holes;
    std::optional<double> mean_cover_min;
    std::optional<double> overlap_ge_cover_rate;
    std::optional<std::size_t> pairs;
    std::optional<double> mean_largest_H_component;
    std::optional<std::size_t> max_largest_H_component;
    std::optional<double> h_within_bound_rate;
    std::optional<double> path_via_H_success_rate;
    std::optional<double> component_path_success_rate;
};

// Least squares through the origin of y = gamma ln n over all trials of one density.
struct LogFit {
    double density = 0.0;
    std::string quantity;
    std::size_t points = 0;
    double gamma = 0.0;
    double max_ratio = 0.0;  // max y / ln n
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TrialRecord> trials;  // sorted by (cell, trial)
    std::vector<CellAggregate> aggregates;
    std::vector<LogFit> fits;
};

inline constexpr std::string_view kReportSchema = "eok-experiment/1";

Formula trial_formula(const ExperimentConfig& cfg, std::size_t cell, std::uint64_t seed);
TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t cell, std::size_t trial);
ExperimentReport run_experiment(const ExperimentConfig& cfg);
std::vector<CellAggregate> aggregate(const ExperimentConfig& cfg, const std::vector<TrialRecord>& trials);
std::vector<LogFit> fit_log_n(const ExperimentConfig& cfg, const std::vector<TrialRecord>& trials);

std::size_t resolve_threads(const ExperimentConfig& cfg);

std::string write_csv(const ExperimentReport& report);
std::string write_json(const ExperimentReport& report);

}  // namespace eok

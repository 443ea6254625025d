#include "eok/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "eok/bounds.hpp"
#include "eok/combinatorics.hpp"
#include "eok/errors.hpp"
#include "eok/factored.hpp"
#include "eok/formula_io.hpp"
#include "eok/geometry.hpp"
#include "eok/graphs.hpp"
#include "eok/rng.hpp"

namespace eok {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <class T>
T parse_number(std::string_view s, std::size_t line, std::string_view key) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(line, "invalid value '" + std::string(s) + "' for " + std::string(key));
    return value;
}

bool parse_bool(std::string_view s, std::size_t line, std::string_view key) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ParseError(line, "invalid boolean '" + std::string(s) + "' for " + std::string(key));
}

std::vector<std::size_t> parse_size_list(std::string_view s, std::size_t line, std::string_view key) {
    std::vector<std::size_t> out;
    for (auto item : split_list(s)) {
        const auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_number<std::size_t>(item, line, key));
            continue;
        }
        const auto lo = parse_number<std::size_t>(trim(item.substr(0, dots)), line, key);
        const auto hi = parse_number<std::size_t>(trim(item.substr(dots + 2)), line, key);
        if (hi < lo) throw ParseError(line, "empty range for " + std::string(key));
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    return out;
}

std::string join_doubles(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_double(xs[i]);
    return out;
}

std::string analyses_string(const Analyses& a) {
    std::vector<std::string> names;
    if (a.geometry) names.push_back("geometry");
    if (a.holes) names.push_back("holes");
    if (a.covers) names.push_back("covers");
    if (a.hgraph) names.push_back("hgraph");
    if (a.paths) names.push_back("paths");
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Clause density equivalent to the cell's density parameter.
double clause_density(const ExperimentConfig& cfg, std::size_t n, double density) {
    if (cfg.model == Model::counting) return density;
    return density * choose(double(n), double(cfg.k)) / double(n);
}

// Density as a fraction of the satisfiability threshold, when the threshold is defined.
std::optional<double> threshold_fraction(const ExperimentConfig& cfg, std::size_t n, double density) {
    if (!(cfg.epsilon > 0.0)) return std::nullopt;
    if (cfg.model == Model::counting) return density / threshold_r(cfg.k, cfg.epsilon);
    return density / threshold_p(cfg.k, cfg.epsilon, n);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (k < 3 || k > 16) throw DomainError("config: k must be in [3, 16]");
    if (!(epsilon >= 0.0 && epsilon <= 0.5)) throw DomainError("config: epsilon must be in [0, 1/2]");
    if (densities.empty()) throw DomainError("config: density grid is empty");
    if (ns.empty()) throw DomainError("config: n grid is empty");
    for (double d : densities) {
        if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("config: densities must be finite and >= 0");
        if (model == Model::constant_prob && d > 1.0) throw DomainError("config: p must be <= 1");
    }
    for (std::size_t n : ns)
        if (n < k || n > 64) throw DomainError("config: n must be in [k, 64]");
    if (!(hole_min_fraction >= 0.0 && hole_min_fraction <= 1.0))
        throw DomainError("config: hole_min_fraction must be in [0, 1]");
    if (!(time_cap >= 0.0)) throw DomainError("config: time_cap must be >= 0");
    if (solution_cap == 0) throw DomainError("config: solution_cap must be positive");
}

void apply_config_line(ExperimentConfig& cfg, std::string_view raw, std::size_t line) {
    auto text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) return;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected key = value");
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));

    if (key == "k") {
        cfg.k = parse_number<std::size_t>(value, line, key);
    } else if (key == "epsilon") {
        cfg.epsilon = parse_number<double>(value, line, key);
    } else if (key == "model") {
        if (value == "counting") cfg.model = Model::counting;
        else if (value == "constant_prob") cfg.model = Model::constant_prob;
        else throw ParseError(line, "unknown model '" + std::string(value) + "'");
    } else if (key == "counting_mode") {
        if (value == "multinomial") cfg.counting_mode = CountingMode::multinomial;
        else if (value == "exact_counts") cfg.counting_mode = CountingMode::exact_counts;
        else throw ParseError(line, "unknown counting_mode '" + std::string(value) + "'");
    } else if (key == "densities" || key == "density") {
        cfg.densities.clear();
        for (auto item : split_list(value)) cfg.densities.push_back(parse_number<double>(item, line, key));
    } else if (key == "n") {
        cfg.ns = parse_size_list(value, line, key);
    } else if (key == "trials") {
        cfg.trials = parse_number<std::size_t>(value, line, key);
    } else if (key == "seed") {
        cfg.master_seed = parse_number<std::uint64_t>(value, line, key);
    } else if (key == "analyses") {
        cfg.analyses = {};
        for (auto item : split_list(value)) {
            if (item == "geometry") cfg.analyses.geometry = true;
            else if (item == "holes") cfg.analyses.holes = true;
            else if (item == "covers") cfg.analyses.covers = true;
            else if (item == "hgraph") cfg.analyses.hgraph = true;
            else if (item == "paths") cfg.analyses.paths = true;
            else throw ParseError(line, "unknown analysis '" + std::string(item) + "'");
        }
    } else if (key == "solution_cap") {
        cfg.solution_cap = parse_number<std::size_t>(value, line, key);
    } else if (key == "time_cap") {
        cfg.time_cap = parse_number<double>(value, line, key);
    } else if (key == "hole_min_fraction") {
        cfg.hole_min_fraction = parse_number<double>(value, line, key);
    } else if (key == "pair_cap") {
        cfg.pair_cap = parse_number<std::size_t>(value, line, key);
    } else if (key == "wall_time") {
        cfg.wall_time = parse_bool(value, line, key);
    } else if (key == "threads") {
        cfg.threads = parse_number<std::size_t>(value, line, key);
    } else {
        throw ParseError(line, "unknown key '" + std::string(key) + "'");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        apply_config_line(cfg, text.substr(0, nl), line_no);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return cfg;
}

std::string write_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "k = " << cfg.k << '\n'
        << "epsilon = " << format_double(cfg.epsilon) << '\n'
        << "model = " << (cfg.model == Model::counting ? "counting" : "constant_prob") << '\n'
        << "counting_mode = " << (cfg.counting_mode == CountingMode::multinomial ? "multinomial" : "exact_counts") << '\n'
        << "densities = " << join_doubles(cfg.densities) << '\n'
        << "n = ";
    for (std::size_t i = 0; i < cfg.ns.size(); ++i) out << (i ? ", " : "") << cfg.ns[i];
    out << '\n'
        << "trials = " << cfg.trials << '\n'
        << "seed = " << cfg.master_seed << '\n'
        << "analyses = " << analyses_string(cfg.analyses) << '\n'
        << "solution_cap = " << cfg.solution_cap << '\n'
        << "time_cap = " << format_double(cfg.time_cap) << '\n'
        << "hole_min_fraction = " << format_double(cfg.hole_min_fraction) << '\n'
        << "pair_cap = " << cfg.pair_cap << '\n'
        << "wall_time = " << (cfg.wall_time ? "true" : "false") << '\n';
    return out.str();
}

Formula trial_formula(const ExperimentConfig& cfg, std::size_t cell, std::uint64_t seed) {
    const ModelParams params{cfg.cell_n(cell), cfg.k, cfg.epsilon, cfg.cell_density(cell), seed};
    return cfg.model == Model::counting ? gen_counting(params, cfg.counting_mode) : gen_constant_prob(params);
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t cell, std::size_t trial) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.cell = cell;
    rec.trial = trial;
    rec.seed = derive_seed(cfg.master_seed, cell, trial);
    rec.n = cfg.cell_n(cell);
    rec.density = cfg.cell_density(cell);

    const Formula f = trial_formula(cfg, cell, rec.seed);
    rec.clauses = f.num_clauses();

    auto finish = [&]() -> TrialRecord {
        if (cfg.wall_time) rec.wall_time = seconds_since(start);
        return rec;
    };
    auto over_time = [&] {
        if (cfg.time_cap > 0.0 && seconds_since(start) > cfg.time_cap) {
            rec.truncated = true;
            return true;
        }
        return false;
    };

    std::optional<FactoredSolutionSpace> space;
    try {
        space = FactoredSolutionSpace::build(f, cfg.solution_cap);
    } catch (const DomainError&) {
        rec.truncated = true;
        rec.satisfiable = is_satisfiable(f);
        return finish();
    }
    rec.satisfiable = space->satisfiable();
    rec.solution_count = space->count();

    if (cfg.analyses.geometry) {
        if (auto ov = space->min_overlap()) rec.min_overlap = ov->agree;
        rec.min_connect_l = space->min_connect_l();
        rec.largest_formula_component = formula_components(f).largest;
    }
    if (over_time()) return finish();

    if (cfg.analyses.holes) {
        rec.hole_min_size = std::max<std::size_t>(
            2, static_cast<std::size_t>(std::ceil(cfg.hole_min_fraction * double(rec.n) - 1e-9)));
        double total = 0.0;
        for (double c : space->hole_size_counts(*rec.hole_min_size)) total += c;
        rec.hole_count = total;
    }
    if (over_time()) return finish();

    if (cfg.analyses.covers) rec.cover_min = min_cover_size(f);
    if (over_time()) return finish();

    if ((cfg.analyses.hgraph || cfg.analyses.paths) && space->count() >= 2.0) {
        std::vector<std::pair<Assignment, Assignment>> pairs;
        const double count = space->count();
        if (count * (count - 1.0) / 2.0 <= double(cfg.pair_cap)) {
            const SolutionSet all = space->expand();
            for (std::size_t i = 0; i < all.size(); ++i)
                for (std::size_t j = i + 1; j < all.size(); ++j) pairs.emplace_back(all[i], all[j]);
        } else {
            Rng rng(mix64(rec.seed ^ 0x9e3779b97f4a7c15ULL));
            for (std::size_t i = 0; i < cfg.pair_cap; ++i) pairs.push_back(space->sample_distinct_pair(rng));
        }
        rec.pairs = pairs.size();

        const auto frac = threshold_fraction(cfg, rec.n, rec.density);
        std::optional<double> h_bound;
        if (frac && *frac > 0.0 && *frac < 1.0) h_bound = bounds::lambda_c(*frac) * std::log(double(rec.n));

        std::size_t largest_h = 0, within = 0, h_ok = 0, comp_ok = 0;
        for (const auto& [a, b] : pairs) {
            if (cfg.analyses.hgraph) {
                const std::size_t lh = build_H(f, a, b).largest_component();
                largest_h = std::max(largest_h, lh);
                if (h_bound && double(lh) <= *h_bound) ++within;
            }
            if (cfg.analyses.paths) {
                h_ok += path_via_H(f, a, b).ok();
                try {
                    path_via_formula_components(f, a, b);
                    ++comp_ok;
                } catch (const InvariantViolation&) {
                }
            }
        }
        if (cfg.analyses.hgraph) {
            rec.largest_H_component = largest_h;
            if (h_bound) rec.h_within_bound = within;
        }
        if (cfg.analyses.paths && !pairs.empty()) {
            rec.path_via_H_success_rate = double(h_ok) / double(pairs.size());
            rec.component_path_success_rate = double(comp_ok) / double(pairs.size());
        }
    }
    return finish();
}

std::size_t resolve_threads(const ExperimentConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("EOK_THREADS")) {
        std::size_t v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report;
    report.config = cfg;
    const std::size_t jobs = cfg.num_cells() * cfg.trials;
    report.trials.resize(jobs);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs) return;
            try {
                report.trials[job] = run_trial(cfg, job / cfg.trials, job % cfg.trials);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = jobs;
            }
        }
    };
    const std::size_t threads = std::min(resolve_threads(cfg), std::max<std::size_t>(jobs, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    report.aggregates = aggregate(cfg, report.trials);
    report.fits = fit_log_n(cfg, report.trials);
    return report;
}

std::vector<CellAggregate> aggregate(const ExperimentConfig& cfg, const std::vector<TrialRecord>& trials) {
    std::vector<CellAggregate> out;
    for (std::size_t cell = 0; cell < cfg.num_cells(); ++cell) {
        CellAggregate agg;
        agg.cell = cell;
        agg.n = cfg.cell_n(cell);
        agg.density = cfg.cell_density(cell);

        struct Acc {
            double sum = 0.0;
            std::size_t count = 0;
            void add(double x) { sum += x, ++count; }
            std::optional<double> mean() const { return count ? std::optional(sum / double(count)) : std::nullopt; }
        };
        Acc sols, overlap, connect, formula_comp, cover, largest_h, connect_le, overlap_ge;
        std::optional<double> min_overlap;
        std::optional<std::size_t> max_connect, max_comp, max_h, trials_with_holes, pairs, within;
        std::optional<double> holes, h_success, comp_success;
        std::size_t bound_pairs = 0;

        for (const TrialRecord& r : trials) {
            if (r.cell != cell) continue;
            ++agg.trials;
            agg.satisfiable += r.satisfiable;
            agg.truncated += r.truncated;
            if (r.satisfiable && r.solution_count) sols.add(*r.solution_count);
            if (r.min_overlap) {
                const double frac = double(*r.min_overlap) / double(r.n);
                overlap.add(frac);
                min_overlap = std::min(min_overlap.value_or(frac), frac);
            }
            if (r.min_connect_l) {
                connect.add(double(*r.min_connect_l));
                max_connect = std::max(max_connect.value_or(0), *r.min_connect_l);
                if (r.largest_formula_component)
                    connect_le.add(*r.min_connect_l <= *r.largest_formula_component ? 1.0 : 0.0);
            }
            if (r.largest_formula_component && r.satisfiable) {
                formula_comp.add(double(*r.largest_formula_component));
                max_comp = std::max(max_comp.value_or(0), *r.largest_formula_component);
            }
            if (r.hole_count) {
                holes = holes.value_or(0.0) + *r.hole_count;
                trials_with_holes = trials_with_holes.value_or(0) + (*r.hole_count > 0.0);
            }
            if (r.cover_min && r.satisfiable) {
                cover.add(double(*r.cover_min));
                if (r.min_overlap) overlap_ge.add(*r.min_overlap >= *r.cover_min ? 1.0 : 0.0);
            }
            if (r.pairs) {
                pairs = pairs.value_or(0) + *r.pairs;
                const double p = double(*r.pairs);
                if (r.largest_H_component) {
                    largest_h.add(double(*r.largest_H_component));
                    max_h = std::max(max_h.value_or(0), *r.largest_H_component);
                }
                if (r.h_within_bound) {
                    within = within.value_or(0) + *r.h_within_bound;
                    bound_pairs += *r.pairs;
                }
                if (r.path_via_H_success_rate) h_success = h_success.value_or(0.0) + *r.path_via_H_success_rate * p;
                if (r.component_path_success_rate)
                    comp_success = comp_success.value_or(0.0) + *r.component_path_success_rate * p;
            }
        }
        if (agg.trials == 0) continue;

        agg.sat_frequency = double(agg.satisfiable) / double(agg.trials);
        agg.sat_stderr = std::sqrt(agg.sat_frequency * (1.0 - agg.sat_frequency) / double(agg.trials));
        agg.mean_solution_count = sols.mean();
        agg.mean_min_overlap = overlap.mean();
        agg.min_min_overlap = min_overlap;
        if (const double c = clause_density(cfg, agg.n, agg.density); cfg.analyses.geometry && c > 0.0)
            agg.q_c = bounds::q_c(c, cfg.k);
        agg.mean_min_connect_l = connect.mean();
        agg.max_min_connect_l = max_connect;
        agg.mean_largest_formula_component = formula_comp.mean();
        agg.max_largest_formula_component = max_comp;
        agg.connect_le_component_rate = connect_le.mean();
        agg.total_holes = holes;
        agg.trials_with_holes = trials_with_holes;
        agg.mean_cover_min = cover.mean();
        agg.overlap_ge_cover_rate = overlap_ge.mean();
        agg.pairs = pairs;
        agg.mean_largest_H_component = largest_h.mean();
        agg.max_largest_H_component = max_h;
        if (within && bound_pairs > 0) agg.h_within_bound_rate = double(*within) / double(bound_pairs);
        if (pairs && *pairs > 0) {
            if (h_success) agg.path_via_H_success_rate = *h_success / double(*pairs);
            if (comp_success) agg.component_path_success_rate = *comp_success / double(*pairs);
        }
        out.push_back(agg);
    }
    return out;
}

std::vector<LogFit> fit_log_n(const ExperimentConfig& cfg, const std::vector<TrialRecord>& trials) {
    using Getter = std::optional<std::size_t> TrialRecord::*;
    const std::pair<const char*, Getter> quantities[] = {
        {"min_connect_l", &TrialRecord::min_connect_l},
        {"largest_formula_component", &TrialRecord::largest_formula_component},
        {"largest_H_component", &TrialRecord::largest_H_component},
    };
    std::vector<LogFit> out;
    for (std::size_t d = 0; d < cfg.densities.size(); ++d) {
        for (const auto& [name, field] : quantities) {
            LogFit fit;
            fit.density = cfg.densities[d];
            fit.quantity = name;
            double sxy = 0.0, sxx = 0.0;
            for (const TrialRecord& r : trials) {
                if (r.cell / cfg.ns.size() != d || !(r.*field) || !r.satisfiable) continue;
                const double x = std::log(double(r.n));
                const double y = double(*(r.*field));
                sxy += x * y;
                sxx += x * x;
                fit.max_ratio = std::max(fit.max_ratio, y / x);
                ++fit.points;
            }
            if (fit.points == 0) continue;
            fit.gamma = sxy / sxx;
            out.push_back(fit);
        }
    }
    return out;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
std::string cell(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); }

template <class T>
nlohmann::json jv(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string config_comment(const ExperimentConfig& cfg) {
    std::string text = write_config(cfg), out = "# config:";
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        out += " " + text.substr(pos, nl - pos) + ";";
        pos = nl + 1;
    }
    return out;
}

}  // namespace

std::string write_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "# schema: " << kReportSchema << '\n' << config_comment(report.config) << '\n';
    out << "cell,trial,seed,n,density,clauses,satisfiable,truncated,solution_count,min_overlap,min_connect_l,"
           "largest_formula_component,hole_min_size,hole_count,cover_min,pairs,largest_H_component,h_within_bound,"
           "path_via_H_success_rate,component_path_success_rate,wall_time\n";
    for (const TrialRecord& r : report.trials) {
        out << r.cell << ',' << r.trial << ',' << r.seed << ',' << r.n << ',' << format_double(r.density) << ','
            << r.clauses << ',' << int(r.satisfiable) << ',' << int(r.truncated) << ',' << cell(r.solution_count)
            << ',' << cell(r.min_overlap) << ',' << cell(r.min_connect_l) << ',' << cell(r.largest_formula_component)
            << ',' << cell(r.hole_min_size) << ',' << cell(r.hole_count) << ',' << cell(r.cover_min) << ','
            << cell(r.pairs) << ',' << cell(r.largest_H_component) << ',' << cell(r.h_within_bound) << ','
            << cell(r.path_via_H_success_rate) << ',' << cell(r.component_path_success_rate) << ','
            << cell(r.wall_time) << '\n';
    }
    out << "# aggregates\n";
    out << "cell,n,density,trials,satisfiable,sat_frequency,sat_stderr,truncated,mean_solution_count,"
           "mean_min_overlap,min_min_overlap,q_c,mean_min_connect_l,max_min_connect_l,mean_largest_formula_component,"
           "max_largest_formula_component,connect_le_component_rate,total_holes,trials_with_holes,mean_cover_min,"
           "overlap_ge_cover_rate,pairs,mean_largest_H_component,max_largest_H_component,h_within_bound_rate,"
           "path_via_H_success_rate,component_path_success_rate\n";
    for (const CellAggregate& a : report.aggregates) {
        out << a.cell << ',' << a.n << ',' << format_double(a.density) << ',' << a.trials << ',' << a.satisfiable
            << ',' << format_double(a.sat_frequency) << ',' << format_double(a.sat_stderr) << ',' << a.truncated << ','
            << cell(a.mean_solution_count) << ',' << cell(a.mean_min_overlap) << ',' << cell(a.min_min_overlap) << ','
            << cell(a.q_c) << ',' << cell(a.mean_min_connect_l) << ',' << cell(a.max_min_connect_l) << ','
            << cell(a.mean_largest_formula_component) << ',' << cell(a.max_largest_formula_component) << ','
            << cell(a.connect_le_component_rate) << ',' << cell(a.total_holes) << ',' << cell(a.trials_with_holes)
            << ',' << cell(a.mean_cover_min) << ',' << cell(a.overlap_ge_cover_rate) << ',' << cell(a.pairs) << ','
            << cell(a.mean_largest_H_component) << ',' << cell(a.max_largest_H_component) << ','
            << cell(a.h_within_bound_rate) << ',' << cell(a.path_via_H_success_rate) << ','
            << cell(a.component_path_success_rate) << '\n';
    }
    out << "# fits\n";
    out << "density,quantity,points,gamma,max_ratio\n";
    for (const LogFit& f : report.fits)
        out << format_double(f.density) << ',' << f.quantity << ',' << f.points << ',' << format_double(f.gamma) << ','
            << format_double(f.max_ratio) << '\n';
    return out.str();
}

std::string write_json(const ExperimentReport& report) {
    const ExperimentConfig& c = report.config;
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["config"] = {{"k", c.k},
                   {"epsilon", c.epsilon},
                   {"model", c.model == Model::counting ? "counting" : "constant_prob"},
                   {"counting_mode", c.counting_mode == CountingMode::multinomial ? "multinomial" : "exact_counts"},
                   {"densities", c.densities},
                   {"n", c.ns},
                   {"trials", c.trials},
                   {"seed", c.master_seed},
                   {"analyses", analyses_string(c.analyses)},
                   {"solution_cap", c.solution_cap},
                   {"time_cap", c.time_cap},
                   {"hole_min_fraction", c.hole_min_fraction},
                   {"pair_cap", c.pair_cap},
                   {"wall_time", c.wall_time}};
    auto trials = nlohmann::json::array();
    for (const TrialRecord& r : report.trials)
        trials.push_back({{"cell", r.cell},
                          {"trial", r.trial},
                          {"seed", r.seed},
                          {"n", r.n},
                          {"density", r.density},
                          {"clauses", r.clauses},
                          {"satisfiable", r.satisfiable},
                          {"truncated", r.truncated},
                          {"solution_count", jv(r.solution_count)},
                          {"min_overlap", jv(r.min_overlap)},
                          {"min_connect_l", jv(r.min_connect_l)},
                          {"largest_formula_component", jv(r.largest_formula_component)},
                          {"hole_min_size", jv(r.hole_min_size)},
                          {"hole_count", jv(r.hole_count)},
                          {"cover_min", jv(r.cover_min)},
                          {"pairs", jv(r.pairs)},
                          {"largest_H_component", jv(r.largest_H_component)},
                          {"h_within_bound", jv(r.h_within_bound)},
                          {"path_via_H_success_rate", jv(r.path_via_H_success_rate)},
                          {"component_path_success_rate", jv(r.component_path_success_rate)},
                          {"wall_time", jv(r.wall_time)}});
    j["trials"] = trials;
    auto aggs = nlohmann::json::array();
    for (const CellAggregate& a : report.aggregates)
        aggs.push_back({{"cell", a.cell},
                        {"n", a.n},
                        {"density", a.density},
                        {"trials", a.trials},
                        {"satisfiable", a.satisfiable},
                        {"sat_frequency", a.sat_frequency},
                        {"sat_stderr", a.sat_stderr},
                        {"truncated", a.truncated},
                        {"mean_solution_count", jv(a.mean_solution_count)},
                        {"mean_min_overlap", jv(a.mean_min_overlap)},
                        {"min_min_overlap", jv(a.min_min_overlap)},
                        {"q_c", jv(a.q_c)},
                        {"mean_min_connect_l", jv(a.mean_min_connect_l)},
                        {"max_min_connect_l", jv(a.max_min_connect_l)},
                        {"mean_largest_formula_component", jv(a.mean_largest_formula_component)},
                        {"max_largest_formula_component", jv(a.max_largest_formula_component)},
                        {"connect_le_component_rate", jv(a.connect_le_component_rate)},
                        {"total_holes", jv(a.total_holes)},
                        {"trials_with_holes", jv(a.trials_with_holes)},
                        {"mean_cover_min", jv(a.mean_cover_min)},
                        {"overlap_ge_cover_rate", jv(a.overlap_ge_cover_rate)},
                        {"pairs", jv(a.pairs)},
                        {"mean_largest_H_component", jv(a.mean_largest_H_component)},
                        {"max_largest_H_component", jv(a.max_largest_H_component)},
                        {"h_within_bound_rate", jv(a.h_within_bound_rate)},
                        {"path_via_H_success_rate", jv(a.path_via_H_success_rate)},
                        {"component_path_success_rate", jv(a.component_path_success_rate)}});
    j["aggregates"] = aggs;
    auto fits = nlohmann::json::array();
    for (const LogFit& f : report.fits)
        fits.push_back({{"density", f.density},
                        {"quantity", f.quantity},
                        {"points", f.points},
                        {"gamma", f.gamma},
                        {"max_ratio", f.max_ratio}});
    j["fits"] = fits;
    return j.dump(2) + "\n";
}

}  // namespace eok

#include "eok/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "eok/bounds.hpp"
#include "eok/errors.hpp"
#include "eok/experiment.hpp"
#include "eok/factored.hpp"
#include "eok/formula_io.hpp"
#include "eok/geometry.hpp"
#include "eok/graphs.hpp"
#include "eok/serialize.hpp"
#include "eok/solver.hpp"

namespace eok {

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return read_text_file(path);
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text;
        return;
    }
    write_text_file(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct BoundParams {
    std::map<std::string, double> values;

    double get(const std::string& name) const {
        const auto it = values.find(name);
        if (it == values.end()) throw DomainError("missing --" + name);
        return it->second;
    }
    std::size_t size(const std::string& name) const {
        const double v = get(name);
        if (!(v >= 0.0) || v != std::floor(v)) throw DomainError("--" + name + " must be a non-negative integer");
        return static_cast<std::size_t>(v);
    }
};

json bound_quantity(const std::string& q, const BoundParams& p, bool exact) {
    using namespace bounds;
    if (q == "lambda_c") return {{"c", p.get("c")}, {"lambda_c", lambda_c(p.get("c"))}};
    if (q == "condition_one")
        return {{"holds", condition_one(p.get("q"), p.get("epsilon"), p.size("k"))}};
    if (q == "mu") {
        const auto m = mu_bounds(p.size("n"), p.size("a"), p.size("d"), p.get("p"), p.get("epsilon"), p.size("k"));
        return {{"mu_eq", m.mu_eq}, {"mu_neq", m.mu_neq}};
    }
    if (q == "epsilon_0")
        return {{"epsilon_0", epsilon_0()}, {"conjugate", epsilon_0_conjugate()}, {"residual", epsilon_0_residual(epsilon_0())}};
    if (q == "epsilon_c") {
        const auto e = epsilon_c();
        return {{"root", e.root},
                {"residual_at_root", e.residual_at_root},
                {"quoted", e.quoted},
                {"residual_at_quoted", e.residual_at_quoted},
                {"discrepancy", e.discrepancy}};
    }
    if (q == "connected_prob_bound") return {{"bound", connected_prob_bound(p.size("n"), p.get("c"))}};
    if (q == "q_c") return {{"q_c", q_c(p.get("c"), p.size("k"))}};
    if (q == "hole_prob_bound") {
        const std::size_t n = p.size("n"), i = p.size("i"), k = p.size("k");
        const double lambda = p.get("lambda");
        json j = {{"bound", hole_prob_bound(n, i, lambda, k)}, {"log_bound", log_hole_prob_bound(n, i, lambda, k)}};
        if (exact) j["exact"] = hole_prob_bound_exact(n, i, lambda, k);
        return j;
    }
    if (q == "hole_root" || q == "x_k") {
        HoleExponent h(p.get("lambda"), p.size("k"));
        const auto r = h.root();
        return {{"root", r ? json(*r) : json(nullptr)}, {"g_at_1", h.g(1.0)}};
    }
    if (q == "stirling_form_check")
        return {{"relative_difference", stirling_form_check(p.get("alpha"), p.get("lambda"), p.size("k"))}};
    throw DomainError("unknown bounds quantity '" + q + "'");
}

std::string bound_scan(const std::string& fn, const BoundParams& p, double from, double to, std::size_t points) {
    if (points < 2) throw DomainError("--points must be at least 2");
    if (!(from < to)) throw DomainError("--from must be below --to");
    std::ostringstream out;
    out << "x," << fn << '\n';
    std::optional<bounds::HoleExponent> h;
    if (fn == "f" || fn == "g") h.emplace(p.get("lambda"), p.size("k"));
    else if (fn != "h") throw DomainError("--scan takes f, g or h");
    for (std::size_t i = 0; i < points; ++i) {
        const double x = from + (to - from) * double(i) / double(points - 1);
        const double y = fn == "f" ? h->f(x) : fn == "g" ? h->g(x) : bounds::cover_exponent(x, p.get("c"), p.size("k"));
        out << format_double(x) << ',' << format_double(y) << '\n';
    }
    return out.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random epsilon-1-in-k SAT: generation, exact enumeration, geometry and bounds", "eok"};
    app.require_subcommand(1);
    std::string out_path;
    std::string format;

    auto* gen = app.add_subcommand("gen", "Generate a random formula");
    std::string model = "counting", counting_mode = "multinomial";
    std::size_t n = 0, k = 3;
    double epsilon = 0.5;
    std::optional<double> r_opt, p_opt;
    std::uint64_t seed = 0;
    gen->add_option("--model", model, "counting or constant_prob")->check(CLI::IsMember({"counting", "constant_prob"}));
    gen->add_option("--counting-mode", counting_mode)->check(CLI::IsMember({"multinomial", "exact_counts"}));
    gen->add_option("--n", n)->required();
    gen->add_option("--k", k);
    gen->add_option("--epsilon", epsilon);
    gen->add_option("--r", r_opt, "clause density (counting model)");
    gen->add_option("--p", p_opt, "clause probability (constant-probability model)");
    gen->add_option("--seed", seed);
    gen->add_option("--out", out_path);

    auto* solve = app.add_subcommand("solve", "Enumerate all satisfying assignments");
    std::string input;
    std::optional<std::size_t> limit;
    bool count_only = false;
    solve->add_option("input", input, "formula file, - for stdin")->required();
    solve->add_option("--limit", limit);
    solve->add_flag("--count", count_only, "print only the number of solutions");
    solve->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    solve->add_option("--out", out_path);

    auto* geometry = app.add_subcommand("geometry", "Overlaps, clusters and covers of the solution set");
    std::optional<std::size_t> l_opt;
    geometry->add_option("input", input)->required();
    geometry->add_option("--l", l_opt, "report clusters at this l");
    geometry->add_option("--limit", limit);
    geometry->add_option("--out", out_path);

    auto* holes = app.add_subcommand("holes", "List holes");
    std::size_t min_size = 2;
    holes->add_option("input", input)->required();
    holes->add_option("--min-size", min_size);
    holes->add_option("--limit", limit);
    holes->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    holes->add_option("--out", out_path);

    auto* hgraph = app.add_subcommand("hgraph", "Graph H of a pair of solutions");
    std::string a_bits, b_bits;
    hgraph->add_option("input", input)->required();
    hgraph->add_option("--a", a_bits)->required();
    hgraph->add_option("--b", b_bits)->required();
    hgraph->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
    hgraph->add_option("--out", out_path);

    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate closed-form bounds and roots");
    std::string quantity;
    BoundParams bp;
    bool exact = false;
    std::string scan;
    double from = 0.0, to = 1.0;
    std::size_t points = 101;
    bounds_cmd->add_option("quantity", quantity,
                           "lambda_c, condition_one, mu, epsilon_0, epsilon_c, connected_prob_bound, q_c, "
                           "hole_prob_bound, hole_root, stirling_form_check");
    for (const char* name : {"c", "q", "epsilon", "k", "n", "a", "d", "p", "i", "lambda", "alpha"}) {
        bounds_cmd->add_option_function<double>(std::string("--") + name,
                                                [&bp, name](double v) { bp.values[name] = v; });
    }
    bounds_cmd->add_flag("--exact", exact, "add the 50-digit evaluation (hole_prob_bound)");
    bounds_cmd->add_option("--scan", scan, "emit a CSV grid of f, g or h");
    bounds_cmd->add_option("--from", from);
    bounds_cmd->add_option("--to", to);
    bounds_cmd->add_option("--points", points);
    bounds_cmd->add_option("--out", out_path);

    auto* thresholds = app.add_subcommand("thresholds", "Satisfiability thresholds of both models");
    std::optional<std::size_t> th_n;
    thresholds->add_option("--k", k);
    thresholds->add_option("--epsilon", epsilon);
    thresholds->add_option("--n", th_n, "also evaluate p at this n");
    thresholds->add_option("--out", out_path);

    auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
    std::string config_path;
    std::vector<std::string> overrides;
    experiment->add_option("--config", config_path, "key = value config file");
    experiment->add_option("--set", overrides, "override one config line, key=value");
    experiment->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    experiment->add_option("--out", out_path);

    if (argc > 1 && argv[1][0] != '-') {
        const std::string name = argv[1];
        bool known = false;
        for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == name;
        if (!known) {
            err << "eok: unknown subcommand '" << name << "'\n" << app.help();
            return 1;
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "eok: " << e.what() << "\n" << app.help();
        return 1;
    }

    if (*gen) {
        ModelParams params{n, k, epsilon, 0.0, seed};
        Formula f = [&] {
            if (model == "counting") {
                if (!r_opt) throw DomainError("gen: the counting model needs --r");
                params.density = *r_opt;
                return gen_counting(params, counting_mode == "multinomial" ? CountingMode::multinomial
                                                                           : CountingMode::exact_counts);
            }
            if (!p_opt) throw DomainError("gen: the constant-probability model needs --p");
            params.density = *p_opt;
            return gen_constant_prob(params);
        }();
        emit(out, out_path, write_formula(f));
    } else if (*solve) {
        const Formula f = parse_formula(read_input(input));
        if (count_only) {
            emit(out, out_path, std::to_string(count_solutions(f)) + "\n");
        } else {
            const SolutionSet s = enumerate_solutions(f, limit);
            emit(out, out_path, format == "json" ? dump(json(s)) : write_solutions(s));
        }
    } else if (*geometry) {
        const Formula f = parse_formula(read_input(input));
        const SolutionSet s = enumerate_solutions(f, limit);
        if (!s.complete) throw DomainError("geometry: solution limit reached; raise --limit");
        const auto mcl = min_connect_l(s);
        const auto comps = formula_components(f);
        json j = {{"n", f.num_vars()},
                  {"clauses", f.num_clauses()},
                  {"solution_count", s.size()},
                  {"overlap", overlap_stats(s)},
                  {"min_connect_l", mcl ? json(*mcl) : json(nullptr)},
                  {"largest_formula_component", comps.largest},
                  {"formula_components", comps.components.size()}};
        if (f.num_vars() <= 64) j["min_cover_size"] = min_cover_size(f);
        if (l_opt) j["clusters"] = cluster_components(s, *l_opt);
        emit(out, out_path, dump(j));
    } else if (*holes) {
        const Formula f = parse_formula(read_input(input));
        const SolutionSet s = enumerate_solutions(f, limit);
        if (!s.complete) throw DomainError("holes: solution limit reached; raise --limit");
        const auto records = find_holes(f, s, min_size);
        if (format == "csv") {
            std::string text = "a,b,size\n";
            for (const auto& h : records) text += h.a.to_string() + "," + h.b.to_string() + "," + std::to_string(h.size) + "\n";
            emit(out, out_path, text);
        } else {
            emit(out, out_path, dump(json{{"min_size", min_size}, {"count", records.size()}, {"holes", records}}));
        }
    } else if (*hgraph) {
        const Formula f = parse_formula(read_input(input));
        const Assignment a = Assignment::from_string(a_bits);
        const Assignment b = Assignment::from_string(b_bits);
        if (a.size() != f.num_vars() || b.size() != f.num_vars())
            throw DomainError("hgraph: assignments must have length n");
        const LabeledGraph h = build_H(f, a, b);
        if (format == "dot") {
            emit(out, out_path, to_dot(h));
        } else {
            emit(out, out_path, dump(json{{"partition", partition(a, b)}, {"H", h}, {"path", path_via_H(f, a, b)}}));
        }
    } else if (*bounds_cmd) {
        if (!scan.empty()) {
            emit(out, out_path, bound_scan(scan, bp, from, to, points));
        } else {
            if (quantity.empty()) throw DomainError("bounds: name a quantity or pass --scan");
            emit(out, out_path, dump(bound_quantity(quantity, bp, exact)));
        }
    } else if (*thresholds) {
        const double coef = threshold_p_coefficient(k, epsilon);
        json j = {{"k", k},
                  {"epsilon", epsilon},
                  {"r", threshold_r(k, epsilon)},
                  {"p_coefficient", coef},
                  {"p_scale", format_double(coef) + "*n^-" + std::to_string(k - 1)}};
        if (th_n) j["p"] = threshold_p(k, epsilon, *th_n);
        emit(out, out_path, dump(j));
    } else if (*experiment) {
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : parse_config(read_input(config_path));
        for (const auto& line : overrides) apply_config_line(cfg, line);
        const ExperimentReport report = run_experiment(cfg);
        emit(out, out_path, format == "json" ? write_json(report) : write_csv(report));
    }
    return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return run(argc, argv, out, err);
    } catch (const IoError& e) {
        err << "eok: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "eok: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "eok: " << e.what() << "\n";
        return 1;
    } catch (const InvariantViolation& e) {
        err << "eok: invariant violated: " << e.what() << "\n";
        return 1;
    }
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"eok"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace eok

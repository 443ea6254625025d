#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "eok/bounds.hpp"
#include "eok/cli.hpp"
#include "eok/errors.hpp"
#include "eok/experiment.hpp"
#include "eok/factored.hpp"
#include "eok/formula_io.hpp"
#include "eok/geometry.hpp"
#include "eok/graphs.hpp"
#include "eok/serialize.hpp"
#include "eok/solver.hpp"

namespace py = pybind11;
using namespace eok;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<std::string> strings(const SolutionSet& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (const auto& a : s.solutions) out.push_back(a.to_string());
    return out;
}

std::vector<std::vector<int>> signed_clauses(const Formula& f) {
    std::vector<std::vector<int>> out;
    for (const Clause& cl : f.clauses()) {
        std::vector<int> lits;
        for (const Literal& l : cl.literals()) lits.push_back((l.negated ? -1 : 1) * int(l.var + 1));
        out.push_back(std::move(lits));
    }
    return out;
}

Formula make_formula(std::size_t n, const std::vector<std::vector<int>>& clauses, double epsilon) {
    std::vector<Clause> cls;
    std::size_t k = clauses.empty() ? 3 : clauses.front().size();
    for (const auto& c : clauses) {
        std::vector<Literal> lits;
        for (int l : c) {
            if (l == 0) throw DomainError("literal 0 is not allowed");
            lits.push_back({static_cast<Var>((l < 0 ? -l : l) - 1), l < 0});
        }
        cls.emplace_back(std::move(lits));
    }
    return Formula(n, k, epsilon, std::move(cls));
}

SolutionSet solutions_of(const Formula& f, std::optional<std::size_t> limit) {
    SolutionSet s = enumerate_solutions(f, limit);
    if (!s.complete) throw DomainError("solution limit reached; raise limit");
    return s;
}

CountingMode counting_mode(const std::string& mode) {
    if (mode == "multinomial") return CountingMode::multinomial;
    if (mode == "exact_counts") return CountingMode::exact_counts;
    throw DomainError("mode must be 'multinomial' or 'exact_counts'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Random epsilon-1-in-k SAT: generation, exact enumeration, solution geometry and bounds";
    m.attr("__version__") = "0.1.0";

    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            parse_error(e.what());
        } catch (const DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const IoError& e) {
            PyErr_SetString(PyExc_OSError, e.what());
        } catch (const InvariantViolation& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    py::class_<Formula>(m, "Formula")
        .def(py::init(&make_formula), py::arg("n"), py::arg("clauses"), py::arg("epsilon") = 0.5,
             "Clauses as lists of signed 1-based literals.")
        .def_static("parse", [](const std::string& text) { return parse_formula(text); })
        .def_static("read", &read_formula_file)
        .def("to_text", [](const Formula& f) { return write_formula(f); })
        .def_property_readonly("num_vars", &Formula::num_vars)
        .def_property_readonly("k", &Formula::width)
        .def_property_readonly("epsilon", &Formula::epsilon)
        .def_property_readonly("num_clauses", &Formula::num_clauses)
        .def_property_readonly("clauses", &signed_clauses)
        .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
        .def("__repr__", [](const Formula& f) {
            std::ostringstream s;
            s << "Formula(n=" << f.num_vars() << ", m=" << f.num_clauses() << ", k=" << f.width()
              << ", epsilon=" << format_double(f.epsilon()) << ")";
            return s.str();
        });

    m.def("gen_counting",
          [](std::size_t n, double r, std::size_t k, double epsilon, std::uint64_t seed, const std::string& mode) {
              return gen_counting({n, k, epsilon, r, seed}, counting_mode(mode));
          },
          py::arg("n"), py::arg("r"), py::arg("k") = 3, py::arg("epsilon") = 0.5, py::arg("seed") = 0,
          py::arg("mode") = "multinomial");
    m.def("gen_constant_prob",
          [](std::size_t n, double p, std::size_t k, double epsilon, std::uint64_t seed) {
              return gen_constant_prob({n, k, epsilon, p, seed});
          },
          py::arg("n"), py::arg("p"), py::arg("k") = 3, py::arg("epsilon") = 0.5, py::arg("seed") = 0);
    m.def("threshold_r", &threshold_r, py::arg("k"), py::arg("epsilon"));
    m.def("threshold_p", &threshold_p, py::arg("k"), py::arg("epsilon"), py::arg("n"));

    m.def("check_assignment",
          [](const Formula& f, const std::string& a) { return check_assignment(f, Assignment::from_string(a)); });
    m.def("enumerate_solutions",
          [](const Formula& f, std::optional<std::size_t> limit) {
              const SolutionSet s = enumerate_solutions(f, limit);
              return py::make_tuple(strings(s), s.complete);
          },
          py::arg("formula"), py::arg("limit") = py::none(),
          "Sorted solutions as bit strings (variable 1 first) and a completeness flag.");
    m.def("count_solutions", &count_solutions);
    m.def("is_satisfiable", &is_satisfiable);

    m.def("overlap_stats",
          [](const Formula& f, std::optional<std::size_t> limit) { return to_python(overlap_stats(solutions_of(f, limit))); },
          py::arg("formula"), py::arg("limit") = py::none());
    m.def("cluster_components",
          [](const Formula& f, std::size_t l, std::optional<std::size_t> limit) {
              return to_python(cluster_components(solutions_of(f, limit), l));
          },
          py::arg("formula"), py::arg("l"), py::arg("limit") = py::none());
    m.def("min_connect_l",
          [](const Formula& f) { return FactoredSolutionSpace::build(f).min_connect_l(); });
    m.def("min_overlap", [](const Formula& f) -> std::optional<std::size_t> {
        const auto ov = FactoredSolutionSpace::build(f).min_overlap();
        return ov ? std::optional(ov->agree) : std::nullopt;
    });
    m.def("find_holes",
          [](const Formula& f, std::size_t min_size, std::optional<std::size_t> limit) {
              return to_python(nlohmann::json(find_holes(f, solutions_of(f, limit), min_size)));
          },
          py::arg("formula"), py::arg("min_size") = 2, py::arg("limit") = py::none());
    m.def("hole_size_counts", [](const Formula& f, std::size_t min_size) {
        return FactoredSolutionSpace::build(f).hole_size_counts(min_size);
    });
    m.def("agreement_is_cover", [](const Formula& f, const std::string& a, const std::string& b) {
        return to_python(agreement_is_cover(f, Assignment::from_string(a), Assignment::from_string(b)));
    });
    m.def("min_cover_size", &min_cover_size);

    m.def("formula_components", [](const Formula& f) {
        std::vector<std::vector<std::size_t>> out;
        for (const auto& c : formula_components(f).components) {
            std::vector<std::size_t> one;
            for (Var v : c) one.push_back(v + 1);
            out.push_back(std::move(one));
        }
        return out;
    });
    m.def("build_H", [](const Formula& f, const std::string& a, const std::string& b) {
        return to_python(build_H(f, Assignment::from_string(a), Assignment::from_string(b)));
    });
    m.def("h_dot", [](const Formula& f, const std::string& a, const std::string& b) {
        return to_dot(build_H(f, Assignment::from_string(a), Assignment::from_string(b)));
    });
    m.def("path_via_H", [](const Formula& f, const std::string& a, const std::string& b) {
        return to_python(path_via_H(f, Assignment::from_string(a), Assignment::from_string(b)));
    });
    m.def("path_via_formula_components", [](const Formula& f, const std::string& a, const std::string& b) {
        std::vector<std::string> out;
        for (const auto& x : path_via_formula_components(f, Assignment::from_string(a), Assignment::from_string(b)))
            out.push_back(x.to_string());
        return out;
    });

    auto b = m.def_submodule("bounds", "Closed-form bounds and roots");
    b.def("lambda_c", &bounds::lambda_c);
    b.def("condition_one", &bounds::condition_one);
    b.def("epsilon_0", &bounds::epsilon_0);
    b.def("epsilon_c", [] {
        const auto e = bounds::epsilon_c();
        py::dict d;
        d["root"] = e.root;
        d["residual_at_root"] = e.residual_at_root;
        d["quoted"] = e.quoted;
        d["residual_at_quoted"] = e.residual_at_quoted;
        d["discrepancy"] = e.discrepancy;
        return d;
    });
    b.def("connected_prob_bound", &bounds::connected_prob_bound);
    b.def("simulate_connectivity", [](std::size_t n, double c, std::uint64_t samples, std::uint64_t seed) {
        return bounds::simulate_connectivity(n, c, samples, seed).frequency();
    });
    b.def("cover_exponent", &bounds::cover_exponent);
    b.def("q_c", &bounds::q_c);
    b.def("hole_prob_bound", &bounds::hole_prob_bound);
    b.def("log_hole_prob_bound", &bounds::log_hole_prob_bound);
    b.def("hole_prob_bound_exact", &bounds::hole_prob_bound_exact);
    b.def("hole_root", [](double lambda, std::size_t k) { return bounds::HoleExponent(lambda, k).root(); });
    b.def("f_k", [](double lambda, std::size_t k, double x) { return bounds::HoleExponent(lambda, k).f(x); });
    b.def("g_k", [](double lambda, std::size_t k, double x) { return bounds::HoleExponent(lambda, k).g(x); });
    b.def("stirling_form_check", &bounds::stirling_form_check);

    m.def("run_experiment",
          [](const std::string& config, const std::string& format) {
              const ExperimentReport report = run_experiment(parse_config(config));
              if (format == "csv") return py::object(py::str(write_csv(report)));
              if (format == "json") return py::module_::import("json").attr("loads")(write_json(report));
              throw DomainError("format must be 'csv' or 'json'");
          },
          py::arg("config"), py::arg("format") = "json",
          "Run an experiment from key = value config text.");

    m.def("cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              const int code = cli_dispatch(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          "Run the command-line front end in-process; returns (exit_code, stdout, stderr).");
}

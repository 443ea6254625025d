#include "eok/formula_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "eok/errors.hpp"

namespace eok {

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
std::optional<T> to_number(std::string_view tok) {
    T value{};
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) return std::nullopt;
    return value;
}

std::string_view kind_name(Provenance::Kind kind) {
    switch (kind) {
        case Provenance::Kind::counting: return "counting";
        case Provenance::Kind::constant_prob: return "constant_prob";
        case Provenance::Kind::file: break;
    }
    return "file";
}

std::optional<Provenance> parse_origin(const std::vector<std::string_view>& toks) {
    // c origin <kind> <parameter> <seed>
    if (toks.size() != 5 || toks[1] != "origin") return std::nullopt;
    Provenance p;
    if (toks[2] == "counting") p.kind = Provenance::Kind::counting;
    else if (toks[2] == "constant_prob") p.kind = Provenance::Kind::constant_prob;
    else return std::nullopt;
    auto param = to_number<double>(toks[3]);
    auto seed = to_number<std::uint64_t>(toks[4]);
    if (!param || !seed) return std::nullopt;
    p.parameter = *param;
    p.seed = *seed;
    return p;
}

}  // namespace

Formula parse_formula(std::string_view text) {
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0, m = 0, k = 0;
    double epsilon = 0.0;
    Provenance provenance;
    std::vector<Clause> clauses;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "c") {
            if (auto origin = parse_origin(toks)) provenance = *origin;
            continue;
        }
        if (toks[0] == "p") {
            if (have_header) throw ParseError(line_no, "duplicate header");
            if (toks.size() != 6 || toks[1] != "eok") throw ParseError(line_no, "malformed header, expected 'p eok <n> <m> <k> <epsilon>'");
            auto nn = to_number<std::size_t>(toks[2]);
            auto mm = to_number<std::size_t>(toks[3]);
            auto kk = to_number<std::size_t>(toks[4]);
            auto ee = to_number<double>(toks[5]);
            if (!nn || !mm || !kk || !ee) throw ParseError(line_no, "malformed header field");
            if (*kk < 3) throw ParseError(line_no, "k must be at least 3");
            if (!(*ee >= 0.0 && *ee <= 0.5)) throw ParseError(line_no, "epsilon must lie in [0, 1/2]");
            n = *nn; m = *mm; k = *kk; epsilon = *ee;
            have_header = true;
            clauses.reserve(m);
            continue;
        }
        if (!have_header) throw ParseError(line_no, "clause before header");
        if (toks.size() != k + 1) throw ParseError(line_no, "expected " + std::to_string(k) + " literals followed by 0");
        if (toks.back() != "0") throw ParseError(line_no, "clause line must end with 0");
        std::vector<Literal> lits;
        lits.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            auto v = to_number<long long>(toks[i]);
            if (!v || *v == 0) throw ParseError(line_no, "invalid literal '" + std::string(toks[i]) + "'");
            const long long mag = *v < 0 ? -*v : *v;
            if (static_cast<unsigned long long>(mag) > n) throw ParseError(line_no, "variable index out of range");
            const auto var = static_cast<Var>(mag - 1);
            for (const Literal& l : lits)
                if (l.var == var) throw ParseError(line_no, "repeated variable");
            lits.push_back({var, *v < 0});
        }
        if (clauses.size() == m) throw ParseError(line_no, "more clauses than the header declares");
        clauses.emplace_back(std::move(lits));
    }
    if (!have_header) throw ParseError(line_no, "missing header");
    if (clauses.size() != m)
        throw ParseError(line_no, "header declares " + std::to_string(m) + " clauses, found " + std::to_string(clauses.size()));
    return Formula(n, k, epsilon, std::move(clauses), provenance);
}

std::string write_formula(const Formula& f) {
    std::ostringstream out;
    const Provenance& prov = f.provenance();
    if (prov.kind != Provenance::Kind::file)
        out << "c origin " << kind_name(prov.kind) << ' ' << format_double(prov.parameter) << ' ' << prov.seed << '\n';
    out << "p eok " << f.num_vars() << ' ' << f.num_clauses() << ' ' << f.width() << ' '
        << format_double(f.epsilon()) << '\n';
    for (const Clause& cl : f.clauses()) {
        for (const Literal& l : cl.literals()) out << (l.negated ? "-" : "") << (l.var + 1) << ' ';
        out << "0\n";
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

Formula read_formula_file(const std::string& path) { return parse_formula(read_text_file(path)); }

}  // namespace eok

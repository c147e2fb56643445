#pragma once

// Text formats.
//
// Model file, one declaration per line, `#` starts a comment:
//     var <name> <cardinality>
//     edge <name> <name>          (graph mode)
//     gen <name> <name> ...       (log-linear mode)
// `edge` and `gen` lines cannot be mixed; a file with neither is an
// edgeless graph.
//
// Distribution file: `<state-label> <numerator>/<denominator>` per line;
// omitted states are zero. Table file: `<state-label> <count>`.

#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "model.hpp"
#include "numeric.hpp"

namespace toric {

struct Model {
    enum class Mode { Graph, LogLinear };

    StateSpace space;
    Mode mode = Mode::Graph;
    UndirectedGraph graph;
    GeneratorSet generators;

    bool is_graph() const { return mode == Mode::Graph; }

    ModelMatrix matrix() const {
        return is_graph() ? graph_matrix(space, graph) : loglinear_matrix(space, generators);
    }
};

namespace detail {

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

inline DomainError line_error(const std::string& source, std::size_t line, const std::string& what) {
    return DomainError(source + ":" + std::to_string(line) + ": " + what);
}

} // namespace detail

inline Model parse_model(std::istream& in, const std::string& source = "model") {
    std::vector<Variable> vars;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> edges, gens;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = detail::tokens_of(line);
        if (toks.empty()) continue;
        const auto& kw = toks[0];
        if (kw == "var") {
            if (!edges.empty() || !gens.empty())
                throw detail::line_error(source, lineno, "var declarations must precede edge/gen lines");
            if (toks.size() != 3) throw detail::line_error(source, lineno, "expected: var <name> <cardinality>");
            if (!is_integer_literal(toks[2])) throw detail::line_error(source, lineno, "cardinality must be an integer");
            const long card = std::stol(toks[2]);
            if (card < 2 || card > 1000)
                throw detail::line_error(source, lineno, "cardinality must be between 2 and 1000");
            for (const auto& v : vars)
                if (v.name == toks[1]) throw detail::line_error(source, lineno, "duplicate variable " + toks[1]);
            vars.push_back({toks[1], static_cast<int>(card)});
        } else if (kw == "edge") {
            if (toks.size() != 3) throw detail::line_error(source, lineno, "expected: edge <name> <name>");
            if (!gens.empty()) throw detail::line_error(source, lineno, "cannot mix edge and gen declarations");
            edges.push_back({lineno, {toks[1], toks[2]}});
        } else if (kw == "gen") {
            if (toks.size() < 2) throw detail::line_error(source, lineno, "expected: gen <name> ...");
            if (!edges.empty()) throw detail::line_error(source, lineno, "cannot mix edge and gen declarations");
            gens.push_back({lineno, {toks.begin() + 1, toks.end()}});
        } else {
            throw detail::line_error(source, lineno, "unknown declaration '" + kw + "'");
        }
    }
    if (vars.empty()) throw DomainError(source + ": no variables declared");

    Model model;
    try {
        model.space = StateSpace(vars);
    } catch (const DomainError& e) {
        throw DomainError(source + ": " + e.what());
    }
    auto lookup = [&](std::size_t ln, const std::string& name) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == name) return i;
        throw detail::line_error(source, ln, "unknown variable " + name);
    };
    if (!gens.empty()) {
        model.mode = Model::Mode::LogLinear;
        std::vector<VariableSet> sets;
        for (const auto& [ln, names] : gens) {
            VariableSet s;
            for (const auto& n : names) s.push_back(lookup(ln, n));
            sets.push_back(std::move(s));
            try {
                GeneratorSet(vars.size(), sets);
            } catch (const DomainError& e) {
                throw detail::line_error(source, ln, e.what());
            }
        }
        model.generators = GeneratorSet(vars.size(), std::move(sets));
    } else {
        model.mode = Model::Mode::Graph;
        model.graph = UndirectedGraph(vars.size());
        for (const auto& [ln, names] : edges) {
            try {
                model.graph.add_edge(lookup(ln, names[0]), lookup(ln, names[1]));
            } catch (const DomainError& e) {
                const std::string what = e.what();
                throw what.rfind(source, 0) == 0 ? e : detail::line_error(source, ln, what);
            }
        }
    }
    return model;
}

inline Model parse_model(const std::string& text, const std::string& source = "model") {
    std::istringstream in(text);
    return parse_model(in, source);
}

inline std::string write_model(const Model& model) {
    std::ostringstream out;
    for (const auto& v : model.space.variables()) out << "var " << v.name << ' ' << v.cardinality << '\n';
    if (model.is_graph()) {
        for (auto [a, b] : model.graph.edges())
            out << "edge " << model.space.variable(a).name << ' ' << model.space.variable(b).name << '\n';
    } else {
        for (const auto& g : model.generators.generators()) {
            out << "gen";
            for (auto v : g) out << ' ' << model.space.variable(v).name;
            out << '\n';
        }
    }
    return out.str();
}

/// Raw rational weights of a distribution file (not checked to sum to 1).
inline std::vector<Rational> parse_weights(std::istream& in, const StateSpace& space,
                                           const std::string& source = "distribution") {
    std::vector<Rational> w(space.size(), Rational(0));
    std::vector<bool> seen(space.size(), false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = detail::tokens_of(line);
        if (toks.empty()) continue;
        if (toks.size() != 2) throw detail::line_error(source, lineno, "expected: <state> <numerator>/<denominator>");
        std::size_t idx = 0;
        try {
            idx = space.parse_label(toks[0]);
            if (seen[idx]) throw DomainError("state " + toks[0] + " listed twice");
            seen[idx] = true;
            w[idx] = parse_rational(toks[1]);
            if (w[idx] < 0) throw DomainError("negative value " + toks[1]);
        } catch (const DomainError& e) {
            throw detail::line_error(source, lineno, e.what());
        }
    }
    return w;
}

inline std::vector<Rational> parse_weights(const std::string& text, const StateSpace& space,
                                           const std::string& source = "distribution") {
    std::istringstream in(text);
    return parse_weights(in, space, source);
}

inline std::vector<Integer> parse_counts(std::istream& in, const StateSpace& space, const std::string& source = "table") {
    std::vector<Integer> c(space.size(), Integer(0));
    std::vector<bool> seen(space.size(), false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = detail::tokens_of(line);
        if (toks.empty()) continue;
        if (toks.size() != 2) throw detail::line_error(source, lineno, "expected: <state> <count>");
        try {
            const auto idx = space.parse_label(toks[0]);
            if (seen[idx]) throw DomainError("state " + toks[0] + " listed twice");
            seen[idx] = true;
            c[idx] = parse_integer(toks[1]);
            if (c[idx] < 0) throw DomainError("negative count " + toks[1]);
        } catch (const DomainError& e) {
            throw detail::line_error(source, lineno, e.what());
        }
    }
    return c;
}

inline std::vector<Integer> parse_counts(const std::string& text, const StateSpace& space,
                                         const std::string& source = "table") {
    std::istringstream in(text);
    return parse_counts(in, space, source);
}

/// Nonzero entries in column order.
template <class T>
std::string write_cells(const StateSpace& space, const std::vector<T>& values) {
    std::ostringstream out;
    for (std::size_t j = 0; j < values.size(); ++j)
        if (values[j] != 0) out << space.label(j) << ' ' << to_string(values[j]) << '\n';
    return out.str();
}

/// Signed integer rows, one vector per line.
inline std::string write_vectors(const std::vector<IntegerVector>& vs) {
    std::ostringstream out;
    for (const auto& v : vs) {
        for (std::size_t k = 0; k < v.size(); ++k) out << (k ? " " : "") << v[k];
        out << '\n';
    }
    return out.str();
}

} // namespace toric

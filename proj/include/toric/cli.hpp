#pragma once

// Command-line front end. Every subcommand is a thin adapter over the
// library; exit codes: 0 success, 1 bad input, 2 budget exhausted
// (TRUNCATED), 3 parameter recovery failed verification.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "dist.hpp"
#include "errors.hpp"
#include "fiber.hpp"
#include "ideal.hpp"
#include "indep.hpp"
#include "io.hpp"

namespace toric::cli {

enum ExitCode : int { Ok = 0, BadInput = 1, Truncated = 2, RecoveryFailed = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Model load_model(const std::string& path) { return parse_model(read_file(path), path); }

inline Budget make_budget(double seconds, int max_degree) {
    Budget b;
    if (seconds > 0)
        b.time = std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
    if (max_degree > 0) b.max_degree = max_degree;
    return b;
}

inline IdealBasis markov_basis_for(const Model& model, const Budget& budget) {
    if (model.is_graph()) return graphical_markov_basis(model.space, model.graph, budget);
    return toric_markov_basis(model.matrix(), budget);
}

/// Reads a distribution file; inexact sums are normalized with a warning.
inline Distribution load_distribution(const std::string& path, const StateSpace& space, std::ostream& err) {
    auto w = parse_weights(read_file(path), space, path);
    Rational sum = 0;
    for (const auto& x : w) sum += x;
    if (sum == 0) throw DomainError(path + ": all probabilities are zero");
    if (sum != 1) {
        err << "warning: " << path << ": probabilities sum to " << to_string(sum) << "; normalizing\n";
        return normalize(space, std::move(w));
    }
    return Distribution(space, std::move(w));
}

/// Parses `X=<names>:<x>/<x'>;Y=<names>:<y>/<y'>;Z=<names>:<z>` (Z may be
/// empty: `Z=`). Names are comma-separated; states are labels over the
/// listed variables in the listed order.
inline std::pair<IndependenceStatement, CpdSpec> parse_cpd_spec(const std::string& text, const StateSpace& space) {
    std::map<char, std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto semi = text.find(';', start);
        const auto piece = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        if (piece.size() < 2 || piece[1] != '=' || (piece[0] != 'X' && piece[0] != 'Y' && piece[0] != 'Z'))
            throw DomainError("malformed --spec part '" + piece + "'");
        if (parts.count(piece[0])) throw DomainError("--spec repeats " + std::string(1, piece[0]));
        parts[piece[0]] = piece.substr(2);
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (!parts.count('X') || !parts.count('Y')) throw DomainError("--spec needs X= and Y= parts");

    struct Part {
        VariableSet vars;
        std::vector<std::vector<int>> states;
    };
    auto parse_part = [&](const std::string& body, std::size_t want_states) {
        Part p;
        if (body.empty()) {
            if (want_states != 1) throw DomainError("--spec: X and Y must be non-empty");
            p.states.emplace_back();
            return p;
        }
        const auto colon = body.find(':');
        if (colon == std::string::npos) throw DomainError("--spec part '" + body + "' lacks ':'");
        std::stringstream names(body.substr(0, colon));
        std::string name;
        while (std::getline(names, name, ',')) p.vars.push_back(space.variable_index(name));
        std::stringstream states(body.substr(colon + 1));
        std::string st;
        while (std::getline(states, st, '/')) {
            std::vector<int> vals;
            if (space.wide_labels()) {
                std::stringstream vs(st);
                std::string v;
                while (std::getline(vs, v, '.')) vals.push_back(std::stoi(v));
            } else {
                for (char c : st) {
                    if (c < '0' || c > '9') throw DomainError("--spec: malformed state '" + st + "'");
                    vals.push_back(c - '0');
                }
            }
            if (vals.size() != p.vars.size()) throw DomainError("--spec: state '" + st + "' has the wrong length");
            for (std::size_t k = 0; k < vals.size(); ++k)
                if (vals[k] >= space.cardinality(p.vars[k])) throw DomainError("--spec: state '" + st + "' out of range");
            p.states.push_back(std::move(vals));
        }
        if (p.states.size() != want_states)
            throw DomainError("--spec part '" + body + "' needs " + std::to_string(want_states) + " state(s)");
        return p;
    };
    const Part x = parse_part(parts['X'], 2);
    const Part y = parse_part(parts['Y'], 2);
    const Part z = parse_part(parts.count('Z') ? parts['Z'] : "", 1);

    // The statement stores its sets sorted; permute the values alike.
    auto sorted_values = [](const VariableSet& vars, const std::vector<int>& vals) {
        std::vector<std::pair<std::size_t, int>> kv;
        for (std::size_t k = 0; k < vars.size(); ++k) kv.emplace_back(vars[k], vals[k]);
        std::sort(kv.begin(), kv.end());
        std::vector<int> out;
        for (auto& e : kv) out.push_back(e.second);
        return out;
    };
    IndependenceStatement stmt(x.vars, y.vars, z.vars);
    CpdSpec spec{sorted_values(x.vars, x.states[0]), sorted_values(x.vars, x.states[1]),
                 sorted_values(y.vars, y.states[0]), sorted_values(y.vars, y.states[1]),
                 sorted_values(z.vars, z.states[0])};
    return {stmt, spec};
}

inline void print_basis(const IdealBasis& basis, const StateSpace& space, std::ostream& out) {
    for (const auto& b : basis.binomials) out << render(b, space) << '\n';
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Factorization of discrete distributions via toric ideals", "toric"};
    app.require_subcommand(1);

    std::string model_path, data_path, spec_text;
    double budget_seconds = 0;
    int max_degree = 0;
    double tol = 1e-9;
    std::uint64_t steps = 1, seed = 0;
    std::size_t n = 0;

    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--budget", budget_seconds, "time budget in seconds for the Groebner pipeline")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-degree", max_degree, "degree budget for S-pairs")->check(CLI::PositiveNumber);
    };

    auto* markov = app.add_subcommand("markov-basis", "print a minimal Markov basis and its degree histogram");
    markov->add_option("model", model_path)->required();
    add_budget(markov);

    auto* pairwise = app.add_subcommand("pairwise", "print the pairwise Markov quadrics of a graph model");
    pairwise->add_option("model", model_path)->required();

    auto* kernel = app.add_subcommand("kernel", "print an integer kernel basis of the model matrix");
    kernel->add_option("model", model_path)->required();

    auto* classify_cmd = app.add_subcommand("classify", "decide FACTORS / LIMIT_ONLY / OUTSIDE");
    classify_cmd->add_option("model", model_path)->required();
    classify_cmd->add_option("dist", data_path)->required();
    add_budget(classify_cmd);

    auto* recover = app.add_subcommand("recover", "recover parameters of a factoring distribution");
    recover->add_option("model", model_path)->required();
    recover->add_option("dist", data_path)->required();
    recover->add_option("--tol", tol, "relative verification tolerance")->check(CLI::PositiveNumber);
    add_budget(recover);

    auto* cpr_cmd = app.add_subcommand("cpr", "evaluate one cross-product ratio exactly");
    cpr_cmd->add_option("model", model_path)->required();
    cpr_cmd->add_option("dist", data_path)->required();
    cpr_cmd->add_option("--spec", spec_text, "X=<vars>:<x>/<x'>;Y=<vars>:<y>/<y'>;Z=<vars>:<z>")->required();

    auto* walk = app.add_subcommand("walk", "random walk on the fiber of a table with Markov moves");
    walk->add_option("model", model_path)->required();
    walk->add_option("table", data_path)->required();
    walk->add_option("--steps", steps)->required()->check(CLI::PositiveNumber);
    walk->add_option("--seed", seed)->required();
    add_budget(walk);

    auto* pairs = app.add_subcommand("pairs-model", "emit the model file of n non-interacting binary pairs");
    pairs->add_option("n", n)->required()->check(CLI::PositiveNumber);

    auto* prop = app.add_subcommand("prop10", "print the degree-2^n binomial of the pairs model");
    prop->add_option("n", n)->required()->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return BadInput;
    }

    try {
        const Budget budget = detail::make_budget(budget_seconds, max_degree);
        if (*markov) {
            const auto model = detail::load_model(model_path);
            const auto basis = detail::markov_basis_for(model, budget);
            detail::print_basis(basis, model.space, out);
            out << format_histogram(degree_histogram(basis)) << '\n';
        } else if (*pairwise) {
            const auto model = detail::load_model(model_path);
            if (!model.is_graph()) throw DomainError(model_path + ": pairwise needs a graph (edge) model");
            detail::print_basis(pairwise_ideal(model.graph, model.space), model.space, out);
        } else if (*kernel) {
            const auto model = detail::load_model(model_path);
            out << write_vectors(integer_kernel(model.matrix()).basis);
        } else if (*classify_cmd) {
            const auto model = detail::load_model(model_path);
            const auto p = detail::load_distribution(data_path, model.space, err);
            const auto a = model.matrix();
            const auto v = classify(p, a, detail::markov_basis_for(model, budget));
            out << verdict_name(v.status) << '\n';
            out << "support:";
            for (auto j : v.support) out << ' ' << model.space.label(j);
            out << '\n' << "nice: " << (v.nice ? "yes" : "no") << '\n';
            if (v.failing_binomial) out << "witness: " << render(*v.failing_binomial, model.space) << '\n';
        } else if (*recover) {
            const auto model = detail::load_model(model_path);
            const auto p = detail::load_distribution(data_path, model.space, err);
            const auto a = model.matrix();
            const auto v = classify(p, a, detail::markov_basis_for(model, budget));
            if (v.status != FactorStatus::Factors)
                throw DomainError(std::string("distribution does not factor (") + verdict_name(v.status) + ")");
            const auto res = recover_parameters(p, a, tol);
            if (!res.ok()) {
                out << "RECOVERY_FAILED\n";
                err << "recover: " << res.failure << '\n';
                return RecoveryFailed;
            }
            out << "VERIFIED max_rel_error=" << std::setprecision(3) << std::scientific << res.max_relative_error
                << '\n';
            out << std::setprecision(17) << std::defaultfloat;
            for (std::size_t i = 0; i < a.rows(); ++i)
                out << a.row_labels()[i] << ' ' << to_double(res.params->t[i]) << '\n';
        } else if (*cpr_cmd) {
            const auto model = detail::load_model(model_path);
            const auto p = detail::load_distribution(data_path, model.space, err);
            const auto [stmt, spec] = detail::parse_cpd_spec(spec_text, model.space);
            out << to_string(cpr(p, stmt, spec)) << '\n';
        } else if (*walk) {
            const auto model = detail::load_model(model_path);
            const Table n0(model.space, parse_counts(detail::read_file(data_path), model.space, data_path));
            const auto basis = detail::markov_basis_for(model, budget);
            const auto n1 = random_walk(n0, basis, WalkConfig{steps, seed});
            out << write_cells(model.space, n1.counts());
        } else if (*pairs) {
            const auto pm = pairs_model(n);
            Model m;
            m.space = pm.space;
            m.graph = pm.graph;
            out << write_model(m);
        } else if (*prop) {
            const auto pm = pairs_model(n);
            out << render(prop10_binomial(n), pm.space) << '\n';
        }
    } catch (const TruncatedError& e) {
        out << "TRUNCATED\n";
        err << e.what() << '\n';
        return Truncated;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return Truncated;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return BadInput;
    }
    return Ok;
}

} // namespace toric::cli

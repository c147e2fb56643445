#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace toric {

struct Variable {
    std::string name;
    int cardinality;
};

/// Product state space. Joint states are numbered mixed-radix with the
/// last variable varying fastest: binary (X1,X2,X3) enumerates 000, 001, 010, ...
class StateSpace {
public:
    StateSpace() = default;

    explicit StateSpace(std::vector<Variable> vars) : vars_(std::move(vars)) {
        if (vars_.empty()) throw DomainError("state space needs at least one variable");
        if (vars_.size() > 64) throw DomainError("state space supports at most 64 variables");
        size_ = 1;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            const auto& v = vars_[i];
            if (v.name.empty()) throw DomainError("variable name must be non-empty");
            if (v.cardinality < 2)
                throw DomainError("variable " + v.name + " must have at least 2 states");
            for (std::size_t j = 0; j < i; ++j)
                if (vars_[j].name == v.name) throw DomainError("duplicate variable " + v.name);
            if (size_ > (std::size_t{1} << 40) / static_cast<std::size_t>(v.cardinality))
                throw DomainError("state space too large");
            size_ *= static_cast<std::size_t>(v.cardinality);
        }
    }

    /// `n` variables named X1..Xn, all with the same cardinality.
    static StateSpace uniform(std::size_t n, int cardinality) {
        return with_cardinalities(std::vector<int>(n, cardinality));
    }

    static StateSpace with_cardinalities(const std::vector<int>& cards) {
        std::vector<Variable> vars;
        for (std::size_t i = 0; i < cards.size(); ++i)
            vars.push_back({"X" + std::to_string(i + 1), cards[i]});
        return StateSpace(std::move(vars));
    }

    std::size_t num_variables() const { return vars_.size(); }
    std::size_t size() const { return size_; }
    const std::vector<Variable>& variables() const { return vars_; }
    const Variable& variable(std::size_t i) const { return vars_.at(i); }
    int cardinality(std::size_t i) const { return vars_.at(i).cardinality; }

    std::size_t variable_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return i;
        throw DomainError("unknown variable " + name);
    }

    std::size_t index_of_state(std::span<const int> state) const {
        if (state.size() != vars_.size())
            throw DomainError("state has " + std::to_string(state.size()) + " values, expected " +
                              std::to_string(vars_.size()));
        std::size_t idx = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (state[i] < 0 || state[i] >= vars_[i].cardinality)
                throw DomainError("value " + std::to_string(state[i]) + " out of range for variable " +
                                  vars_[i].name);
            idx = idx * static_cast<std::size_t>(vars_[i].cardinality) + static_cast<std::size_t>(state[i]);
        }
        return idx;
    }

    std::vector<int> state_of_index(std::size_t index) const {
        if (index >= size_)
            throw DomainError("state index " + std::to_string(index) + " out of range (m = " +
                              std::to_string(size_) + ")");
        std::vector<int> state(vars_.size());
        for (std::size_t i = vars_.size(); i-- > 0;) {
            const auto card = static_cast<std::size_t>(vars_[i].cardinality);
            state[i] = static_cast<int>(index % card);
            index /= card;
        }
        return state;
    }

    /// Digit-string label (`0110`); values are dot-separated when some
    /// variable has more than 10 states.
    std::string label(std::size_t index) const {
        const auto state = state_of_index(index);
        return format_values(state);
    }

    std::string format_values(std::span<const int> values) const {
        std::string out;
        const bool dotted = wide_labels();
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (dotted && i > 0) out += '.';
            out += std::to_string(values[i]);
        }
        return out;
    }

    /// Inverse of `label`.
    std::size_t parse_label(const std::string& text) const {
        std::vector<int> values;
        if (wide_labels()) {
            std::size_t start = 0;
            while (start <= text.size()) {
                const auto dot = text.find('.', start);
                const auto piece = text.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
                if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
                    throw DomainError("malformed state label '" + text + "'");
                values.push_back(std::stoi(piece));
                if (dot == std::string::npos) break;
                start = dot + 1;
            }
        } else {
            for (char c : text) {
                if (c < '0' || c > '9') throw DomainError("malformed state label '" + text + "'");
                values.push_back(c - '0');
            }
        }
        if (values.size() != vars_.size())
            throw DomainError("state label '" + text + "' has wrong length");
        return index_of_state(values);
    }

    bool wide_labels() const {
        return std::any_of(vars_.begin(), vars_.end(), [](const Variable& v) { return v.cardinality > 10; });
    }

    /// Number of joint states of a variable subset.
    std::size_t subset_size(std::span<const std::size_t> subset) const {
        std::size_t n = 1;
        for (auto v : subset) n *= static_cast<std::size_t>(cardinality(v));
        return n;
    }

    /// Mixed-radix index of the projection of `state` onto `subset`.
    std::size_t local_index(std::span<const int> state, std::span<const std::size_t> subset) const {
        std::size_t idx = 0;
        for (auto v : subset) idx = idx * static_cast<std::size_t>(cardinality(v)) + static_cast<std::size_t>(state[v]);
        return idx;
    }

    std::vector<int> local_state(std::size_t index, std::span<const std::size_t> subset) const {
        std::vector<int> values(subset.size());
        for (std::size_t k = subset.size(); k-- > 0;) {
            const auto card = static_cast<std::size_t>(cardinality(subset[k]));
            values[k] = static_cast<int>(index % card);
            index /= card;
        }
        return values;
    }

    friend bool operator==(const StateSpace& a, const StateSpace& b) {
        if (a.vars_.size() != b.vars_.size()) return false;
        for (std::size_t i = 0; i < a.vars_.size(); ++i)
            if (a.vars_[i].name != b.vars_[i].name || a.vars_[i].cardinality != b.vars_[i].cardinality)
                return false;
        return true;
    }

private:
    std::vector<Variable> vars_;
    std::size_t size_ = 0;
};

using VariableSet = std::vector<std::size_t>;

/// Generators of a log-linear model: non-empty, duplicate-free subsets of
/// variable indices, each stored sorted.
class GeneratorSet {
public:
    GeneratorSet() = default;

    GeneratorSet(std::size_t num_variables, std::vector<VariableSet> gens) : gens_(std::move(gens)) {
        for (auto& g : gens_) {
            if (g.empty()) throw DomainError("generator must be non-empty");
            std::sort(g.begin(), g.end());
            if (std::adjacent_find(g.begin(), g.end()) != g.end())
                throw DomainError("generator repeats a variable");
            if (g.back() >= num_variables) throw DomainError("generator references unknown variable");
        }
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (gens_[i] == gens_[j]) throw DomainError("duplicate generator");
    }

    const std::vector<VariableSet>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    bool empty() const { return gens_.empty(); }
    const VariableSet& operator[](std::size_t i) const { return gens_[i]; }

    friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

private:
    std::vector<VariableSet> gens_;
};

/// Simple undirected graph on at most 64 vertices stored as adjacency masks.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(std::size_t n) : adj_(n, 0) {
        if (n > 64) throw DomainError("graphs support at most 64 vertices");
    }

    UndirectedGraph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
        : UndirectedGraph(n) {
        for (auto [a, b] : edges) add_edge(a, b);
    }

    static UndirectedGraph complete(std::size_t n) {
        UndirectedGraph g(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) g.add_edge(a, b);
        return g;
    }

    /// Path X1 - X2 - ... - Xn.
    static UndirectedGraph chain(std::size_t n) {
        UndirectedGraph g(n);
        for (std::size_t a = 0; a + 1 < n; ++a) g.add_edge(a, a + 1);
        return g;
    }

    /// Cycle X1 - X2 - ... - Xn - X1.
    static UndirectedGraph cycle(std::size_t n) {
        UndirectedGraph g = chain(n);
        if (n > 2) g.add_edge(0, n - 1);
        return g;
    }

    void add_edge(std::size_t a, std::size_t b) {
        if (a >= adj_.size() || b >= adj_.size()) throw DomainError("edge references undeclared vertex");
        if (a == b) throw DomainError("self-loops are not allowed");
        adj_[a] |= std::uint64_t{1} << b;
        adj_[b] |= std::uint64_t{1} << a;
    }

    std::size_t num_vertices() const { return adj_.size(); }
    bool adjacent(std::size_t a, std::size_t b) const { return (adj_.at(a) >> b) & 1U; }
    std::uint64_t neighbours(std::size_t v) const { return adj_.at(v); }

    /// Sorted (a < b) edge list.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t a = 0; a < adj_.size(); ++a)
            for (std::size_t b = a + 1; b < adj_.size(); ++b)
                if (adjacent(a, b)) out.emplace_back(a, b);
        return out;
    }

    std::vector<std::pair<std::size_t, std::size_t>> non_edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t a = 0; a < adj_.size(); ++a)
            for (std::size_t b = a + 1; b < adj_.size(); ++b)
                if (!adjacent(a, b)) out.emplace_back(a, b);
        return out;
    }

    friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

private:
    std::vector<std::uint64_t> adj_;
};

/// d x m non-negative integer matrix whose column j is the sufficient
/// statistic of joint state j.
class ModelMatrix {
public:
    ModelMatrix() = default;

    ModelMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries,
                std::vector<std::string> row_labels = {}, std::vector<std::string> col_labels = {})
        : rows_(rows), cols_(cols), a_(std::move(entries)), row_labels_(std::move(row_labels)),
          col_labels_(std::move(col_labels)) {
        if (a_.size() != rows_ * cols_) throw DomainError("matrix entry count does not match its shape");
        for (auto v : a_)
            if (v < 0) throw DomainError("model matrix entries must be non-negative");
        for (std::size_t j = 0; j < cols_; ++j) {
            bool nonzero = false;
            for (std::size_t i = 0; i < rows_ && !nonzero; ++i) nonzero = at(i, j) != 0;
            if (!nonzero) throw DomainError("model matrix column " + std::to_string(j) + " is zero");
        }
        if (row_labels_.empty())
            for (std::size_t i = 0; i < rows_; ++i) row_labels_.push_back("t" + std::to_string(i + 1));
        if (col_labels_.empty())
            for (std::size_t j = 0; j < cols_; ++j) col_labels_.push_back(std::to_string(j));
        if (row_labels_.size() != rows_ || col_labels_.size() != cols_)
            throw DomainError("matrix label count does not match its shape");
    }

    static ModelMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
        const std::size_t d = rows.size();
        const std::size_t m = d ? rows[0].size() : 0;
        std::vector<std::int64_t> e;
        for (const auto& r : rows) {
            if (r.size() != m) throw DomainError("ragged matrix rows");
            e.insert(e.end(), r.begin(), r.end());
        }
        return ModelMatrix(d, m, std::move(e));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    std::span<const std::int64_t> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    std::vector<std::size_t> column_support(std::size_t j) const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < rows_; ++i)
            if (at(i, j) != 0) s.push_back(i);
        return s;
    }

    /// A * n for a non-negative integer vector `n` (exponents or counts).
    template <class T>
    std::vector<T> apply(std::span<const T> n) const {
        if (n.size() != cols_) throw DomainError("vector length does not match matrix columns");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && n[j] != 0) out[i] += T(at(i, j)) * n[j];
        return out;
    }

    /// True when every column has the same sum (all binomials of I_A homogeneous).
    bool constant_column_sum() const {
        std::int64_t first = -1;
        for (std::size_t j = 0; j < cols_; ++j) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < rows_; ++i) s += at(i, j);
            if (first < 0) first = s;
            else if (s != first) return false;
        }
        return true;
    }

    friend bool operator==(const ModelMatrix& a, const ModelMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> a_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
};

namespace detail {

inline void bron_kerbosch(const UndirectedGraph& g, std::uint64_t r, std::uint64_t p, std::uint64_t x,
                          std::vector<std::uint64_t>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    // Tomita pivot: vertex of P u X with most neighbours in P.
    std::size_t pivot = 0;
    int best = -1;
    for (std::uint64_t px = p | x; px; px &= px - 1) {
        const auto u = static_cast<std::size_t>(std::countr_zero(px));
        const int c = std::popcount(p & g.neighbours(u));
        if (c > best) {
            best = c;
            pivot = u;
        }
    }
    for (std::uint64_t cand = p & ~g.neighbours(pivot); cand; cand &= cand - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(cand));
        const std::uint64_t bit = std::uint64_t{1} << v;
        bron_kerbosch(g, r | bit, p & g.neighbours(v), x & g.neighbours(v), out);
        p &= ~bit;
        x |= bit;
    }
}

inline VariableSet mask_to_set(std::uint64_t mask) {
    VariableSet s;
    for (; mask; mask &= mask - 1) s.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    return s;
}

} // namespace detail

inline std::size_t index_of_state(const StateSpace& space, std::span<const int> state) {
    return space.index_of_state(state);
}

inline std::vector<int> state_of_index(const StateSpace& space, std::size_t index) {
    return space.state_of_index(index);
}

/// All maximal cliques, each sorted, the list sorted lexicographically.
inline GeneratorSet maximal_cliques(const UndirectedGraph& graph) {
    const std::size_t n = graph.num_vertices();
    std::vector<std::uint64_t> masks;
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    if (n > 0) detail::bron_kerbosch(graph, 0, all, 0, masks);
    std::vector<VariableSet> cliques;
    for (auto m : masks) cliques.push_back(detail::mask_to_set(m));
    std::sort(cliques.begin(), cliques.end());
    return GeneratorSet(n, std::move(cliques));
}

inline std::string generator_name(const StateSpace& space, const VariableSet& gen) {
    std::string s = "{";
    for (std::size_t k = 0; k < gen.size(); ++k) {
        if (k) s += ',';
        s += space.variable(gen[k]).name;
    }
    return s + "}";
}

/// 0/1 matrix with one row per (generator, local state); blocks in generator
/// order, local states mixed-radix within a block.
inline ModelMatrix loglinear_matrix(const StateSpace& space, const GeneratorSet& gens) {
    if (gens.empty()) throw DomainError("log-linear model needs at least one generator");
    for (const auto& g : gens.generators())
        if (g.back() >= space.num_variables()) throw DomainError("generator references unknown variable");

    const std::size_t m = space.size();
    std::size_t d = 0;
    std::vector<std::size_t> offsets;
    std::vector<std::string> row_labels;
    for (const auto& g : gens.generators()) {
        offsets.push_back(d);
        const std::size_t local = space.subset_size(g);
        const auto name = generator_name(space, g);
        for (std::size_t s = 0; s < local; ++s) {
            const auto values = space.local_state(s, g);
            std::string digits;
            for (std::size_t k = 0; k < values.size(); ++k) {
                if (space.wide_labels() && k) digits += '.';
                digits += std::to_string(values[k]);
            }
            row_labels.push_back(name + "=" + digits);
        }
        d += local;
    }

    std::vector<std::int64_t> entries(d * m, 0);
    std::vector<std::string> col_labels;
    for (std::size_t j = 0; j < m; ++j) {
        const auto state = space.state_of_index(j);
        col_labels.push_back(space.format_values(state));
        for (std::size_t b = 0; b < gens.size(); ++b) {
            const std::size_t row = offsets[b] + space.local_index(state, gens[b]);
            entries[row * m + j] = 1;
        }
    }
    return ModelMatrix(d, m, std::move(entries), std::move(row_labels), std::move(col_labels));
}

inline ModelMatrix graph_matrix(const StateSpace& space, const UndirectedGraph& graph) {
    if (graph.num_vertices() != space.num_variables())
        throw DomainError("graph has " + std::to_string(graph.num_vertices()) + " vertices but the state space has " +
                          std::to_string(space.num_variables()) + " variables");
    return loglinear_matrix(space, maximal_cliques(graph));
}

} // namespace toric

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "dist.hpp"
#include "errors.hpp"
#include "ideal.hpp"
#include "lattice.hpp"
#include "model.hpp"

namespace toric {

class UndefinedValueError : public DomainError {
public:
    using DomainError::DomainError;
};

/// X independent of Y given Z.
struct IndependenceStatement {
    VariableSet x;
    VariableSet y;
    VariableSet z;

    IndependenceStatement() = default;
    IndependenceStatement(VariableSet xs, VariableSet ys, VariableSet zs)
        : x(std::move(xs)), y(std::move(ys)), z(std::move(zs)) {
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        std::sort(z.begin(), z.end());
        if (x.empty() || y.empty()) throw DomainError("independence statement needs non-empty X and Y");
        std::vector<std::size_t> all;
        all.insert(all.end(), x.begin(), x.end());
        all.insert(all.end(), y.begin(), y.end());
        all.insert(all.end(), z.begin(), z.end());
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            throw DomainError("X, Y and Z must be pairwise disjoint");
    }

    void check(const StateSpace& space) const {
        for (const auto* s : {&x, &y, &z})
            for (auto v : *s)
                if (v >= space.num_variables()) throw DomainError("statement references unknown variable");
    }

    bool saturated(const StateSpace& space) const {
        return x.size() + y.size() + z.size() == space.num_variables();
    }

    friend bool operator==(const IndependenceStatement&, const IndependenceStatement&) = default;
    friend auto operator<=>(const IndependenceStatement&, const IndependenceStatement&) = default;
};

inline std::string describe(const IndependenceStatement& s, const StateSpace& space) {
    auto names = [&](const VariableSet& vs) {
        std::string out = "{";
        for (std::size_t k = 0; k < vs.size(); ++k) {
            if (k) out += ',';
            out += space.variable(vs[k]).name;
        }
        return out + "}";
    };
    return names(s.x) + " _|_ " + names(s.y) + " | " + names(s.z);
}

/// States x != x2 of X, y != y2 of Y and z of Z, as value lists in the
/// variable order of the statement's sets.
struct CpdSpec {
    std::vector<int> x;
    std::vector<int> x2;
    std::vector<int> y;
    std::vector<int> y2;
    std::vector<int> z;
};

namespace detail {

inline std::size_t joint_index(const StateSpace& space, const IndependenceStatement& s, const std::vector<int>& xv,
                               const std::vector<int>& yv, const std::vector<int>& zv) {
    std::vector<int> state(space.num_variables(), 0);
    auto put = [&](const VariableSet& vars, const std::vector<int>& vals) {
        if (vals.size() != vars.size()) throw DomainError("state list length does not match its variable set");
        for (std::size_t k = 0; k < vars.size(); ++k) state[vars[k]] = vals[k];
    };
    put(s.x, xv);
    put(s.y, yv);
    put(s.z, zv);
    return space.index_of_state(state);
}

inline void check_cpd(const Distribution& p, const IndependenceStatement& s, const CpdSpec& spec) {
    s.check(p.space());
    if (!s.saturated(p.space()))
        throw DomainError("cpd/cpr evaluate saturated statements only (X u Y u Z must cover all variables)");
    if (spec.x == spec.x2) throw DomainError("cpd needs distinct states x and x'");
    if (spec.y == spec.y2) throw DomainError("cpd needs distinct states y and y'");
}

} // namespace detail

/// P(x,y,z)P(x',y',z) - P(x',y,z)P(x,y',z)
inline Rational cpd(const Distribution& p, const IndependenceStatement& s, const CpdSpec& spec) {
    detail::check_cpd(p, s, spec);
    const auto& sp = p.space();
    return p[detail::joint_index(sp, s, spec.x, spec.y, spec.z)] * p[detail::joint_index(sp, s, spec.x2, spec.y2, spec.z)] -
           p[detail::joint_index(sp, s, spec.x2, spec.y, spec.z)] * p[detail::joint_index(sp, s, spec.x, spec.y2, spec.z)];
}

/// P(x,y,z)P(x',y',z) / (P(x',y,z)P(x,y',z)); refuses zero denominators.
inline Rational cpr(const Distribution& p, const IndependenceStatement& s, const CpdSpec& spec) {
    detail::check_cpd(p, s, spec);
    const auto& sp = p.space();
    const Rational den =
        p[detail::joint_index(sp, s, spec.x2, spec.y, spec.z)] * p[detail::joint_index(sp, s, spec.x, spec.y2, spec.z)];
    if (den == 0) throw UndefinedValueError("cross-product ratio is undefined: zero denominator");
    return p[detail::joint_index(sp, s, spec.x, spec.y, spec.z)] * p[detail::joint_index(sp, s, spec.x2, spec.y2, spec.z)] /
           den;
}

/// Binary shorthand cpr(X, Y | Z = z) with x, y = 0 and x', y' = 1.
inline Rational cpr_binary(const Distribution& p, std::size_t xvar, std::size_t yvar, const VariableSet& zvars,
                           const std::vector<int>& z) {
    const IndependenceStatement s({xvar}, {yvar}, zvars);
    // Statement sorts Z; realign the given values with the sorted order.
    std::vector<std::pair<std::size_t, int>> zz;
    for (std::size_t k = 0; k < zvars.size(); ++k) zz.emplace_back(zvars[k], z.at(k));
    std::sort(zz.begin(), zz.end());
    std::vector<int> zs;
    for (auto& e : zz) zs.push_back(e.second);
    return cpr(p, s, CpdSpec{{0}, {1}, {0}, {1}, zs});
}

/// One square-free quadric per (x < x', y < y', z), all in mixed-radix order.
inline IdealBasis statement_binomials(const IndependenceStatement& s, const StateSpace& space) {
    s.check(space);
    if (!s.saturated(space))
        throw DomainError("only saturated statements translate to binomials (X u Y u Z must cover all variables)");
    const std::size_t nx = space.subset_size(s.x);
    const std::size_t ny = space.subset_size(s.y);
    const std::size_t nz = space.subset_size(s.z);
    const std::size_t m = space.size();
    std::vector<Binomial> out;
    for (std::size_t x1 = 0; x1 < nx; ++x1)
        for (std::size_t x2 = x1 + 1; x2 < nx; ++x2)
            for (std::size_t y1 = 0; y1 < ny; ++y1)
                for (std::size_t y2 = y1 + 1; y2 < ny; ++y2)
                    for (std::size_t zi = 0; zi < nz; ++zi) {
                        const auto xa = space.local_state(x1, s.x);
                        const auto xb = space.local_state(x2, s.x);
                        const auto ya = space.local_state(y1, s.y);
                        const auto yb = space.local_state(y2, s.y);
                        const auto zv = space.local_state(zi, s.z);
                        Binomial b{ExponentVector(m, 0), ExponentVector(m, 0)};
                        ++b.plus[detail::joint_index(space, s, xa, ya, zv)];
                        ++b.plus[detail::joint_index(space, s, xb, yb, zv)];
                        ++b.minus[detail::joint_index(space, s, xb, ya, zv)];
                        ++b.minus[detail::joint_index(space, s, xa, yb, zv)];
                        out.push_back(std::move(b));
                    }
    return IdealBasis(std::move(out), MonomialOrder::grevlex(m));
}

/// Quadrics of X_i _|_ X_j | rest over all non-edges {X_i, X_j}.
inline IdealBasis pairwise_ideal(const UndirectedGraph& g, const StateSpace& space) {
    if (g.num_vertices() != space.num_variables())
        throw DomainError("graph vertex count does not match the state space");
    std::vector<Binomial> all;
    for (auto [i, j] : g.non_edges()) {
        VariableSet rest;
        for (std::size_t v = 0; v < space.num_variables(); ++v)
            if (v != i && v != j) rest.push_back(v);
        auto part = statement_binomials(IndependenceStatement({i}, {j}, rest), space);
        all.insert(all.end(), part.binomials.begin(), part.binomials.end());
    }
    return IdealBasis(std::move(all), MonomialOrder::grevlex(space.size()));
}

/// Every path from X to Y meets Z.
inline bool separates(const UndirectedGraph& g, const VariableSet& x, const VariableSet& y, const VariableSet& z) {
    if (x.empty() || y.empty()) throw DomainError("separation query needs non-empty X and Y");
    const std::size_t n = g.num_vertices();
    std::uint64_t xm = 0, ym = 0, zm = 0;
    auto to_mask = [&](const VariableSet& s, std::uint64_t& mask) {
        for (auto v : s) {
            if (v >= n) throw DomainError("separation query references unknown vertex");
            mask |= std::uint64_t{1} << v;
        }
    };
    to_mask(x, xm);
    to_mask(y, ym);
    to_mask(z, zm);
    if ((xm & ym) || (xm & zm) || (ym & zm)) throw DomainError("X, Y and Z must be pairwise disjoint");
    std::uint64_t seen = xm;
    std::uint64_t frontier = xm;
    while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1)
            next |= g.neighbours(static_cast<std::size_t>(std::countr_zero(f)));
        next &= ~seen & ~zm;
        if (next & ym) return false;
        seen |= next;
        frontier = next;
    }
    return true;
}

/// All (X, Y, Z) with disjoint non-empty X, Y and Z separating them, listed
/// once per unordered {X, Y} (the set holding the smallest vertex is X) and
/// sorted.
inline std::vector<IndependenceStatement> global_statements(const UndirectedGraph& g, std::size_t max_vertices = 8) {
    const std::size_t n = g.num_vertices();
    if (n > max_vertices)
        throw ResourceError("global statement enumeration is limited to " + std::to_string(max_vertices) + " vertices");
    std::vector<IndependenceStatement> out;
    std::vector<int> role(n, 0);  // 0 none, 1 X, 2 Y, 3 Z
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        VariableSet xs, ys, zs;
        for (std::size_t v = 0; v < n; ++v) {
            const auto r = c % 4;
            c /= 4;
            if (r == 1) xs.push_back(v);
            else if (r == 2) ys.push_back(v);
            else if (r == 3) zs.push_back(v);
        }
        if (xs.empty() || ys.empty() || xs.front() > ys.front()) continue;
        if (separates(g, xs, ys, zs)) out.emplace_back(xs, ys, zs);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Marginal of P on the variables of `vars` (in ascending order), as a
/// vector indexed mixed-radix over those variables.
inline std::vector<Rational> marginal(const Distribution& p, VariableSet vars) {
    std::sort(vars.begin(), vars.end());
    const auto& sp = p.space();
    std::vector<Rational> out(sp.subset_size(vars), Rational(0));
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0) continue;
        out[sp.local_index(sp.state_of_index(j), vars)] += p[j];
    }
    return out;
}

/// Exact truth of X _|_ Y | Z at P via the marginal on X u Y u Z. Works for
/// non-saturated statements too; this is a numeric check, not an ideal.
inline bool statement_holds(const Distribution& p, const IndependenceStatement& s) {
    const auto& sp = p.space();
    s.check(sp);
    VariableSet w;
    w.insert(w.end(), s.x.begin(), s.x.end());
    w.insert(w.end(), s.y.begin(), s.y.end());
    w.insert(w.end(), s.z.begin(), s.z.end());
    std::sort(w.begin(), w.end());
    std::vector<Variable> vars;
    for (auto v : w) vars.push_back(sp.variable(v));
    const StateSpace sub(vars);
    const Distribution marg(sub, marginal(p, w));
    auto relabel = [&](const VariableSet& set) {
        VariableSet r;
        for (auto v : set) r.push_back(static_cast<std::size_t>(std::find(w.begin(), w.end(), v) - w.begin()));
        return r;
    };
    const IndependenceStatement local(relabel(s.x), relabel(s.y), relabel(s.z));
    return !vanishes(marg, statement_binomials(local, sub)).has_value();
}

/// Markov basis of a graphical model seeded with the pairwise quadrics. The
/// pairwise moves span the integer kernel of A(G), so saturating their ideal
/// yields the toric ideal; falls back to the kernel route if the seed rank
/// disagrees.
inline IdealBasis graphical_markov_basis(const StateSpace& space, const UndirectedGraph& g, const Budget& budget = {}) {
    const auto a = graph_matrix(space, g);
    const auto seeds = pairwise_ideal(g, space);
    const std::size_t kernel_rank = space.size() - rank(a);
    std::size_t seed_rank = 0;
    if (!seeds.empty()) {
        std::vector<std::vector<Integer>> rows;
        for (const auto& b : seeds.binomials) rows.push_back(b.difference());
        seed_rank = detail::fraction_free_reduce(rows).pivots.size();
    }
    if (seed_rank != kernel_rank) return toric_markov_basis(a, budget);
    if (seeds.empty()) {
        IdealBasis empty({}, MonomialOrder::grevlex(space.size()));
        empty.is_groebner = empty.is_saturated = empty.is_minimalized = true;
        return empty;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto sat = saturate(seeds, budget);
    auto rest = detail::with_deadline(budget, start);
    if (!rest) throw TruncatedError("TRUNCATED: time budget exhausted");
    return minimalize(sat, *rest);
}

} // namespace toric

#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <vector>

#include "binomial.hpp"
#include "errors.hpp"
#include "groebner.hpp"
#include "lattice.hpp"
#include "model.hpp"

namespace toric {

/// One binomial p^{v+} - p^{v-} per lattice basis vector.
inline IdealBasis lattice_to_binomials(const KernelLattice& lattice) {
    std::vector<Binomial> bs;
    bs.reserve(lattice.basis.size());
    for (const auto& v : lattice.basis) bs.push_back(binomial_from_vector(v));
    return IdealBasis(std::move(bs), MonomialOrder::grevlex(lattice.ambient));
}

namespace detail {

inline BinomialGroebner reducer_for(const IdealBasis& basis) {
    BinomialGroebner r(basis.order);
    for (const auto& b : basis.binomials) r.assume_groebner_element(b);
    return r;
}

inline std::optional<Budget> with_deadline(const Budget& budget, std::chrono::steady_clock::time_point start) {
    if (!budget.time) return budget;
    const auto used = std::chrono::steady_clock::now() - start;
    if (used >= *budget.time) return std::nullopt;
    Budget b = budget;
    b.time = *budget.time - used;
    return b;
}

} // namespace detail

/// Remainder of `b` modulo a Groebner basis; nullopt means b is in the ideal.
inline std::optional<Binomial> normal_form(const Binomial& b, const IdealBasis& basis) {
    if (!basis.is_groebner) throw ContractError("normal_form needs a Groebner basis");
    if (b.size() != basis.num_variables()) throw DomainError("binomial length does not match the basis ring");
    return detail::reducer_for(basis).normal_form(b);
}

/// Membership of every binomial of `gens` in the ideal of Groebner basis `gb`.
inline bool contains_all(const IdealBasis& gb, const IdealBasis& gens) {
    if (!gb.is_groebner) throw ContractError("contains_all needs a Groebner basis");
    const auto r = detail::reducer_for(gb);
    for (const auto& b : gens.binomials)
        if (!r.reduces_to_zero(b)) return false;
    return true;
}

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
inline IdealBasis buchberger(const IdealBasis& gens, const MonomialOrder& order, const Budget& budget = {}) {
    detail::BinomialGroebner engine(order, budget);
    for (const auto& b : gens.binomials) engine.add(b);
    engine.complete();
    IdealBasis out(engine.reduced_basis(), order);
    out.is_groebner = true;
    out.is_saturated = gens.is_saturated;
    return out;
}

inline IdealBasis buchberger(const IdealBasis& gens, const Budget& budget = {}) {
    return buchberger(gens, gens.order, budget);
}

/// (I : (p_1 ... p_m)^infinity) by saturating one variable at a time. Round i
/// runs Buchberger under grevlex with variable i cheapest and divides out
/// common powers of variable i. The ideal is already saturated with respect
/// to the variables of earlier rounds, so their common powers are divided out
/// as soon as they appear. The result is the reduced Groebner basis under
/// the default grevlex order.
inline IdealBasis saturate(const IdealBasis& gens, const Budget& budget = {}) {
    const std::size_t m = gens.num_variables();
    const auto start = std::chrono::steady_clock::now();
    std::vector<Binomial> current = gens.binomials;
    std::vector<bool> strippable(m, false);
    MonomialOrder order = MonomialOrder::grevlex(m);
    for (std::size_t i = 0; i < m; ++i) {
        strippable[i] = true;
        const auto round_budget = detail::with_deadline(budget, start);
        if (!round_budget) throw TruncatedError("TRUNCATED: time budget exhausted");
        order = MonomialOrder::grevlex_cheapest(m, i);
        detail::BinomialGroebner engine(order, *round_budget, strippable);
        for (const auto& b : current) engine.add(b);
        engine.complete();
        current = engine.reduced_basis();
    }
    IdealBasis out(std::move(current), MonomialOrder::grevlex(m));
    out.is_groebner = true;
    out.is_saturated = true;
    return out;
}

/// Degree-by-degree pruning: an element is dropped iff it lies in the ideal
/// of all retained elements of smaller degree plus the retained elements of
/// its own degree seen before it.
inline IdealBasis minimalize(const IdealBasis& basis, const Budget& budget = {}) {
    if (!basis.is_groebner || !basis.is_saturated)
        throw ContractError("minimalize needs a saturated Groebner basis");
    bool homogeneous = true;
    for (const auto& b : basis.binomials) homogeneous = homogeneous && b.degree() == total_degree(b.minus);

    detail::BinomialGroebner engine(basis.order, budget);
    std::vector<Binomial> kept;
    for (const auto& b : basis.binomials) {
        // Homogeneous ideals only need the truncated basis up to deg(b).
        const std::optional<int> cap = homogeneous ? std::optional<int>(b.degree()) : std::nullopt;
        engine.complete(cap);
        if (engine.reduces_to_zero(b)) continue;
        kept.push_back(b);
        engine.add(b);
    }
    IdealBasis out(std::move(kept), basis.order);
    out.is_saturated = true;
    out.is_minimalized = true;
    return out;
}

/// Minimal generating set (Markov basis) of the toric ideal I_A:
/// kernel -> lattice binomials -> Groebner basis -> saturation -> minimal set.
inline IdealBasis toric_markov_basis(const ModelMatrix& a, const Budget& budget = {}) {
    const auto start = std::chrono::steady_clock::now();
    const auto lattice = integer_kernel(a);
    const auto gens = lattice_to_binomials(lattice);
    auto b1 = detail::with_deadline(budget, start);
    if (!b1) throw TruncatedError("TRUNCATED: time budget exhausted");
    const auto gb = buchberger(gens, *b1);
    auto b2 = detail::with_deadline(budget, start);
    if (!b2) throw TruncatedError("TRUNCATED: time budget exhausted");
    const auto sat = saturate(gb, *b2);
    auto b3 = detail::with_deadline(budget, start);
    if (!b3) throw TruncatedError("TRUNCATED: time budget exhausted");
    return minimalize(sat, *b3);
}

} // namespace toric

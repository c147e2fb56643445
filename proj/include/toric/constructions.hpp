#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "errors.hpp"
#include "model.hpp"

namespace toric {

/// Graph on 2n binary variables whose only non-edges are {X_i, X_{i+n}}.
struct PairsModel {
    std::size_t n = 0;
    StateSpace space;
    UndirectedGraph graph;
    ModelMatrix a;
};

inline void check_pairs_size(std::size_t n, std::size_t max_states) {
    if (n < 1) throw DomainError("pairs model needs n >= 1");
    if (2 * n >= 40 || (std::size_t{1} << (2 * n)) > max_states)
        throw ResourceError("pairs model with n = " + std::to_string(n) + " exceeds the state bound " +
                            std::to_string(max_states));
}

inline PairsModel pairs_model(std::size_t n, std::size_t max_states = std::size_t{1} << 12) {
    check_pairs_size(n, max_states);
    PairsModel pm;
    pm.n = n;
    pm.space = StateSpace::uniform(2 * n, 2);
    UndirectedGraph g(2 * n);
    for (std::size_t a = 0; a < 2 * n; ++a)
        for (std::size_t b = a + 1; b < 2 * n; ++b)
            if (b != a + n) g.add_edge(a, b);
    pm.graph = g;
    pm.a = graph_matrix(pm.space, pm.graph);
    return pm;
}

/// Degree-2^n binomial: plus collects the states with i1 = i3 = ... = i_{2n-1}
/// and i1 of the same parity as i2 + i4 + ... + i_{2n}; minus the states with
/// equal odd positions and the opposite parity.
inline Binomial prop10_binomial(std::size_t n, std::size_t max_states = std::size_t{1} << 12) {
    check_pairs_size(n, max_states);
    const auto space = StateSpace::uniform(2 * n, 2);
    Binomial b{ExponentVector(space.size(), 0), ExponentVector(space.size(), 0)};
    for (std::size_t j = 0; j < space.size(); ++j) {
        const auto s = space.state_of_index(j);
        bool odd_equal = true;
        for (std::size_t k = 2; k < 2 * n; k += 2) odd_equal = odd_equal && s[k] == s[0];
        if (!odd_equal) continue;
        int even_sum = 0;
        for (std::size_t k = 1; k < 2 * n; k += 2) even_sum += s[k];
        if ((even_sum - s[0]) % 2 == 0) b.plus[j] = 1;
        else b.minus[j] = 1;
    }
    return b;
}

} // namespace toric

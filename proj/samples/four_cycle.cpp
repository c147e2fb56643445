// Markov basis of the binary four-cycle, then a check of two distributions.

#include <iostream>

#include <toric/toric.hpp>

int main() {
    using namespace toric;
    const auto space = StateSpace::uniform(4, 2);
    const auto graph = UndirectedGraph::cycle(4);
    const auto a = graph_matrix(space, graph);

    const auto basis = toric_markov_basis(a);
    for (const auto& b : basis.binomials) std::cout << render(b, space) << '\n';
    std::cout << format_histogram(degree_histogram(basis)) << '\n';

    // A product of clique potentials factors; moving mass off one cell breaks it.
    std::vector<Rational> t(a.rows(), Rational(1));
    t[0] = 3;
    t[5] = Rational(1, 2);
    const auto p = normalize(space, phi(a, ParameterVector{t}));
    std::cout << verdict_name(classify(p, a, basis).status) << '\n';

    std::vector<Rational> q(16, Rational(1, 17));
    q[0] = Rational(2, 17);
    const auto v = classify(Distribution(space, q), a, basis);
    std::cout << verdict_name(v.status) << ": " << render(*v.failing_binomial, space) << '\n';
}

// Random walk over 2x2x2 tables with the chain model's margins (X1X2, X2X3) fixed.

#include <iostream>
#include <map>

#include <toric/toric.hpp>

int main() {
    using namespace toric;
    const auto space = StateSpace::uniform(3, 2);
    const auto a = graph_matrix(space, UndirectedGraph::chain(3));
    const auto basis = toric_markov_basis(a);

    const Table start = Table::filled(space, 1);
    std::map<std::vector<Integer>, std::size_t> visits;
    random_walk(start, basis, WalkConfig{20000, 5}, [&](const Table& t) { ++visits[t.counts()]; });

    const auto fiber = enumerate_fiber(start, a, 1000);
    std::cout << "fiber size " << fiber.size() << ", visited " << visits.size() << '\n';
    for (const auto& t : fiber) {
        for (std::size_t j = 0; j < t.size(); ++j) std::cout << t[j];
        std::cout << "  " << visits[t.counts()] << '\n';
    }
}

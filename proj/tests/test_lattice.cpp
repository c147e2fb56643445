#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace toric;

namespace {

ModelMatrix no_three_way() {
    return loglinear_matrix(StateSpace::uniform(3, 2), GeneratorSet(3, {{0, 1}, {1, 2}, {0, 2}}));
}

void expect_valid_basis(const ModelMatrix& a, const KernelLattice& k) {
    EXPECT_EQ(k.ambient, a.cols());
    EXPECT_EQ(k.rank() + oracle::rational_rank(a), a.cols());
    for (const auto& v : k.basis) {
        ASSERT_EQ(v.size(), a.cols());
        EXPECT_TRUE(oracle::in_kernel(a, v));
        Integer g = 0;
        for (const auto& x : v) g = toric::gcd(g, x);
        EXPECT_EQ(g, 1);
        for (const auto& x : v)
            if (x != 0) {
                EXPECT_GT(x, 0);
                break;
            }
        std::vector<std::int64_t> up(v.size()), down(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            up[j] = v[j] > 0 ? v[j].convert_to<std::int64_t>() : 0;
            down[j] = v[j] < 0 ? (-v[j]).convert_to<std::int64_t>() : 0;
        }
        EXPECT_EQ(a.apply<std::int64_t>(up), a.apply<std::int64_t>(down));
    }
}

void expect_spans_ternary_kernel(const ModelMatrix& a, const KernelLattice& k) {
    for (const auto& v : oracle::ternary_kernel_vectors(a)) ASSERT_TRUE(oracle::in_integer_span(k.basis, v));
}

} // namespace

TEST(IntegerKernel, SingleRow) {
    const auto a = ModelMatrix::from_rows({{1, 1}});
    const auto k = integer_kernel(a);
    ASSERT_EQ(k.rank(), 1u);
    EXPECT_EQ(k.basis[0], (IntegerVector{1, -1}));
}

TEST(IntegerKernel, NoThreeWayRankOne) {
    const auto a = no_three_way();
    const auto k = integer_kernel(a);
    ASSERT_EQ(k.rank(), 1u);
    EXPECT_EQ(k.basis[0], (IntegerVector{1, -1, -1, 1, -1, 1, 1, -1}));
    const auto brute = oracle::ternary_kernel_vectors(a);
    ASSERT_EQ(brute.size(), 2u);
    for (const auto& v : brute) EXPECT_TRUE((v == k.basis[0] || v == IntegerVector{-1, 1, 1, -1, 1, -1, -1, 1}));
    expect_valid_basis(a, k);
}

TEST(IntegerKernel, BinaryFourCycle) {
    const auto f = oracle::four_cycle();
    const auto k = integer_kernel(f.a);
    EXPECT_EQ(oracle::rational_rank(f.a), 9u);
    EXPECT_EQ(k.rank(), 7u);
    expect_valid_basis(f.a, k);
    for (const auto& texts : {oracle::four_cycle_quadrics(), oracle::four_cycle_quartics()})
        for (const auto& b : oracle::parse_all(texts, f.space)) EXPECT_TRUE(oracle::in_integer_span(k.basis, b.difference()));
}

TEST(IntegerKernel, ChainSpansBruteForce) {
    const auto f = oracle::chain3();
    const auto k = integer_kernel(f.a);
    EXPECT_EQ(k.rank(), 2u);
    expect_valid_basis(f.a, k);
    expect_spans_ternary_kernel(f.a, k);
}

TEST(IntegerKernel, TrivialKernel) {
    std::vector<std::vector<std::int64_t>> id(5, std::vector<std::int64_t>(5, 0));
    for (int i = 0; i < 5; ++i) id[i][i] = 1;
    EXPECT_TRUE(integer_kernel(ModelMatrix::from_rows(id)).basis.empty());
}

TEST(IntegerKernel, RandomMatricesGiveLatticeBases) {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> entry(0, 3);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + trial % 4;
        const std::size_t cols = 5 + trial % 3;
        std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols));
        for (auto& r : m)
            for (auto& x : r) x = entry(rng);
        for (std::size_t j = 0; j < cols; ++j) m[0][j] = std::max<std::int64_t>(m[0][j], 1);
        const auto a = ModelMatrix::from_rows(m);
        const auto k = integer_kernel(a);
        expect_valid_basis(a, k);
        expect_spans_ternary_kernel(a, k);
    }
}

TEST(IntegerKernel, NeedsUnimodularCompletion) {
    // Non-unit pivots: scaled echelon vectors alone span a proper sublattice.
    const auto a = ModelMatrix::from_rows({{2, 2, 1, 3}, {0, 2, 1, 1}});
    const auto k = integer_kernel(a);
    expect_valid_basis(a, k);
    expect_spans_ternary_kernel(a, k);
    std::vector<Integer> v{1, 0, 1, -1};
    ASSERT_TRUE(oracle::in_kernel(a, v));
    EXPECT_TRUE(oracle::in_integer_span(k.basis, v));
}

TEST(Rank, Examples) {
    std::vector<std::vector<std::int64_t>> id(4, std::vector<std::int64_t>(4, 0));
    for (int i = 0; i < 4; ++i) id[i][i] = 1;
    EXPECT_EQ(rank(ModelMatrix::from_rows(id)), 4u);
    EXPECT_EQ(rank(no_three_way()), 7u);
    EXPECT_EQ(oracle::rational_rank(no_three_way()), 7u);

    std::vector<std::vector<std::int64_t>> rows;
    const auto a = no_three_way();
    for (std::size_t i = 0; i < a.rows(); ++i) rows.emplace_back(a.row(i).begin(), a.row(i).end());
    rows.emplace_back(a.cols(), 0);
    EXPECT_EQ(rank(ModelMatrix::from_rows(rows)), 7u);
}

TEST(Rank, AgreesWithRationalElimination) {
    for (const auto& cards : std::vector<std::vector<int>>{{2, 2, 2, 2}, {2, 2, 3, 3}, {3, 3, 3}}) {
        const auto s = StateSpace::with_cardinalities(cards);
        for (const auto& g : {UndirectedGraph::cycle(cards.size()), UndirectedGraph::chain(cards.size())}) {
            const auto a = graph_matrix(s, g);
            EXPECT_EQ(rank(a), oracle::rational_rank(a));
            expect_valid_basis(a, integer_kernel(a));
        }
    }
}

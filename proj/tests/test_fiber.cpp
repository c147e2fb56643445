#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>

#include "oracles.hpp"

using namespace toric;

namespace {

// Every table over m cells whose counts sum to `total`.
std::vector<std::vector<Integer>> tables_with_total(std::size_t m, int total) {
    std::vector<std::vector<Integer>> out;
    std::vector<Integer> cur(m, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
        if (j + 1 == m) {
            cur[j] = left;
            out.push_back(cur);
            return;
        }
        for (int c = left; c >= 0; --c) {
            cur[j] = c;
            rec(j + 1, left - c);
        }
    };
    rec(0, total);
    return out;
}

// Brute-force fibers: tables of total <= max_total grouped by A n.
std::map<std::vector<Integer>, std::vector<Table>> fibers_up_to(const oracle::Fixture& f, int max_total) {
    std::map<std::vector<Integer>, std::vector<Table>> out;
    for (int t = 0; t <= max_total; ++t)
        for (auto& c : tables_with_total(f.a.cols(), t)) {
            Table n(f.space, c);
            out[statistics(f.a, n)].push_back(n);
        }
    for (auto& [k, v] : out) std::sort(v.begin(), v.end());
    return out;
}

oracle::Fixture independence2x2() {
    oracle::Fixture f;
    f.space = StateSpace::uniform(2, 2);
    f.graph = UndirectedGraph(2);
    f.a = graph_matrix(f.space, f.graph);
    return f;
}

oracle::Fixture no_three_way() {
    oracle::Fixture f;
    f.space = StateSpace::uniform(3, 2);
    f.a = loglinear_matrix(f.space, GeneratorSet(3, {{0, 1}, {1, 2}, {0, 2}}));
    return f;
}

} // namespace

TEST(ApplyMove, RejectsNegativeCounts) {
    const auto f = oracle::four_cycle();
    const auto q = parse_binomial(oracle::four_cycle_quadrics()[0], f.space);
    const Table zero = Table::filled(f.space, 0);
    EXPECT_FALSE(apply_move(zero, q, 1).has_value());
    EXPECT_FALSE(apply_move(zero, q, -1).has_value());
    EXPECT_THROW(apply_move(zero, q, 2), DomainError);
}

TEST(ApplyMove, QuadricOnUniformTable) {
    const auto f = oracle::four_cycle();
    const auto q = parse_binomial("p1011 p1110 - p1010 p1111", f.space);
    const Table ones = Table::filled(f.space, 1);
    const auto next = apply_move(ones, q, 1);
    ASSERT_TRUE(next.has_value());
    for (std::size_t j = 0; j < 16; ++j) {
        const int want = (j == 0b1011 || j == 0b1110) ? 2 : (j == 0b1010 || j == 0b1111) ? 0 : 1;
        EXPECT_EQ((*next)[j], want) << j;
    }
    EXPECT_EQ(statistics(f.a, *next), statistics(f.a, ones));
}

TEST(RandomWalk, StuckTableReturned) {
    const auto f = oracle::four_cycle();
    std::vector<Integer> c(16, 0);
    c[5] = 1;
    const Table n0(f.space, c);
    const auto mb = toric_markov_basis(f.a);
    EXPECT_EQ(random_walk(n0, mb, WalkConfig{500, 1}), n0);
    EXPECT_THROW(random_walk(n0, mb, WalkConfig{0, 1}), DomainError);
}

TEST(RandomWalk, Deterministic) {
    const auto f = oracle::four_cycle();
    const auto mb = toric_markov_basis(f.a);
    const Table n0 = Table::filled(f.space, 2);
    const auto a = random_walk(n0, mb, WalkConfig{1000, 42});
    const auto b = random_walk(n0, mb, WalkConfig{1000, 42});
    EXPECT_EQ(a, b);
    EXPECT_NE(a, n0);
}

TEST(RandomWalk, PreservesChainMargins) {
    const auto f = oracle::chain3();
    const auto mb = toric_markov_basis(f.a);
    const Table n0 = Table::filled(f.space, 1);
    const auto want = statistics(f.a, n0);
    const auto end = random_walk(n0, mb, WalkConfig{10000, 7}, [&](const Table& t) { ASSERT_EQ(statistics(f.a, t), want); });
    EXPECT_EQ(statistics(f.a, end), want);
}

TEST(RandomWalk, TwoTableFiberFrequencies) {
    const auto f = independence2x2();
    const auto mb = toric_markov_basis(f.a);
    ASSERT_EQ(mb.size(), 1u);
    const Table n0(f.space, {1, 0, 0, 1});
    const std::uint64_t steps = 100000;
    std::uint64_t at_start = 0;
    random_walk(n0, mb, WalkConfig{steps, 2024}, [&](const Table& t) { at_start += (t == n0); });
    const double sigma = std::sqrt(steps * 0.25);
    EXPECT_LT(std::abs(static_cast<double>(at_start) - steps / 2.0), 5 * sigma);
}

TEST(EnumerateFiber, SingleCell) {
    const auto f = oracle::four_cycle();
    std::vector<Integer> c(16, 0);
    c[9] = 1;
    const Table n0(f.space, c);
    const auto fib = enumerate_fiber(n0, f.a, 100);
    ASSERT_EQ(fib.size(), 1u);
    EXPECT_EQ(fib[0], n0);
}

TEST(EnumerateFiber, TwoByTwoUnitMargins) {
    const auto f = independence2x2();
    const auto fib = enumerate_fiber(Table(f.space, {1, 0, 0, 1}), f.a, 100);
    ASSERT_EQ(fib.size(), 2u);
    EXPECT_EQ(fib[0], Table(f.space, {0, 1, 1, 0}));
    EXPECT_EQ(fib[1], Table(f.space, {1, 0, 0, 1}));
}

TEST(EnumerateFiber, ChainTotalTwoMatchesBruteForce) {
    const auto f = oracle::chain3();
    const auto groups = fibers_up_to(f, 2);
    for (auto& c : tables_with_total(8, 2)) {
        const Table n(f.space, c);
        EXPECT_EQ(enumerate_fiber(n, f.a, 1000), groups.at(statistics(f.a, n)));
    }
}

TEST(EnumerateFiber, CapExceeded) {
    const auto f = independence2x2();
    EXPECT_THROW(enumerate_fiber(Table(f.space, {5, 5, 5, 5}), f.a, 3), ResourceError);
}

TEST(Connectivity, SmallCases) {
    const auto f = independence2x2();
    const auto mb = toric_markov_basis(f.a);
    EXPECT_TRUE(connectivity_check(Table(f.space, {1, 0, 0, 0}), mb, f.a, 10));
    EXPECT_TRUE(connectivity_check(Table(f.space, {1, 0, 0, 1}), mb, f.a, 10));
    EXPECT_FALSE(connectivity_check(Table(f.space, {1, 0, 0, 1}), IdealBasis({}, MonomialOrder::grevlex(4)), f.a, 10));
}

TEST(Connectivity, FullBasesConnectSmallFibers) {
    for (const auto& f : {oracle::chain3(), no_three_way()}) {
        const auto mb = toric_markov_basis(f.a);
        for (const auto& [stat, fib] : fibers_up_to(f, 6)) {
            ASSERT_EQ(enumerate_fiber(fib.front(), f.a, 100000), fib);
            ASSERT_TRUE(connectivity_check(fib.front(), mb, f.a, 100000));
        }
    }
}

TEST(Connectivity, FourCycleNeedsQuartics) {
    const auto f = oracle::four_cycle();
    const auto mb = toric_markov_basis(f.a);
    const IdealBasis quad(oracle::parse_all(oracle::four_cycle_quadrics(), f.space), MonomialOrder::grevlex(16));
    std::size_t disconnected = 0;
    for (const auto& [stat, fib] : fibers_up_to(f, 4)) {
        ASSERT_TRUE(connectivity_check(fib.front(), mb, f.a, 100000));
        if (!connectivity_check(fib.front(), quad, f.a, 100000)) ++disconnected;
    }
    EXPECT_GT(disconnected, 0u);
}

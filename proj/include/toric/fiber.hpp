#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "numeric.hpp"

namespace toric {

/// Contingency table over a state space.
class Table {
public:
    Table() = default;
    Table(StateSpace space, std::vector<Integer> counts) : space_(std::move(space)), n_(std::move(counts)) {
        if (n_.size() != space_.size())
            throw DomainError("table has " + std::to_string(n_.size()) + " cells, expected " +
                              std::to_string(space_.size()));
        for (const auto& c : n_)
            if (c < 0) throw DomainError("table counts must be non-negative");
    }

    static Table filled(const StateSpace& space, long value) {
        return Table(space, std::vector<Integer>(space.size(), Integer(value)));
    }

    const StateSpace& space() const { return space_; }
    const std::vector<Integer>& counts() const { return n_; }
    const Integer& operator[](std::size_t i) const { return n_[i]; }
    std::size_t size() const { return n_.size(); }

    Integer total() const {
        Integer t = 0;
        for (const auto& c : n_) t += c;
        return t;
    }

    friend bool operator==(const Table& a, const Table& b) { return a.n_ == b.n_; }
    friend bool operator<(const Table& a, const Table& b) { return a.n_ < b.n_; }

private:
    StateSpace space_;
    std::vector<Integer> n_;
};

/// Sufficient statistics A * n.
inline std::vector<Integer> statistics(const ModelMatrix& a, const Table& n) {
    return a.apply<Integer>(n.counts());
}

struct WalkConfig {
    std::uint64_t steps = 1;
    std::uint64_t seed = 0;
};

/// n + dir * (plus - minus), or nullopt if some count would go negative.
inline std::optional<Table> apply_move(const Table& n, const Binomial& b, int dir) {
    if (dir != 1 && dir != -1) throw DomainError("move direction must be +1 or -1");
    if (b.size() != n.size()) throw DomainError("move length does not match the table");
    std::vector<Integer> out = n.counts();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += dir * (b.plus[i] - b.minus[i]);
        if (out[i] < 0) return std::nullopt;
    }
    return Table(n.space(), std::move(out));
}

/// Lazy uniform-proposal walk. Each step draws r from mt19937_64(seed) and
/// proposes basis element r / 2 in direction (r even ? +1 : -1), where
/// r is taken modulo 2 * |basis|; rejected proposals leave the table as is.
/// `visit` sees the table after every step.
template <class Visit>
Table random_walk(const Table& n0, const IdealBasis& basis, const WalkConfig& cfg, Visit&& visit) {
    if (cfg.steps < 1) throw DomainError("walk needs at least one step");
    std::mt19937_64 rng(cfg.seed);
    const std::uint64_t choices = 2 * static_cast<std::uint64_t>(basis.size());
    Table cur = n0;
    for (std::uint64_t s = 0; s < cfg.steps; ++s) {
        if (choices > 0) {
            const std::uint64_t r = rng() % choices;
            const auto& b = basis.binomials[r / 2];
            if (auto next = apply_move(cur, b, (r % 2 == 0) ? 1 : -1)) cur = std::move(*next);
        }
        visit(static_cast<const Table&>(cur));
    }
    return cur;
}

inline Table random_walk(const Table& n0, const IdealBasis& basis, const WalkConfig& cfg) {
    return random_walk(n0, basis, cfg, [](const Table&) {});
}

namespace detail {

inline std::vector<std::int64_t> small_counts(const Table& n) {
    std::vector<std::int64_t> v;
    v.reserve(n.size());
    for (const auto& c : n.counts()) {
        if (c > Integer(std::int64_t{1} << 40)) throw ResourceError("table counts too large for fiber enumeration");
        v.push_back(c.convert_to<std::int64_t>());
    }
    return v;
}

struct FiberSearch {
    const ModelMatrix& a;
    std::size_t cap;
    std::vector<std::size_t> last_cover;  // last column with a nonzero in each row
    std::vector<std::int64_t> cur;
    std::vector<std::vector<std::int64_t>> found;

    void run(std::size_t j, std::vector<std::int64_t>& rem) {
        const std::size_t m = a.cols();
        if (j == m) {
            for (auto r : rem)
                if (r != 0) return;
            if (found.size() >= cap)
                throw ResourceError("fiber has more than " + std::to_string(cap) + " tables");
            found.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (rem[i] > 0 && last_cover[i] < j) return;
        std::int64_t hi = -1;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const auto e = a.at(i, j);
            if (e == 0) continue;
            const auto lim = rem[i] / e;
            hi = hi < 0 ? lim : std::min(hi, lim);
        }
        for (std::int64_t c = hi; c >= 0; --c) {
            for (std::size_t i = 0; i < a.rows(); ++i) rem[i] -= c * a.at(i, j);
            cur[j] = c;
            run(j + 1, rem);
            for (std::size_t i = 0; i < a.rows(); ++i) rem[i] += c * a.at(i, j);
        }
        cur[j] = 0;
    }
};

} // namespace detail

/// All non-negative tables with the statistics of n0, sorted.
inline std::vector<Table> enumerate_fiber(const Table& n0, const ModelMatrix& a, std::size_t cap) {
    if (n0.size() != a.cols()) throw DomainError("table length does not match the model matrix");
    const auto counts = detail::small_counts(n0);
    auto rem = a.apply<std::int64_t>(counts);
    detail::FiberSearch search{a, cap, std::vector<std::size_t>(a.rows(), 0), std::vector<std::int64_t>(a.cols(), 0), {}};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        bool any = false;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0) {
                search.last_cover[i] = j;
                any = true;
            }
        if (!any && rem[i] != 0) return {};
    }
    search.run(0, rem);
    std::vector<Table> out;
    out.reserve(search.found.size());
    for (const auto& f : search.found) {
        std::vector<Integer> c(f.begin(), f.end());
        out.emplace_back(n0.space(), std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Whether the moves of `basis` connect the whole fiber of n0.
inline bool connectivity_check(const Table& n0, const IdealBasis& basis, const ModelMatrix& a, std::size_t cap) {
    const auto fiber = enumerate_fiber(n0, a, cap);
    if (fiber.size() <= 1) return true;
    std::map<Table, std::size_t> index;
    for (std::size_t k = 0; k < fiber.size(); ++k) index.emplace(fiber[k], k);
    std::vector<bool> seen(fiber.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const auto k = stack.back();
        stack.pop_back();
        for (const auto& b : basis.binomials)
            for (int dir : {1, -1}) {
                auto next = apply_move(fiber[k], b, dir);
                if (!next) continue;
                auto it = index.find(*next);
                if (it == index.end()) throw ContractError("move left the fiber: basis is not in the kernel of A");
                if (!seen[it->second]) {
                    seen[it->second] = true;
                    ++reached;
                    stack.push_back(it->second);
                }
            }
    }
    return reached == fiber.size();
}

} // namespace toric

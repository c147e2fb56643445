#pragma once

// Buchberger's algorithm specialised to pure difference binomials.
//
// Every polynomial handled here is x^a - x^b. Division of a binomial by a
// binomial set stays binomial, so the normal form of x^a - x^b is
// NF(x^a) - NF(x^b), where the normal form of a monomial is again a single
// monomial. Coefficients are therefore always +1/-1 and no field arithmetic
// is needed.

#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "binomial.hpp"
#include "errors.hpp"

namespace toric {

/// Limits for the Groebner pipeline. Hitting either throws TruncatedError.
struct Budget {
    std::optional<std::chrono::steady_clock::duration> time;
    std::optional<int> max_degree;

    static Budget unlimited() { return {}; }
};

class TruncatedError : public ResourceError {
public:
    using ResourceError::ResourceError;
};

namespace detail {

inline std::uint64_t support_mask(std::span<const Exponent> e) {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k] != 0) m |= std::uint64_t{1} << (k & 63U);
    return m;
}

/// Monomial in engine coordinates (coordinate k is the k-th variable of the
/// monomial order, so the order is plain grevlex there).
struct Mono {
    ExponentVector e;
    std::uint64_t mask = 0;
    int deg = 0;

    Mono() = default;
    explicit Mono(ExponentVector v) : e(std::move(v)) { refresh(); }
    void refresh() {
        mask = support_mask(e);
        deg = total_degree(e);
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
};

inline bool divides(const Mono& a, const Mono& b) {
    if ((a.mask & ~b.mask) != 0 || a.deg > b.deg) return false;
    for (std::size_t k = 0; k < a.e.size(); ++k)
        if (a.e[k] > b.e[k]) return false;
    return true;
}

inline bool coprime(const Mono& a, const Mono& b) {
    if ((a.mask & b.mask) == 0) return true;
    for (std::size_t k = 0; k < a.e.size(); ++k)
        if (a.e[k] != 0 && b.e[k] != 0) return false;
    return true;
}

/// Standard grevlex, last coordinate cheapest.
inline bool greater(const Mono& a, const Mono& b) {
    if (a.deg != b.deg) return a.deg > b.deg;
    for (std::size_t k = a.e.size(); k-- > 0;)
        if (a.e[k] != b.e[k]) return a.e[k] < b.e[k];
    return false;
}

inline int lcm_degree(const Mono& a, const Mono& b) {
    int d = 0;
    for (std::size_t k = 0; k < a.e.size(); ++k) d += std::max(a.e[k], b.e[k]);
    return d;
}

struct Element {
    Mono lead;
    Mono trail;
    bool active = true;
};

struct Pair {
    std::uint32_t i;
    std::uint32_t j;
};

/// Incremental binomial Buchberger with the Gebauer-Moeller criteria and
/// the normal selection strategy (lowest lcm degree first, FIFO on ties).
class BinomialGroebner {
public:
    BinomialGroebner(MonomialOrder order, Budget budget = {}, std::vector<bool> strippable = {})
        : order_(std::move(order)), budget_(budget), strippable_(std::move(strippable)) {
        if (budget_.time) deadline_ = std::chrono::steady_clock::now() + *budget_.time;
        if (!strippable_.empty() && strippable_.size() != order_.size())
            throw DomainError("strippable mask has the wrong length");
    }

    std::size_t num_variables() const { return order_.size(); }
    const MonomialOrder& order() const { return order_; }

    /// Reduces `b` against the current basis and inserts it if nonzero.
    void add(const Binomial& b) {
        if (b.plus.size() != order_.size() || b.minus.size() != order_.size())
            throw DomainError("binomial length does not match the ring");
        insert_reduced(to_engine(b.plus), to_engine(b.minus));
    }

    /// Inserts an element of a known Groebner basis without generating
    /// S-pairs; used to build reducers for normal-form queries.
    void assume_groebner_element(const Binomial& b) {
        Mono p = to_engine(b.plus);
        Mono q = to_engine(b.minus);
        if (p == q) return;
        if (greater(q, p)) std::swap(p, q);
        active_.push_back(static_cast<std::uint32_t>(elems_.size()));
        elems_.push_back(Element{std::move(p), std::move(q), true});
    }

    /// Processes every pending pair of lcm degree <= `cap` (all pairs without
    /// a cap). Pairs above the cap stay pending.
    void complete(std::optional<int> cap = std::nullopt) {
        std::size_t tick = 0;
        while (true) {
            auto it = pairs_.begin();
            if (it == pairs_.end()) break;
            if (cap && it->first > *cap) break;
            if (budget_.max_degree && it->first > *budget_.max_degree)
                throw TruncatedError("TRUNCATED: S-pair of degree " + std::to_string(it->first) +
                                     " exceeds the degree budget " + std::to_string(*budget_.max_degree));
            const Pair p = it->second.front();
            it->second.pop_front();
            if (it->second.empty()) pairs_.erase(it);
            if (deadline_ && (++tick & 63U) == 0 && std::chrono::steady_clock::now() > *deadline_)
                throw TruncatedError("TRUNCATED: time budget exhausted");
            process(p);
        }
    }

    bool has_pending(std::optional<int> cap = std::nullopt) const {
        if (pairs_.empty()) return false;
        return !cap || pairs_.begin()->first <= *cap;
    }

    /// True iff b lies in the ideal, assuming complete() has run up to deg(b).
    bool reduces_to_zero(const Binomial& b) const {
        Mono p = to_engine(b.plus);
        Mono q = to_engine(b.minus);
        reduce(p);
        reduce(q);
        return p == q;
    }

    /// Remainder of b, oriented; nullopt for zero.
    std::optional<Binomial> normal_form(const Binomial& b) const {
        Mono p = to_engine(b.plus);
        Mono q = to_engine(b.minus);
        reduce(p);
        reduce(q);
        if (p == q) return std::nullopt;
        if (greater(q, p)) std::swap(p, q);
        return Binomial{from_engine(p), from_engine(q)};
    }

    ExponentVector normal_form(const ExponentVector& monomial) const {
        Mono p = to_engine(monomial);
        reduce(p);
        return from_engine(p);
    }

    /// Reduced Groebner basis of everything added so far (valid once
    /// complete() has drained all pairs).
    std::vector<Binomial> reduced_basis() {
        std::vector<Binomial> out;
        for (auto& el : elems_) {
            if (!el.active) continue;
            reduce(el.trail);
        }
        for (const auto& el : elems_)
            if (el.active) out.push_back({from_engine(el.lead), from_engine(el.trail)});
        return out;
    }

    std::size_t active_size() const { return active_.size(); }

private:
    Mono to_engine(std::span<const Exponent> e) const {
        ExponentVector v(e.size());
        const auto& pr = order_.priority();
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = e[pr[k]];
        return Mono(std::move(v));
    }

    ExponentVector from_engine(const Mono& m) const {
        ExponentVector v(m.e.size());
        const auto& pr = order_.priority();
        for (std::size_t k = 0; k < v.size(); ++k) v[pr[k]] = m.e[k];
        return v;
    }

    void reduce(Mono& t) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto idx : active_) {
                const auto& el = elems_[idx];
                if (!divides(el.lead, t)) continue;
                for (std::size_t k = 0; k < t.e.size(); ++k) t.e[k] += el.trail.e[k] - el.lead.e[k];
                t.refresh();
                changed = true;
                break;
            }
        }
    }

    void strip_common(Mono& a, Mono& b) const {
        if (strippable_.empty()) return;
        bool touched = false;
        for (std::size_t k = 0; k < a.e.size(); ++k) {
            if (!strippable_[order_.priority()[k]]) continue;
            const Exponent c = std::min(a.e[k], b.e[k]);
            if (c > 0) {
                a.e[k] -= c;
                b.e[k] -= c;
                touched = true;
            }
        }
        if (touched) {
            a.refresh();
            b.refresh();
        }
    }

    void insert_reduced(Mono p, Mono q) {
        // Stripping can expose a reducible term, so iterate to a fixed point.
        while (true) {
            reduce(p);
            reduce(q);
            if (p == q) return;
            const auto before = p.deg + q.deg;
            strip_common(p, q);
            if (p.deg + q.deg == before) break;
        }
        if (greater(q, p)) std::swap(p, q);
        update(Element{std::move(p), std::move(q), true});
    }

    void process(const Pair& pr) {
        const auto& a = elems_[pr.i];
        const auto& b = elems_[pr.j];
        ExponentVector lcm(a.lead.e.size());
        for (std::size_t k = 0; k < lcm.size(); ++k) lcm[k] = std::max(a.lead.e[k], b.lead.e[k]);
        ExponentVector s1(lcm.size());
        ExponentVector s2(lcm.size());
        for (std::size_t k = 0; k < lcm.size(); ++k) {
            s1[k] = lcm[k] - a.lead.e[k] + a.trail.e[k];
            s2[k] = lcm[k] - b.lead.e[k] + b.trail.e[k];
        }
        insert_reduced(Mono(std::move(s1)), Mono(std::move(s2)));
    }

    static bool lcm_divisible(const Mono& h, const Mono& a, const Mono& b) {
        if ((h.mask & ~(a.mask | b.mask)) != 0) return false;
        for (std::size_t k = 0; k < h.e.size(); ++k)
            if (h.e[k] > std::max(a.e[k], b.e[k])) return false;
        return true;
    }

    static bool lcm_equal(const Mono& x, const Mono& y, const Mono& u, const Mono& v) {
        for (std::size_t k = 0; k < x.e.size(); ++k)
            if (std::max(x.e[k], y.e[k]) != std::max(u.e[k], v.e[k])) return false;
        return true;
    }

    void update(Element h) {
        const auto hi = static_cast<std::uint32_t>(elems_.size());
        elems_.push_back(std::move(h));
        const Mono& lh = elems_[hi].lead;

        // Candidate pairs (h, g) with their lcm, in basis order.
        struct Cand {
            std::uint32_t g;
            Mono lcm;
            bool coprime;
        };
        std::vector<Cand> c;
        c.reserve(active_.size());
        for (auto g : active_) {
            const Mono& lg = elems_[g].lead;
            ExponentVector l(lh.e.size());
            for (std::size_t k = 0; k < l.size(); ++k) l[k] = std::max(lh.e[k], lg.e[k]);
            c.push_back({g, Mono(std::move(l)), coprime(lh, lg)});
        }

        // Chain criterion among the new pairs: drop (h, g1) when another
        // pair (h, g2) has an lcm properly dividing it; among equal lcms keep
        // one, preferring a coprime pair.
        std::vector<bool> keep(c.size(), true);
        for (std::size_t x = 0; x < c.size(); ++x) {
            for (std::size_t y = 0; y < c.size() && keep[x]; ++y) {
                if (x == y || !keep[y]) continue;
                if (!divides(c[y].lcm, c[x].lcm)) continue;
                if (!(c[y].lcm == c[x].lcm)) keep[x] = false;
                else if (c[y].coprime && !c[x].coprime) keep[x] = false;
                else if (c[y].coprime == c[x].coprime && y < x) keep[x] = false;
            }
        }

        // Prune old pairs whose lcm is divisible by LT(h) unless the lcm
        // coincides with one of the lcms involving h.
        for (auto it = pairs_.begin(); it != pairs_.end();) {
            auto& q = it->second;
            std::erase_if(q, [&](const Pair& p) {
                const Mono& a = elems_[p.i].lead;
                const Mono& b = elems_[p.j].lead;
                if (!lcm_divisible(lh, a, b)) return false;
                if (lcm_equal(a, lh, a, b)) return false;
                if (lcm_equal(b, lh, a, b)) return false;
                return true;
            });
            if (q.empty()) it = pairs_.erase(it);
            else ++it;
        }

        for (std::size_t x = 0; x < c.size(); ++x) {
            if (!keep[x] || c[x].coprime) continue;
            pairs_[c[x].lcm.deg].push_back({c[x].g, hi});
        }

        std::vector<std::uint32_t> next;
        next.reserve(active_.size() + 1);
        for (auto g : active_) {
            if (divides(lh, elems_[g].lead)) elems_[g].active = false;
            else next.push_back(g);
        }
        next.push_back(hi);
        active_ = std::move(next);
    }

    MonomialOrder order_;
    Budget budget_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::vector<bool> strippable_;
    std::vector<Element> elems_;
    std::vector<std::uint32_t> active_;
    std::map<int, std::deque<Pair>> pairs_;
};

} // namespace detail
} // namespace toric

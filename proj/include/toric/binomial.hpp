#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "model.hpp"

namespace toric {

using Exponent = std::int32_t;
using ExponentVector = std::vector<Exponent>;

inline int total_degree(std::span<const Exponent> e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

/// p^plus - p^minus with unit coefficients.
struct Binomial {
    ExponentVector plus;
    ExponentVector minus;

    std::size_t size() const { return plus.size(); }
    int degree() const { return total_degree(plus); }
    bool is_zero() const { return plus == minus; }

    bool disjoint_supports() const {
        for (std::size_t i = 0; i < plus.size(); ++i)
            if (plus[i] != 0 && minus[i] != 0) return false;
        return true;
    }

    Binomial negated() const { return {minus, plus}; }

    /// plus - minus as an integer vector.
    IntegerVector difference() const {
        IntegerVector v(plus.size());
        for (std::size_t i = 0; i < plus.size(); ++i) v[i] = Integer(plus[i]) - minus[i];
        return v;
    }

    friend bool operator==(const Binomial&, const Binomial&) = default;
    friend auto operator<=>(const Binomial&, const Binomial&) = default;
};

/// Binomial of a kernel vector: p^{v+} - p^{v-}.
inline Binomial binomial_from_vector(std::span<const Integer> v) {
    Binomial b{ExponentVector(v.size(), 0), ExponentVector(v.size(), 0)};
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (abs(v[i]) > Integer(1 << 20)) throw ResourceError("kernel vector entry too large for an exponent");
        const auto x = v[i].convert_to<Exponent>();
        if (x > 0) b.plus[i] = x;
        else b.minus[i] = -x;
    }
    return b;
}

/// Graded reverse lexicographic order. `priority[k]` is the variable in
/// position k; the variable in the last position is the cheapest one.
class MonomialOrder {
public:
    MonomialOrder() = default;

    static MonomialOrder grevlex(std::size_t m) {
        MonomialOrder o;
        o.priority_.resize(m);
        std::iota(o.priority_.begin(), o.priority_.end(), std::size_t{0});
        return o;
    }

    /// Natural order with `cheapest` moved to the last position.
    static MonomialOrder grevlex_cheapest(std::size_t m, std::size_t cheapest) {
        if (cheapest >= m) throw DomainError("variable index out of range");
        MonomialOrder o;
        for (std::size_t i = 0; i < m; ++i)
            if (i != cheapest) o.priority_.push_back(i);
        o.priority_.push_back(cheapest);
        return o;
    }

    static MonomialOrder grevlex(std::vector<std::size_t> priority) {
        std::vector<std::size_t> seen(priority.size(), 0);
        for (auto v : priority) {
            if (v >= priority.size() || seen[v]++) throw DomainError("monomial order permutation is not a bijection");
        }
        MonomialOrder o;
        o.priority_ = std::move(priority);
        return o;
    }

    std::size_t size() const { return priority_.size(); }
    const std::vector<std::size_t>& priority() const { return priority_; }

    std::strong_ordering compare(std::span<const Exponent> a, std::span<const Exponent> b) const {
        const int da = total_degree(a);
        const int db = total_degree(b);
        if (da != db) return da <=> db;
        for (std::size_t k = priority_.size(); k-- > 0;) {
            const auto v = priority_[k];
            if (a[v] != b[v]) return b[v] <=> a[v];
        }
        return std::strong_ordering::equal;
    }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    std::vector<std::size_t> priority_;
};

/// Leading term first.
inline Binomial oriented(Binomial b, const MonomialOrder& order) {
    if (order.compare(b.plus, b.minus) < 0) std::swap(b.plus, b.minus);
    return b;
}

/// Order-free display convention: the lexicographically larger exponent
/// vector is the plus term.
inline Binomial display_normalized(Binomial b) {
    if (b.plus < b.minus) std::swap(b.plus, b.minus);
    return b;
}

/// Sorted by (degree, plus, minus), duplicate-free, every element oriented
/// so that plus is its leading term.
struct IdealBasis {
    std::vector<Binomial> binomials;
    MonomialOrder order;
    bool is_groebner = false;
    bool is_saturated = false;
    bool is_minimalized = false;

    IdealBasis() = default;
    IdealBasis(std::vector<Binomial> bs, MonomialOrder ord) : binomials(std::move(bs)), order(std::move(ord)) {
        normalize();
    }

    std::size_t size() const { return binomials.size(); }
    bool empty() const { return binomials.empty(); }
    std::size_t num_variables() const { return order.size(); }

    void normalize() {
        std::vector<Binomial> kept;
        kept.reserve(binomials.size());
        for (auto& b : binomials) {
            if (b.plus.size() != order.size() || b.minus.size() != order.size())
                throw DomainError("binomial length does not match the monomial order");
            if (b.is_zero()) continue;
            kept.push_back(oriented(std::move(b), order));
        }
        std::sort(kept.begin(), kept.end(), [](const Binomial& x, const Binomial& y) {
            const int dx = x.degree();
            const int dy = y.degree();
            if (dx != dy) return dx < dy;
            return x < y;
        });
        kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
        binomials = std::move(kept);
    }
};

/// Counts by total degree of the plus term.
inline std::map<int, std::size_t> degree_histogram(const IdealBasis& basis) {
    std::map<int, std::size_t> h;
    for (const auto& b : basis.binomials) ++h[b.degree()];
    return h;
}

inline std::string format_histogram(const std::map<int, std::size_t>& h) {
    std::string s;
    for (auto [deg, count] : h) {
        if (!s.empty()) s += ' ';
        s += "deg" + std::to_string(deg) + "=" + std::to_string(count);
    }
    return s;
}

inline std::string render_monomial(std::span<const Exponent> e, const StateSpace& space) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (Exponent k = 0; k < e[i]; ++k) {
            if (!s.empty()) s += ' ';
            s += 'p' + space.label(i);
        }
    return s.empty() ? "1" : s;
}

/// `+ p0100 p0111 p1001 p1010 - p0101 p0110 p1000 p1011`
inline std::string render(const Binomial& b, const StateSpace& space) {
    if (b.size() != space.size()) throw DomainError("binomial length does not match the state space");
    return "+ " + render_monomial(b.plus, space) + " - " + render_monomial(b.minus, space);
}

/// Inverse of `render`; the leading `+` is optional, as in `pA pB - pC pD`.
inline Binomial parse_binomial(const std::string& text, const StateSpace& space) {
    Binomial b{ExponentVector(space.size(), 0), ExponentVector(space.size(), 0)};
    std::istringstream in(text);
    std::string tok;
    int side = 0;  // 0: plus, 1: minus
    bool saw_minus = false;
    bool first = true;
    while (in >> tok) {
        if (tok == "+" && first) {
            first = false;
            continue;
        }
        first = false;
        if (tok == "-") {
            if (saw_minus) throw DomainError("binomial has more than one '-': " + text);
            saw_minus = true;
            side = 1;
            continue;
        }
        if (tok == "1") continue;
        if (tok.size() < 2 || tok[0] != 'p') throw DomainError("malformed binomial factor '" + tok + "'");
        const auto idx = space.parse_label(tok.substr(1));
        ++(side == 0 ? b.plus : b.minus)[idx];
    }
    if (!saw_minus) throw DomainError("binomial lacks '-': " + text);
    return b;
}

/// A * plus == A * minus, exactly.
inline bool verify_kernel_membership(const Binomial& b, const ModelMatrix& a) {
    if (b.plus.size() != a.cols() || b.minus.size() != a.cols())
        throw DomainError("binomial length " + std::to_string(b.plus.size()) + " does not match " +
                          std::to_string(a.cols()) + " matrix columns");
    std::vector<std::int64_t> p(b.plus.begin(), b.plus.end());
    std::vector<std::int64_t> q(b.minus.begin(), b.minus.end());
    return a.apply<std::int64_t>(p) == a.apply<std::int64_t>(q);
}

} // namespace toric

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "numeric.hpp"

namespace toric {

using IntegerVector = std::vector<Integer>;

/// Z-basis of {v in Z^m : A v = 0}.
struct KernelLattice {
    std::vector<IntegerVector> basis;
    std::size_t ambient = 0;

    std::size_t rank() const { return basis.size(); }
};

namespace detail {

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix to_int_matrix(const ModelMatrix& a) {
    IntMatrix m(a.rows(), std::vector<Integer>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a.at(i, j);
    return m;
}

struct Echelon {
    IntMatrix rows;                   // first `pivots.size()` rows are the pivot rows
    std::vector<std::size_t> pivots;  // pivot column of each pivot row
};

/// Fraction-free Gauss-Jordan elimination. Pivot column is the leftmost
/// column with a nonzero entry among unprocessed rows; pivot row is the one
/// with the smallest absolute value there (first such row on ties). Every
/// division is exact.
inline Echelon fraction_free_reduce(IntMatrix m) {
    Echelon out;
    const std::size_t d = m.size();
    const std::size_t n = d ? m[0].size() : 0;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < d; ++c) {
        std::size_t best = d;
        for (std::size_t i = r; i < d; ++i) {
            if (m[i][c] == 0) continue;
            if (best == d || abs(m[i][c]) < abs(m[best][c])) best = i;
        }
        if (best == d) continue;
        std::swap(m[r], m[best]);
        const Integer piv = m[r][c];
        for (std::size_t i = 0; i < d; ++i) {
            if (i == r) continue;
            const Integer factor = m[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                Integer num = piv * m[i][j] - factor * m[r][j];
                if (num % prev != 0) throw ContractError("fraction-free elimination produced a non-exact division");
                m[i][j] = num / prev;
            }
        }
        prev = piv;
        out.pivots.push_back(c);
        ++r;
    }
    out.rows = std::move(m);
    return out;
}

inline void make_primitive(IntegerVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, abs(x));
    if (g > 1)
        for (auto& x : v) x /= g;
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
}

/// Kernel Z-basis from a unimodular reduction of [A^T | I]. Used when the
/// echelon-form vectors only span a finite-index sublattice.
inline std::vector<IntegerVector> unimodular_kernel(const ModelMatrix& a) {
    const std::size_t d = a.rows();
    const std::size_t m = a.cols();
    IntMatrix t(m, std::vector<Integer>(d + m));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < d; ++i) t[j][i] = a.at(i, j);
        t[j][d + j] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < d && r < m; ++c) {
        while (true) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (t[i][c] != 0 && (best == m || abs(t[i][c]) < abs(t[best][c]))) best = i;
            if (best == m) break;
            std::swap(t[r], t[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (t[i][c] == 0) continue;
                const Integer q = t[i][c] / t[r][c];
                for (std::size_t j = c; j < d + m; ++j) t[i][j] -= q * t[r][j];
                if (t[i][c] != 0) clean = false;
            }
            if (clean) {
                ++r;
                break;
            }
        }
    }
    std::vector<IntegerVector> basis;
    for (std::size_t i = r; i < m; ++i) {
        IntegerVector v(t[i].begin() + static_cast<std::ptrdiff_t>(d), t[i].end());
        make_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace detail

/// Exact rank over the rationals.
inline std::size_t rank(const ModelMatrix& a) {
    return detail::fraction_free_reduce(detail::to_int_matrix(a)).pivots.size();
}

inline std::vector<Integer> multiply(const ModelMatrix& a, std::span<const Integer> v) {
    if (v.size() != a.cols()) throw DomainError("vector length does not match matrix columns");
    std::vector<Integer> out(a.rows(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0 && v[j] != 0) out[i] += a.at(i, j) * v[j];
    return out;
}

/// Primitive kernel basis, first nonzero entry positive. One vector per free
/// column of the echelon form; if those vectors generate a proper sublattice
/// of the integer kernel, a unimodular reduction supplies a Z-basis instead.
inline KernelLattice integer_kernel(const ModelMatrix& a) {
    const std::size_t m = a.cols();
    const auto ech = detail::fraction_free_reduce(detail::to_int_matrix(a));
    const std::size_t r = ech.pivots.size();

    Integer scale = 1;
    for (std::size_t k = 0; k < r; ++k) {
        const Integer p = abs(ech.rows[k][ech.pivots[k]]);
        scale = scale / gcd(scale, p) * p;
    }

    std::vector<bool> is_pivot(m, false);
    for (auto c : ech.pivots) is_pivot[c] = true;

    KernelLattice lat;
    lat.ambient = m;
    bool unit_free_coordinates = true;
    for (std::size_t f = 0; f < m; ++f) {
        if (is_pivot[f]) continue;
        IntegerVector v(m, Integer(0));
        v[f] = scale;
        for (std::size_t k = 0; k < r; ++k) {
            const Integer& piv = ech.rows[k][ech.pivots[k]];
            v[ech.pivots[k]] = -ech.rows[k][f] * (scale / piv);
        }
        detail::make_primitive(v);
        if (abs(v[f]) != 1) unit_free_coordinates = false;
        lat.basis.push_back(std::move(v));
    }
    // With unit free coordinates every kernel vector is the integer
    // combination given by its own free coordinates.
    if (!unit_free_coordinates) lat.basis = detail::unimodular_kernel(a);
    return lat;
}

} // namespace toric

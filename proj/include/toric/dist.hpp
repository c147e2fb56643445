#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "numeric.hpp"

namespace toric {

/// Exact probability vector over a state space.
class Distribution {
public:
    Distribution() = default;

    Distribution(StateSpace space, std::vector<Rational> probs) : space_(std::move(space)), p_(std::move(probs)) {
        if (p_.size() != space_.size())
            throw DomainError("distribution has " + std::to_string(p_.size()) + " entries, expected " +
                              std::to_string(space_.size()));
        Rational sum = 0;
        for (const auto& x : p_) {
            if (x < 0) throw DomainError("probabilities must be non-negative");
            sum += x;
        }
        if (sum != 1) throw DomainError("probabilities sum to " + to_string(sum) + ", not 1");
    }

    static Distribution uniform(const StateSpace& space) {
        return Distribution(space, std::vector<Rational>(space.size(), Rational(1, static_cast<long>(space.size()))));
    }

    static Distribution point_mass(const StateSpace& space, std::size_t index) {
        std::vector<Rational> p(space.size(), Rational(0));
        p.at(index) = 1;
        return Distribution(space, std::move(p));
    }

    const StateSpace& space() const { return space_; }
    const std::vector<Rational>& probs() const { return p_; }
    const Rational& operator[](std::size_t i) const { return p_[i]; }
    std::size_t size() const { return p_.size(); }

    friend bool operator==(const Distribution& a, const Distribution& b) { return a.p_ == b.p_; }

private:
    StateSpace space_;
    std::vector<Rational> p_;
};

/// t_i = exp(theta_i); theta itself is never stored.
struct ParameterVector {
    std::vector<Rational> t;
};

enum class FactorStatus { Factors, LimitOnly, Outside };

inline const char* verdict_name(FactorStatus s) {
    switch (s) {
    case FactorStatus::Factors: return "FACTORS";
    case FactorStatus::LimitOnly: return "LIMIT_ONLY";
    case FactorStatus::Outside: return "OUTSIDE";
    }
    return "?";
}

struct FactorizationVerdict {
    FactorStatus status = FactorStatus::Outside;
    std::vector<std::size_t> support;
    bool nice = false;
    std::optional<Binomial> failing_binomial;
};

/// Monomial map: component j is prod_i t_i^{a_ij}, with 0^0 = 1.
inline std::vector<Rational> phi(const ModelMatrix& a, const ParameterVector& params) {
    if (params.t.size() != a.rows())
        throw DomainError("parameter vector has length " + std::to_string(params.t.size()) + ", expected " +
                          std::to_string(a.rows()));
    for (const auto& x : params.t)
        if (x < 0) throw DomainError("parameters must be non-negative");
    std::vector<Rational> out(a.cols(), Rational(1));
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::int64_t k = 0; k < a.at(i, j); ++k) out[j] *= params.t[i];
    return out;
}

/// Divides by the exact sum.
inline Distribution normalize(const StateSpace& space, std::vector<Rational> v) {
    Rational sum = 0;
    for (const auto& x : v) {
        if (x < 0) throw DomainError("cannot normalize a vector with negative entries");
        sum += x;
    }
    if (sum == 0) throw DomainError("cannot normalize the zero vector");
    for (auto& x : v) x /= sum;
    return Distribution(space, std::move(v));
}

inline std::vector<std::size_t> support(const Distribution& p) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0) s.push_back(i);
    return s;
}

/// F is nice iff no column outside F has its support inside the union of
/// the supports of the columns in F. The empty set counts as nice only
/// when there are no columns at all.
inline bool is_nice(std::span<const std::size_t> f, const ModelMatrix& a) {
    if (f.empty()) return a.cols() == 0;
    std::vector<bool> in_f(a.cols(), false);
    for (auto j : f) {
        if (j >= a.cols()) throw DomainError("support index out of range");
        in_f[j] = true;
    }
    std::vector<bool> covered(a.rows(), false);
    for (auto j : f)
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (a.at(i, j) != 0) covered[i] = true;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (in_f[j]) continue;
        bool contained = true;
        for (std::size_t i = 0; i < a.rows() && contained; ++i)
            if (a.at(i, j) != 0 && !covered[i]) contained = false;
        if (contained) return false;
    }
    return true;
}

inline Rational evaluate_monomial(std::span<const Exponent> e, std::span<const Rational> p) {
    Rational v = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (p[i] == 0) return Rational(0);
        for (Exponent k = 0; k < e[i]; ++k) v *= p[i];
    }
    return v;
}

/// Value of p^plus - p^minus at p.
inline Rational evaluate(const Binomial& b, std::span<const Rational> p) {
    if (b.size() != p.size()) throw DomainError("binomial length does not match the distribution");
    return evaluate_monomial(b.plus, p) - evaluate_monomial(b.minus, p);
}

/// First basis binomial that does not vanish at P, if any.
inline std::optional<Binomial> vanishes(const Distribution& p, const IdealBasis& basis) {
    for (const auto& b : basis.binomials)
        if (evaluate(b, p.probs()) != 0) return b;
    return std::nullopt;
}

/// Outside iff some generator of I_A fails at P; otherwise Factors iff the
/// support is nice, else LimitOnly.
inline FactorizationVerdict classify(const Distribution& p, const ModelMatrix& a, const IdealBasis& basis) {
    if (p.size() != a.cols()) throw DomainError("distribution length does not match the model matrix");
    FactorizationVerdict v;
    v.support = support(p);
    v.nice = is_nice(v.support, a);
    v.failing_binomial = vanishes(p, basis);
    if (v.failing_binomial) v.status = FactorStatus::Outside;
    else v.status = v.nice ? FactorStatus::Factors : FactorStatus::LimitOnly;
    return v;
}

struct RecoveryResult {
    std::optional<ParameterVector> params;
    std::vector<double> log_t;  // floating-point parameters (-inf for zeros)
    double max_relative_error = 0;
    std::string failure;

    bool ok() const { return params.has_value(); }
};

/// Best-effort preimage under phi: rows not touched by the support get
/// t_i = 0, the rest solve log p_j = sum_i a_ij log t_i (j in the support)
/// in least squares. The result is accepted only if normalize(phi(A, t))
/// matches P coordinate-wise within relative tolerance `tol`.
inline RecoveryResult recover_parameters(const Distribution& p, const ModelMatrix& a, double tol) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    if (p.size() != a.cols()) throw DomainError("distribution length does not match the model matrix");
    RecoveryResult res;
    const auto f = support(p);

    std::vector<bool> live(a.rows(), false);
    for (auto j : f)
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (a.at(i, j) != 0) live[i] = true;
    std::vector<std::size_t> live_rows;
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (live[i]) live_rows.push_back(i);

    Eigen::MatrixXd m(static_cast<Eigen::Index>(f.size()), static_cast<Eigen::Index>(live_rows.size()));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(f.size()));
    for (std::size_t r = 0; r < f.size(); ++r) {
        for (std::size_t c = 0; c < live_rows.size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = static_cast<double>(a.at(live_rows[c], f[r]));
        rhs(static_cast<Eigen::Index>(r)) = std::log(to_double(p[f[r]]));
    }
    const Eigen::VectorXd x = m.completeOrthogonalDecomposition().solve(rhs);

    ParameterVector params;
    params.t.assign(a.rows(), Rational(0));
    res.log_t.assign(a.rows(), -INFINITY);
    for (std::size_t c = 0; c < live_rows.size(); ++c) {
        const double lt = x(static_cast<Eigen::Index>(c));
        res.log_t[live_rows[c]] = lt;
        const double t = std::exp(lt);
        if (!std::isfinite(t) || t <= 0) {
            res.failure = "parameter overflow";
            return res;
        }
        params.t[live_rows[c]] = rational_from_double(t);
    }

    const auto q = normalize(p.space(), phi(a, params));
    double worst = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0) {
            if (q[j] != 0) {
                res.failure = "state " + std::to_string(j) + " has zero probability but positive recovered mass";
                res.max_relative_error = INFINITY;
                return res;
            }
            continue;
        }
        const double rel = std::abs(to_double((q[j] - p[j]) / p[j]));
        worst = std::max(worst, rel);
    }
    res.max_relative_error = worst;
    if (worst > tol) {
        res.failure = "verification error " + std::to_string(worst) + " exceeds tolerance";
        return res;
    }
    res.params = std::move(params);
    return res;
}

} // namespace toric

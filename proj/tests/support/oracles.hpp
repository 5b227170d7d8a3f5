// Independent reference computations used by the test suites. Nothing here
// calls the library's solvers: coefficients come from a graded dynamic
// program over (state, valuation), series arithmetic is done on explicit
// truncated tables, and guards are evaluated by a separate interpreter.
#pragma once

#include "redip/guard.hpp"
#include "redip/pga.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <variant>
#include <vector>

namespace oracle {

using redip::Alphabet;
using redip::Guard;
using redip::Pga;
using redip::Rational;
using redip::Valuation;

/// Every valuation v with v <= bound componentwise, in graded order.
inline std::vector<Valuation> box(const Valuation& bound) {
    std::vector<Valuation> out;
    Valuation v(bound.arity());
    for (;;) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < v.arity() && v[i] == bound[i]) v[i++] = 0;
        if (i == v.arity()) break;
        ++v[i];
    }
    std::stable_sort(out.begin(), out.end(), [](const Valuation& a, const Valuation& b) {
        std::uint64_t sa = 0, sb = 0;
        for (auto c : a.counts) sa += c;
        for (auto c : b.counts) sb += c;
        return sa < sb;
    });
    return out;
}

inline Valuation uniform_bound(std::size_t arity, std::uint64_t k) {
    return Valuation(std::vector<std::uint64_t>(arity, k));
}

/// A power series truncated to a box; absent entries are zero.
class Series {
public:
    explicit Series(Valuation bound) : bound_(std::move(bound)) {}

    const Valuation& bound() const { return bound_; }
    Rational at(const Valuation& v) const {
        auto it = terms_.find(v);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    void add(const Valuation& v, const Rational& c) {
        if (!inside(v) || c == 0) return;
        terms_[v] += c;
    }
    bool inside(const Valuation& v) const {
        for (std::size_t i = 0; i < v.arity(); ++i)
            if (v[i] > bound_[i]) return false;
        return true;
    }
    const std::map<Valuation, Rational>& terms() const { return terms_; }

    static Series monomial(const Valuation& bound, const Valuation& v, const Rational& c = 1) {
        Series s(bound);
        s.add(v, c);
        return s;
    }

    friend Series operator+(const Series& a, const Series& b) {
        Series out = a;
        for (const auto& [v, c] : b.terms_) out.add(v, c);
        return out;
    }
    friend Series operator*(const Rational& k, const Series& a) {
        Series out(a.bound_);
        for (const auto& [v, c] : a.terms_) out.add(v, k * c);
        return out;
    }
    friend Series operator*(const Series& a, const Series& b) {
        Series out(a.bound_);
        for (const auto& [u, c] : a.terms_)
            for (const auto& [w, d] : b.terms_) {
                Valuation s(u.arity());
                for (std::size_t i = 0; i < u.arity(); ++i) s[i] = u[i] + w[i];
                out.add(s, c * d);
            }
        return out;
    }

private:
    Valuation bound_;
    std::map<Valuation, Rational> terms_;
};

inline Series power(const Series& s, std::uint64_t k) {
    Valuation zero(s.bound().arity());
    Series out = Series::monomial(s.bound(), zero);
    for (std::uint64_t i = 0; i < k; ++i) out = out * s;
    return out;
}

/// True if no cycle consists of epsilon transitions only.
inline bool epsilon_acyclic(const Pga& a) {
    std::size_t n = a.num_states();
    std::vector<int> color(n, 0);
    std::vector<std::vector<std::size_t>> eps(n);
    for (const auto& e : a.edges())
        if (!e.symbol) eps[e.src].push_back(e.dst);
    std::function<bool(std::size_t)> dfs = [&](std::size_t q) {
        color[q] = 1;
        for (auto t : eps[q]) {
            if (color[t] == 1) return false;
            if (color[t] == 0 && !dfs(t)) return false;
        }
        color[q] = 2;
        return true;
    };
    for (std::size_t q = 0; q < n; ++q)
        if (color[q] == 0 && !dfs(q)) return false;
    return true;
}

/// Coefficients of the behavior on the box below bound, by the recursion
///   value(q, v) = [v = 0] F(q) + sum over q -w.l-> t of w * value(t, v - l)
/// which is well founded when epsilon transitions form no cycle.
inline Series behavior(const Pga& a, const Valuation& bound) {
    if (!epsilon_acyclic(a)) throw std::logic_error("behavior oracle needs an epsilon-acyclic automaton");
    std::size_t n = a.num_states();
    // Reverse topological order of the epsilon graph: successors first.
    std::vector<std::size_t> order;
    std::vector<bool> seen(n, false);
    std::function<void(std::size_t)> visit = [&](std::size_t q) {
        seen[q] = true;
        for (const auto& e : a.edges())
            if (e.src == q && !e.symbol && !seen[e.dst]) visit(e.dst);
        order.push_back(q);
    };
    for (std::size_t q = 0; q < n; ++q)
        if (!seen[q]) visit(q);

    std::map<Valuation, std::vector<Rational>> value;
    Series out(bound);
    for (const auto& v : box(bound)) {
        std::vector<Rational> row(n, Rational(0));
        bool zero = std::all_of(v.counts.begin(), v.counts.end(), [](auto c) { return c == 0; });
        for (std::size_t q : order) {
            Rational sum = zero ? a.final_weight(q) : Rational(0);
            for (const auto& e : a.edges()) {
                if (e.src != q) continue;
                if (!e.symbol) {
                    sum += e.weight * row[e.dst];
                } else if (v[*e.symbol] > 0) {
                    Valuation u = v;
                    --u[*e.symbol];
                    sum += e.weight * value.at(u)[e.dst];
                }
            }
            row[q] = sum;
        }
        Rational total = 0;
        for (std::size_t q = 0; q < n; ++q) total += a.initial(q) * row[q];
        out.add(v, total);
        value.emplace(v, std::move(row));
    }
    return out;
}

/// Guard semantics evaluated directly on the tree.
inline bool satisfies(const Guard& g, const Alphabet& alphabet, const Valuation& v) {
    const auto& node = g.node();
    if (const auto* lt = std::get_if<Guard::LessThan>(&node)) return v[*alphabet.find(lt->var)] < lt->bound;
    if (const auto* m = std::get_if<Guard::ModEq>(&node)) return v[*alphabet.find(m->var)] % m->modulus == m->residue;
    if (const auto* a = std::get_if<Guard::And>(&node))
        return satisfies(a->lhs, alphabet, v) && satisfies(a->rhs, alphabet, v);
    return !satisfies(std::get<Guard::Not>(node).operand, alphabet, v);
}

/// Total mass by Kleene iteration B <- M B + F in floating point.
inline double kleene_mass(const Pga& a, int iterations, std::vector<double>* state_values = nullptr) {
    std::size_t n = a.num_states();
    std::vector<double> b(n, 0.0);
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> next(n);
        for (std::size_t q = 0; q < n; ++q) next[q] = a.final_weight(q).get_d();
        for (const auto& e : a.edges()) next[e.src] += e.weight.get_d() * b[e.dst];
        b = std::move(next);
    }
    double total = 0;
    for (std::size_t q = 0; q < n; ++q) total += a.initial(q).get_d() * b[q];
    if (state_values) *state_values = b;
    return total;
}

// Closed-form probability mass functions.

inline Rational rational_power(const Rational& base, std::uint64_t k) {
    Rational out = 1;
    for (std::uint64_t i = 0; i < k; ++i) out *= base;
    return out;
}

inline Rational choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    Rational out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) out = out * Rational(n - k + i) / Rational(i);
    return out;
}

inline Rational geometric_pmf(const Rational& p, std::uint64_t k) { return rational_power(1 - p, k) * p; }
inline Rational bernoulli_pmf(const Rational& p, std::uint64_t k) { return k == 0 ? Rational(1 - p) : k == 1 ? p : Rational(0); }
inline Rational dirac_pmf(std::uint64_t n, std::uint64_t k) { return k == n ? 1 : 0; }
inline Rational uniform_pmf(std::uint64_t m, std::uint64_t k) { return k < m ? Rational(1, m) : Rational(0); }
inline Rational binomial_pmf(std::uint64_t n, const Rational& p, std::uint64_t k) {
    return choose(n, k) * rational_power(p, k) * rational_power(1 - p, n - std::min(n, k)) * (k <= n ? 1 : 0);
}
/// Failures before the n-th success.
inline Rational negbinomial_pmf(std::uint64_t n, const Rational& p, std::uint64_t k) {
    if (n == 0) return k == 0 ? 1 : 0;
    return choose(n + k - 1, k) * rational_power(p, n) * rational_power(1 - p, k);
}

}  // namespace oracle

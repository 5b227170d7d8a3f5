#include "redip/linear.hpp"

#include <algorithm>
#include <limits>

namespace redip {

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& adjacency) {
    // Iterative Tarjan.
    constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
    std::size_t n = adjacency.size();
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next_child;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            std::size_t v = f.node;
            if (f.next_child < adjacency[v].size()) {
                std::size_t w = adjacency[v][f.next_child++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty()) {
                std::size_t parent = call.back().node;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return components;
}

namespace {

// Solves the dense system a x = b in place by Gauss-Jordan elimination.
// Returns false if a is singular.
bool solve_dense(std::vector<std::vector<Rational>>& a, std::vector<Rational>& b) {
    std::size_t k = a.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && a[pivot][col] == 0) ++pivot;
        if (pivot == k) return false;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        Rational inv = 1 / a[col][col];
        for (std::size_t j = col; j < k; ++j) a[col][j] *= inv;
        b[col] *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rational factor = a[i][col];
            for (std::size_t j = col; j < k; ++j) a[i][j] -= factor * a[col][j];
            b[i] -= factor * b[col];
        }
    }
    return true;
}

}  // namespace

std::optional<std::vector<Rational>> least_solution_elimination(const FixpointSystem& sys) {
    std::size_t n = sys.size;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t q = 0; q < n; ++q)
        for (const auto& [t, w] : sys.rows[q]) adj[q].push_back(t);

    std::vector<Rational> solution(n);
    std::vector<std::size_t> block_of(n, 0);
    std::vector<bool> solved(n, false);

    auto components = strongly_connected_components(adj);
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto& comp = components[c];
        for (std::size_t i = 0; i < comp.size(); ++i) block_of[comp[i]] = i;
        std::size_t k = comp.size();

        std::vector<std::vector<Rational>> mat(k, std::vector<Rational>(k));
        std::vector<Rational> rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t q = comp[i];
            mat[i][i] = 1;
            rhs[i] = sys.rhs[q];
            for (const auto& [t, w] : sys.rows[q]) {
                if (solved[t]) rhs[i] += w * solution[t];
                else mat[i][block_of[t]] -= w;  // t lies in this component
            }
        }
        if (!solve_dense(mat, rhs)) return std::nullopt;
        for (std::size_t i = 0; i < k; ++i) {
            if (rhs[i] < 0) return std::nullopt;
            solution[comp[i]] = rhs[i];
        }
        for (auto q : comp) solved[q] = true;
    }
    return solution;
}

namespace {

struct Tableau {
    std::vector<std::vector<Rational>> rows;  // constraint rows, last entry is rhs
    std::vector<Rational> cost;               // reduced costs, last entry is -objective
    std::vector<std::size_t> basis;

    std::size_t cols() const { return cost.size() - 1; }

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[c] == 0) return;
            Rational f = row[c];
            for (std::size_t j = 0; j < row.size(); ++j)
                if (rows[r][j] != 0) row[j] -= f * rows[r][j];
        };
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r) eliminate(rows[i]);
        eliminate(cost);
        basis[r] = c;
    }

    // Bland's rule; `allowed` limits entering columns.
    LpStatus run(std::size_t allowed) {
        for (;;) {
            std::size_t enter = allowed;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (cost[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed) return LpStatus::optimal;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                Rational ratio = rows[i].back() / rows[i][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return LpStatus::unbounded;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult simplex_minimize(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                          const std::vector<Rational>& c) {
    std::size_t m = a.size();
    std::size_t n = c.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) {
            for (auto& v : a[i]) v = -v;
            b[i] = -b[i];
        }
    }
    // Phase 1 with one artificial per row.
    Tableau t;
    t.rows.assign(m, std::vector<Rational>(n + m + 1));
    t.cost.assign(n + m + 1, Rational(0));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = a[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][n + m] = b[i];
        t.basis[i] = n + i;
        for (std::size_t j = 0; j < n; ++j) t.cost[j] -= a[i][j];
        t.cost[n + m] -= b[i];
    }
    t.run(n + m);
    LpResult result;
    if (t.cost[n + m] != 0) {
        result.status = LpStatus::infeasible;
        return result;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t j = 0;
        while (j < n && t.rows[i][j] == 0) ++j;
        if (j < n) {
            t.pivot(i, j);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
    // Phase 2 over the original columns only.
    for (auto& row : t.rows) {
        Rational rhs = row.back();
        row.resize(n);
        row.push_back(rhs);
    }
    t.cost.assign(n + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j) t.cost[j] = c[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const Rational& cb = c[t.basis[i]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j <= n; ++j) t.cost[j] -= cb * t.rows[i][j];
    }
    result.status = t.run(n);
    if (result.status != LpStatus::optimal) return result;
    result.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i) result.x[t.basis[i]] = t.rows[i].back();
    result.value = -t.cost[n];
    return result;
}

std::optional<std::vector<Rational>> least_solution_lp(const FixpointSystem& sys,
                                                       const std::vector<Rational>& objective) {
    std::size_t n = sys.size;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t q = 0; q < n; ++q) {
        a[q][q] = 1;
        for (const auto& [t, w] : sys.rows[q]) a[q][t] -= w;
    }
    auto res = simplex_minimize(std::move(a), sys.rhs, objective);
    if (res.status != LpStatus::optimal) return std::nullopt;
    return res.x;
}

}  // namespace redip

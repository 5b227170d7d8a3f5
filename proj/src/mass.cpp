#include "redip/errors.hpp"
#include "redip/linear.hpp"
#include "redip/pga.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace redip {

namespace {

// The scalar system obtained by forgetting transition letters.
FixpointSystem scalar_system(const Pga& a) {
    FixpointSystem sys;
    sys.size = a.num_states();
    sys.rows.resize(sys.size);
    sys.rhs = a.final_weights();
    std::vector<std::map<std::size_t, Rational>> merged(sys.size);
    for (const auto& e : a.edges()) merged[e.src][e.dst] += e.weight;
    for (std::size_t q = 0; q < sys.size; ++q)
        for (auto& [t, w] : merged[q]) sys.rows[q].emplace_back(t, w);
    return sys;
}

ExtRational dot(const std::vector<Rational>& i, const std::vector<Rational>& b) {
    Rational sum = 0;
    for (std::size_t q = 0; q < i.size(); ++q) sum += i[q] * b[q];
    return ExtRational(sum);
}

}  // namespace

ExtRational mass(const Pga& a, MassMethod method) {
    Pga useful = trim(a);
    FixpointSystem sys = scalar_system(useful);
    if (method != MassMethod::linear_program) {
        if (auto b = least_solution_elimination(sys)) return dot(useful.initial_weights(), *b);
        if (method == MassMethod::elimination) return ExtRational::infinity();
    }
    if (auto b = least_solution_lp(sys, useful.initial_weights())) return dot(useful.initial_weights(), *b);
    return ExtRational::infinity();
}

ValidationReport validate_pga(const Pga& a) {
    ValidationReport report;
    report.issues = structural_issues(a);
    report.mass = mass(a);
    report.is_pga = report.mass <= ExtRational(1L);

    Pga useful = trim(a);
    bool no_accepting = useful.num_states() == 1 && useful.size() == 0 && useful.final_weight(0) == 0;
    std::size_t kept = no_accepting ? 0 : useful.num_states();
    if (kept < a.num_states())
        report.issues.push_back("warning: " + std::to_string(a.num_states() - kept) +
                                " state(s) unreachable or not co-accessible");
    return report;
}

std::map<Valuation, Rational> coefficient_table(const Pga& a, const Valuation& bound) {
    if (bound.arity() != a.alphabet().size()) throw AlphabetMismatch("bound arity differs from alphabet size");
    Pga t = trim(a);
    std::size_t n = t.num_states();
    std::size_t k = bound.arity();

    // Epsilon part, solved along its components; lettered part feeds the rhs.
    std::vector<std::vector<std::pair<std::size_t, Rational>>> eps(n);
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, Rational>>> lettered(n);
    for (const auto& e : t.edges()) {
        if (e.symbol) lettered[e.src].emplace_back(*e.symbol, e.dst, e.weight);
        else eps[e.src].emplace_back(e.dst, e.weight);
    }
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t q = 0; q < n; ++q)
        for (auto& [d, w] : eps[q]) adj[q].push_back(d);
    auto components = strongly_connected_components(adj);

    // Inverse of (I - M_CC) per component.
    struct Block {
        std::vector<std::size_t> states;
        std::vector<std::vector<Rational>> inverse;
    };
    std::vector<Block> blocks;
    std::vector<std::size_t> block_of(n), pos_in_block(n);
    for (std::size_t c = 0; c < components.size(); ++c)
        for (std::size_t i = 0; i < components[c].size(); ++i) {
            block_of[components[c][i]] = c;
            pos_in_block[components[c][i]] = i;
        }
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto& comp = components[c];
        std::size_t m = comp.size();
        std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(2 * m));
        for (std::size_t i = 0; i < m; ++i) {
            mat[i][i] += 1;
            mat[i][m + i] = 1;
            for (auto& [d, w] : eps[comp[i]])
                if (block_of[d] == c) mat[i][pos_in_block[d]] -= w;
        }
        for (std::size_t col = 0; col < m; ++col) {
            std::size_t piv = col;
            while (piv < m && mat[piv][col] == 0) ++piv;
            if (piv == m) throw InfiniteMass("epsilon cycle of weight >= 1; coefficients diverge");
            std::swap(mat[piv], mat[col]);
            Rational inv = 1 / mat[col][col];
            for (auto& v : mat[col]) v *= inv;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == col || mat[i][col] == 0) continue;
                Rational f = mat[i][col];
                for (std::size_t j = 0; j < 2 * m; ++j) mat[i][j] -= f * mat[col][j];
            }
        }
        Block b{comp, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m))};
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                b.inverse[i][j] = mat[i][m + j];
                if (b.inverse[i][j] < 0) throw InfiniteMass("epsilon cycle of weight >= 1; coefficients diverge");
            }
        blocks.push_back(std::move(b));
    }

    // Enumerate the box in lexicographic order so that every predecessor
    // sigma - e_X is handled first.
    std::map<Valuation, std::vector<Rational>> per_state;
    std::map<Valuation, Rational> out;
    Valuation tau(k);
    bool done = false;
    while (!done) {
        std::vector<Rational> rhs(n);
        bool zero = std::all_of(tau.counts.begin(), tau.counts.end(), [](std::uint64_t c) { return c == 0; });
        for (std::size_t q = 0; q < n; ++q) {
            if (zero) rhs[q] = t.final_weight(q);
            for (auto& [sym, d, w] : lettered[q]) {
                if (tau[sym] == 0) continue;
                Valuation prev = tau;
                --prev[sym];
                rhs[q] += w * per_state.at(prev)[d];
            }
        }
        std::vector<Rational> v(n);
        for (const auto& b : blocks) {
            std::size_t m = b.states.size();
            std::vector<Rational> local(m);
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t q = b.states[i];
                local[i] = rhs[q];
                for (auto& [d, w] : eps[q])
                    if (block_of[d] != block_of[q]) local[i] += w * v[d];
            }
            for (std::size_t i = 0; i < m; ++i) {
                Rational acc = 0;
                for (std::size_t j = 0; j < m; ++j)
                    if (b.inverse[i][j] != 0) acc += b.inverse[i][j] * local[j];
                v[b.states[i]] = acc;
            }
        }
        Rational total = 0;
        for (std::size_t q = 0; q < n; ++q) total += t.initial(q) * v[q];
        out.emplace(tau, total);
        per_state.emplace(tau, std::move(v));

        // Next valuation in lexicographic order (last coordinate fastest).
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (tau[i] < bound[i]) {
                ++tau[i];
                for (std::size_t j = i + 1; j < k; ++j) tau[j] = 0;
                break;
            }
            if (i == 0) done = true;
        }
        if (k == 0) done = true;
    }
    return out;
}

}  // namespace redip

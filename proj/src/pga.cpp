#include "redip/pga.hpp"

#include "redip/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace redip {

namespace {

constexpr std::size_t kEpsilonKey = static_cast<std::size_t>(-1);

std::size_t symbol_key(const Symbol& s) { return s ? *s : kEpsilonKey; }

auto edge_order(const Edge& e) { return std::make_tuple(e.src, e.dst, symbol_key(e.symbol)); }

}  // namespace

std::size_t Pga::size(std::size_t symbol) const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.symbol == symbol; }));
}

std::size_t Pga::num_initial() const {
    return static_cast<std::size_t>(std::count_if(initial_.begin(), initial_.end(), [](const Rational& r) { return r != 0; }));
}

std::size_t Pga::num_final() const {
    return static_cast<std::size_t>(std::count_if(final_.begin(), final_.end(), [](const Rational& r) { return r != 0; }));
}

Pga Pga::over(const Alphabet& superset) const {
    if (!alphabet_.subset_of(superset)) throw AlphabetMismatch("automaton alphabet is not contained in the target alphabet");
    Pga out = *this;
    out.alphabet_ = superset;
    for (auto& e : out.edges_) {
        if (e.symbol) e.symbol = superset.index_of(alphabet_.name(*e.symbol));
    }
    return out;
}

bool operator==(const Pga& a, const Pga& b) {
    if (!(a.alphabet_ == b.alphabet_) || a.initial_ != b.initial_ || a.final_ != b.final_) return false;
    if (a.edges_.size() != b.edges_.size()) return false;
    auto sorted = [](std::vector<Edge> v) {
        std::sort(v.begin(), v.end(), [](const Edge& x, const Edge& y) { return edge_order(x) < edge_order(y); });
        return v;
    };
    return sorted(a.edges_) == sorted(b.edges_);
}

PgaBuilder::PgaBuilder(const Pga& from) : alphabet_(from.alphabet()) {
    initial_ = from.initial_weights();
    final_ = from.final_weights();
    for (const auto& e : from.edges()) add_edge(e.src, e.dst, e.weight, e.symbol);
}

StateId PgaBuilder::add_state(Rational initial, Rational final) {
    if (initial < 0 || final < 0) throw InvalidWeight("negative initial or final weight");
    initial.canonicalize();
    final.canonicalize();
    initial_.push_back(std::move(initial));
    final_.push_back(std::move(final));
    return initial_.size() - 1;
}

StateId PgaBuilder::add_states(std::size_t count) {
    StateId first = initial_.size();
    initial_.resize(initial_.size() + count, Rational(0));
    final_.resize(final_.size() + count, Rational(0));
    return first;
}

void PgaBuilder::add_edge(StateId src, StateId dst, const Rational& weight, Symbol symbol) {
    if (src >= num_states() || dst >= num_states()) throw ParseError("transition references a state out of range");
    if (symbol && *symbol >= alphabet_.size()) throw AlphabetMismatch("transition symbol out of alphabet range");
    if (weight < 0) throw InvalidWeight("negative transition weight " + to_string(weight));
    if (weight == 0) return;
    auto key = std::make_tuple(src, dst, symbol_key(symbol));
    if (auto it = index_.find(key); it != index_.end()) {
        edges_[it->second].weight += weight;
        return;
    }
    index_.emplace(key, edges_.size());
    edges_.push_back(Edge{src, dst, weight, symbol});
    edges_.back().weight.canonicalize();
}

void PgaBuilder::set_initial(StateId q, Rational weight) {
    if (weight < 0) throw InvalidWeight("negative initial weight");
    weight.canonicalize();
    initial_.at(q) = std::move(weight);
}

void PgaBuilder::set_final(StateId q, Rational weight) {
    if (weight < 0) throw InvalidWeight("negative final weight");
    weight.canonicalize();
    final_.at(q) = std::move(weight);
}

Pga PgaBuilder::build() const {
    Pga a;
    a.alphabet_ = alphabet_;
    a.edges_ = edges_;
    a.initial_ = initial_;
    a.final_ = final_;
    return a;
}

std::vector<std::string> structural_issues(const Pga& a) {
    std::vector<std::string> issues;
    std::set<std::tuple<StateId, StateId, std::size_t>> seen;
    for (const auto& e : a.edges()) {
        if (e.src >= a.num_states() || e.dst >= a.num_states()) issues.push_back("transition state index out of range");
        if (e.symbol && *e.symbol >= a.alphabet().size()) issues.push_back("transition symbol out of range");
        if (e.weight <= 0) issues.push_back("transition with non-positive weight");
        if (!seen.insert(edge_order(e)).second) issues.push_back("duplicate transition");
    }
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (a.initial(q) < 0 || a.final_weight(q) < 0) issues.push_back("negative initial or final weight");
    }
    return issues;
}

namespace {

std::vector<bool> closure(const Pga& a, bool forward) {
    std::size_t n = a.num_states();
    std::vector<std::vector<StateId>> adj(n);
    for (const auto& e : a.edges()) {
        if (forward) adj[e.src].push_back(e.dst);
        else adj[e.dst].push_back(e.src);
    }
    std::vector<bool> mark(n, false);
    std::deque<StateId> work;
    for (StateId q = 0; q < n; ++q) {
        if ((forward ? a.initial(q) : a.final_weight(q)) > 0) {
            mark[q] = true;
            work.push_back(q);
        }
    }
    while (!work.empty()) {
        StateId q = work.front();
        work.pop_front();
        for (StateId t : adj[q]) {
            if (!mark[t]) {
                mark[t] = true;
                work.push_back(t);
            }
        }
    }
    return mark;
}

}  // namespace

Pga trim(const Pga& a) {
    auto fwd = closure(a, true);
    auto bwd = closure(a, false);
    std::vector<StateId> remap(a.num_states(), static_cast<StateId>(-1));
    PgaBuilder b(a.alphabet());
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (fwd[q] && bwd[q]) remap[q] = b.add_state(a.initial(q), a.final_weight(q));
    }
    if (b.num_states() == 0) {
        b.add_state(1, 0);
        return b.build();
    }
    for (const auto& e : a.edges()) {
        if (remap[e.src] != static_cast<StateId>(-1) && remap[e.dst] != static_cast<StateId>(-1))
            b.add_edge(remap[e.src], remap[e.dst], e.weight, e.symbol);
    }
    return b.build();
}

Pga scale_initial(const Pga& a, const Rational& factor) {
    PgaBuilder b(a);
    for (StateId q = 0; q < a.num_states(); ++q) b.set_initial(q, a.initial(q) * factor);
    return b.build();
}

Pga normalize(const Pga& a) {
    ExtRational m = mass(a);
    if (m.is_infinite()) throw InfiniteMass("cannot normalize an automaton with infinite mass");
    if (m.value() == 0) throw ZeroMass("cannot normalize an automaton with zero mass");
    if (m.value() == 1) return a;
    return scale_initial(a, Rational(1 / m.value()));
}

std::vector<WeightedPath> enumerate_paths(const Pga& a, std::size_t max_len) {
    std::vector<WeightedPath> out;
    if (max_len == 0) return out;
    std::vector<std::vector<const Edge*>> outgoing(a.num_states());
    for (const auto& e : a.edges()) outgoing[e.src].push_back(&e);

    WeightedPath current;
    current.parikh = Valuation(a.alphabet().size());
    // Depth-first over prefixes; weight excludes the final weight.
    auto dfs = [&](auto&& self, StateId q, const Rational& prefix) -> void {
        if (a.final_weight(q) > 0) {
            WeightedPath p = current;
            p.weight = prefix * a.final_weight(q);
            out.push_back(std::move(p));
        }
        if (current.states.size() >= max_len) return;
        for (const Edge* e : outgoing[q]) {
            current.states.push_back(e->dst);
            if (e->symbol) ++current.parikh[*e->symbol];
            self(self, e->dst, Rational(prefix * e->weight));
            if (e->symbol) --current.parikh[*e->symbol];
            current.states.pop_back();
        }
    };
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (a.initial(q) == 0) continue;
        current.states = {q};
        dfs(dfs, q, a.initial(q));
    }
    return out;
}

std::map<Valuation, Rational> aggregate_paths(const std::vector<WeightedPath>& paths) {
    std::map<Valuation, Rational> out;
    for (const auto& p : paths) out[p.parikh] += p.weight;
    return out;
}

}  // namespace redip

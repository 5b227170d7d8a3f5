#include "redip/guard_dfa.hpp"

#include "redip/errors.hpp"

#include <deque>
#include <map>
#include <variant>

namespace redip {

GuardDfa::GuardDfa(Alphabet alphabet, std::vector<std::size_t> transitions, std::size_t initial,
                   std::vector<bool> accepting)
    : alphabet_(std::move(alphabet)), transitions_(std::move(transitions)), initial_(initial),
      accepting_(std::move(accepting)) {
    if (transitions_.size() != accepting_.size() * alphabet_.size())
        throw InvalidParameter("transition table size does not match states x alphabet");
    if (initial_ >= accepting_.size()) throw InvalidParameter("initial state out of range");
    for (auto t : transitions_)
        if (t >= accepting_.size()) throw InvalidParameter("transition target out of range");
}

std::size_t GuardDfa::run(std::span<const std::size_t> word) const {
    std::size_t s = initial_;
    for (auto sym : word) s = next(s, sym);
    return s;
}

GuardDfa dfa_less_than(const Alphabet& alphabet, const std::string& var, std::uint64_t n) {
    std::size_t k = alphabet.size();
    std::size_t x = alphabet.index_of(var);
    if (n == 0) return GuardDfa(alphabet, std::vector<std::size_t>(k, 0), 0, {false});
    std::size_t states = n + 1;  // counts 0..n-1 accept, n is the sink
    std::vector<std::size_t> delta(states * k);
    std::vector<bool> accepting(states, true);
    accepting[n] = false;
    for (std::size_t s = 0; s < states; ++s)
        for (std::size_t y = 0; y < k; ++y) delta[s * k + y] = (y == x && s < n) ? s + 1 : s;
    return GuardDfa(alphabet, std::move(delta), 0, std::move(accepting));
}

GuardDfa dfa_mod(const Alphabet& alphabet, const std::string& var, std::uint64_t m, std::uint64_t n) {
    if (m <= n) throw InvalidParameter("congruence requires modulus > residue");
    std::size_t k = alphabet.size();
    std::size_t x = alphabet.index_of(var);
    std::vector<std::size_t> delta(m * k);
    std::vector<bool> accepting(m, false);
    accepting[n] = true;
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t y = 0; y < k; ++y) delta[s * k + y] = y == x ? (s + 1) % m : s;
    return GuardDfa(alphabet, std::move(delta), 0, std::move(accepting));
}

GuardDfa dfa_product(const GuardDfa& a, const GuardDfa& b) {
    if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch("DFA product over different alphabets");
    std::size_t k = a.alphabet().size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::deque<std::size_t> work;
    auto intern = [&](std::pair<std::size_t, std::size_t> p) {
        auto [it, fresh] = ids.emplace(p, pairs.size());
        if (fresh) {
            pairs.push_back(p);
            work.push_back(it->second);
        }
        return it->second;
    };
    intern({a.initial(), b.initial()});
    std::vector<std::size_t> delta;
    while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        if (delta.size() < (id + 1) * k) delta.resize((id + 1) * k);
        auto [p, q] = pairs[id];
        for (std::size_t y = 0; y < k; ++y) delta[id * k + y] = intern({a.next(p, y), b.next(q, y)});
    }
    delta.resize(pairs.size() * k);
    std::vector<bool> accepting(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        accepting[i] = a.accepting(pairs[i].first) && b.accepting(pairs[i].second);
    return GuardDfa(a.alphabet(), std::move(delta), 0, std::move(accepting));
}

GuardDfa dfa_complement(const GuardDfa& b) {
    std::size_t k = b.alphabet().size();
    std::vector<std::size_t> delta(b.num_states() * k);
    std::vector<bool> accepting(b.num_states());
    for (std::size_t s = 0; s < b.num_states(); ++s) {
        accepting[s] = !b.accepting(s);
        for (std::size_t y = 0; y < k; ++y) delta[s * k + y] = b.next(s, y);
    }
    return GuardDfa(b.alphabet(), std::move(delta), b.initial(), std::move(accepting));
}

GuardDfa build_guard_dfa(const Guard& phi, const Alphabet& alphabet) {
    const auto& node = phi.node();
    if (auto* g = std::get_if<Guard::LessThan>(&node)) return dfa_less_than(alphabet, g->var, g->bound);
    if (auto* g = std::get_if<Guard::ModEq>(&node)) return dfa_mod(alphabet, g->var, g->modulus, g->residue);
    if (auto* g = std::get_if<Guard::And>(&node))
        return dfa_product(build_guard_dfa(g->lhs, alphabet), build_guard_dfa(g->rhs, alphabet));
    return dfa_complement(build_guard_dfa(std::get<Guard::Not>(node).operand, alphabet));
}

GuardDfa dfa_for_valuation(const Alphabet& alphabet, const Valuation& sigma) {
    if (sigma.arity() != alphabet.size()) throw AlphabetMismatch("valuation arity differs from alphabet size");
    if (alphabet.empty()) return GuardDfa(alphabet, {}, 0, {true});
    Guard phi = equal_to(alphabet.name(0), sigma[0]);
    for (std::size_t i = 1; i < alphabet.size(); ++i) phi = phi && equal_to(alphabet.name(i), sigma[i]);
    return build_guard_dfa(phi, alphabet);
}

}  // namespace redip

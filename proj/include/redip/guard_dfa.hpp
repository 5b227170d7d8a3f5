// Complete deterministic automata over the program variables whose languages
// are closed under permutation; one per guard.
#pragma once

#include "redip/alphabet.hpp"
#include "redip/guard.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace redip {

class GuardDfa {
public:
    /// transitions[state * |alphabet| + symbol] is the successor.
    GuardDfa(Alphabet alphabet, std::vector<std::size_t> transitions, std::size_t initial,
             std::vector<bool> accepting);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return accepting_.size(); }
    std::size_t initial() const { return initial_; }
    bool accepting(std::size_t state) const { return accepting_.at(state); }
    std::size_t next(std::size_t state, std::size_t symbol) const {
        return transitions_[state * alphabet_.size() + symbol];
    }

    std::size_t run(std::span<const std::size_t> word) const;
    bool accepts(std::span<const std::size_t> word) const { return accepting(run(word)); }

private:
    Alphabet alphabet_;
    std::vector<std::size_t> transitions_;
    std::size_t initial_;
    std::vector<bool> accepting_;
};

/// Counts var up to n; accepting while the count is below n. For n == 0 this
/// is the single rejecting state.
GuardDfa dfa_less_than(const Alphabet& alphabet, const std::string& var, std::uint64_t n);
/// Cyclic counter modulo m on var accepting residue n. Requires m > n.
GuardDfa dfa_mod(const Alphabet& alphabet, const std::string& var, std::uint64_t m, std::uint64_t n);
/// Intersection over the pairs reachable from the initial pair.
/// Throws AlphabetMismatch.
GuardDfa dfa_product(const GuardDfa& a, const GuardDfa& b);
GuardDfa dfa_complement(const GuardDfa& b);

/// Inductive translation of a guard.
GuardDfa build_guard_dfa(const Guard& phi, const Alphabet& alphabet);

/// DFA accepting exactly the words whose Parikh image equals sigma.
GuardDfa dfa_for_valuation(const Alphabet& alphabet, const Valuation& sigma);

}  // namespace redip

// Automata constructions composed by the program translation. Every function
// returns the raw construction result; callers decide when to trim.
#pragma once

#include "redip/guard_dfa.hpp"
#include "redip/pga.hpp"

#include <string>

namespace redip {

/// Turns every var-transition into an epsilon transition (var := 1 in the PGF).
Pga label_subst_one(const Pga& a, const std::string& var);

/// Deletes every var-transition (var := 0 in the PGF).
Pga label_subst_zero(const Pga& a, const std::string& var);

/// Behavior is the product of the two behaviors. Throws AlphabetMismatch.
Pga concat(const Pga& a1, const Pga& a2);

/// Behavior p*[a1] + q*[a2]. Throws AlphabetMismatch, InvalidWeight for p,q < 0.
Pga weighted_union(const Pga& a1, const Pga& a2, const Rational& p, const Rational& q);

/// Replaces every var-transition q -r.var-> t by a fresh copy of gadget,
/// entered with weights r*I'(s) and left with weights F'(s').
Pga transition_subst(const Pga& a, const std::string& var, const Pga& gadget);

/// Weighted product with a DFA over the full state space Q x Q'.
/// Lettered transitions advance both components, epsilon transitions only
/// the automaton's. Throws AlphabetMismatch.
Pga product(const Pga& a, const GuardDfa& b);

/// Monus decrement of var: (a x B_{var>0}) + a[var/0] where the transitions
/// entering the accepting DFA state lose their letter.
Pga decrement(const Pga& a, const std::string& var);

/// Number of transitions with nonzero weight.
inline std::size_t size(const Pga& a) { return a.size(); }

/// One transition src -1.var-> dst with initial and final weight 1.
Pga single_letter(const Alphabet& alphabet, const std::string& var);

/// The gadget for "x += y": a y-transition followed by an x-transition.
Pga increment_by_variable_gadget(const Alphabet& alphabet, const std::string& x, const std::string& y);

}  // namespace redip

#include "redip/constructions.hpp"
#include "redip/errors.hpp"
#include "redip/guard_dfa.hpp"
#include "redip/pga.hpp"

namespace redip {

Rational coefficient(const Pga& a, const Valuation& sigma) {
    if (sigma.arity() != a.alphabet().size()) throw AlphabetMismatch("valuation arity differs from alphabet size");
    ExtRational m = mass(product(a, dfa_for_valuation(a.alphabet(), sigma)));
    if (m.is_infinite()) throw InfiniteMass("coefficient at " + to_string(a.alphabet(), sigma) + " diverges");
    return m.value();
}

}  // namespace redip

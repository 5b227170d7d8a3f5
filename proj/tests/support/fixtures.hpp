// Programs and automata shared by several suites.
#pragma once

#include "redip/parser.hpp"
#include "redip/pga.hpp"
#include "redip/serialize.hpp"

#include <string>

namespace fixture {

using namespace redip;

/// The insurance example: a customer is high risk (r = 1) with probability
/// 1/10, claims follow a negative binomial law, and at least two claims were
/// observed.
inline const char* const insurance_source = R"(
// risk class
{r := 0} [9/10] {r := 1};
if (r = 0) {
  x += negbinomial(1, 1/2)
} else {
  x += negbinomial(2, 1/2)
};
observe(x >= 2)
)";

inline const char* const two_paths_source = "{x += y} [1/2] {skip}; observe(x = 0)";

/// A prior over {x, y} with behavior 1/2 + 1/2 y^2.
inline Pga two_paths_prior() {
    PgaBuilder b(Alphabet({"x", "y"}));
    b.add_states(3);
    b.set_initial(0, 1);
    b.set_final(0, Rational(1, 2));
    b.set_final(2, 1);
    b.add_edge(0, 1, Rational(1, 2), 1);
    b.add_edge(1, 2, 1, 1);
    return b.build();
}

/// Geometric(p) over the single letter of alphabet index var.
inline Pga geometric(const Alphabet& alphabet, std::size_t var, const Rational& p) {
    PgaBuilder b(alphabet);
    b.add_state(1, p);
    b.add_edge(0, 0, 1 - p, var);
    return b.build();
}

/// The chain X^n.
inline Pga chain(const Alphabet& alphabet, std::size_t var, std::size_t n) {
    PgaBuilder b(alphabet);
    b.add_states(n + 1);
    b.set_initial(0, 1);
    b.set_final(n, 1);
    for (std::size_t i = 0; i < n; ++i) b.add_edge(i, i + 1, 1, var);
    return b.build();
}

inline Valuation val(std::initializer_list<std::uint64_t> counts) { return Valuation(std::vector<std::uint64_t>(counts)); }

}  // namespace fixture

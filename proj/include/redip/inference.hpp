// Translation of programs into automata transformers and posterior queries.
#pragma once

#include "redip/parser.hpp"
#include "redip/pga.hpp"

#include <string>
#include <vector>

namespace redip {

/// One automaton construction performed during translation.
struct TranslationStep {
    std::string construction;
    std::size_t pre_trim_size = 0;   ///< transitions of the raw construction result
    std::size_t post_trim_size = 0;  ///< transitions after trimming
};

struct Translation {
    Pga result;
    std::vector<TranslationStep> steps;

    /// Largest raw construction result over all steps (the prior's size if
    /// the program performed no construction).
    std::size_t max_pre_trim_size() const;
};

/// The automaton for the point mass at the all-zero valuation.
Pga dirac_prior(const Alphabet& alphabet);

/// Posterior automaton transformer. The prior must mention every program
/// variable; throws AlphabetMismatch otherwise. The result is trimmed and
/// unnormalized.
Translation translate_traced(const Program& p, const Pga& prior);
Pga translate(const Program& p, const Pga& prior);

struct Inference {
    Pga unnormalized;
    Pga posterior;
    Rational normalizing_constant;
    /// Probability of violating an observation: mass(prior) - normalizing_constant.
    Rational violation_mass;
};

/// Throws InfeasibleObservation when no mass survives the observations and
/// InfiniteMass when the prior has infinite mass.
Inference infer(const Program& p, const Pga& prior);

/// Mass of a restricted to the valuations satisfying phi.
Rational guard_probability(const Pga& a, const Guard& phi);

/// P(var = k) for k = 0..upto, obtained by marginalizing the other variables
/// and filtering with equality guards.
std::vector<Rational> marginal(const Pga& a, const std::string& var, std::uint64_t upto);

/// The prior over merge(program_alphabet, prior alphabet), so that program
/// variables come first and variables known only to the prior are kept.
Pga align_prior(const Pga& prior, const Alphabet& program_alphabet);

}  // namespace redip

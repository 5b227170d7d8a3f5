// Probability generating automata: weighted automata whose transitions are
// labelled r or rX, with r a nonnegative rational and X a program variable.
#pragma once

#include "redip/alphabet.hpp"
#include "redip/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace redip {

using StateId = std::size_t;

/// Alphabet index of the letter carried by a transition; empty for epsilon.
using Symbol = std::optional<std::size_t>;

struct Edge {
    StateId src = 0;
    StateId dst = 0;
    Rational weight;
    Symbol symbol;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class PgaBuilder;

/// Immutable probability generating automaton. Initial and final weights are
/// plain rationals; stored transitions always have positive weight and there
/// is at most one transition per (src, dst, symbol).
class Pga {
public:
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return initial_.size(); }
    std::span<const Edge> edges() const { return edges_; }
    const Rational& initial(StateId q) const { return initial_.at(q); }
    const Rational& final_weight(StateId q) const { return final_.at(q); }
    const std::vector<Rational>& initial_weights() const { return initial_; }
    const std::vector<Rational>& final_weights() const { return final_; }

    /// Number of transitions with nonzero weight.
    std::size_t size() const { return edges_.size(); }
    /// Number of transitions carrying the given letter.
    std::size_t size(std::size_t symbol) const;
    std::size_t num_initial() const;
    std::size_t num_final() const;

    /// Same automaton over a larger alphabet (names are matched, not indices).
    /// Throws AlphabetMismatch if the current alphabet is not contained.
    Pga over(const Alphabet& superset) const;

    /// Structural equality on states, weights and the transition multiset.
    friend bool operator==(const Pga& a, const Pga& b);

private:
    friend class PgaBuilder;
    Alphabet alphabet_;
    std::vector<Edge> edges_;
    std::vector<Rational> initial_;
    std::vector<Rational> final_;
};

/// Mutable staging area for building a Pga.
class PgaBuilder {
public:
    explicit PgaBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
    /// Starts from a copy of an existing automaton.
    explicit PgaBuilder(const Pga& from);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return initial_.size(); }

    StateId add_state(Rational initial = 0, Rational final = 0);
    /// Adds states and returns the index of the first one.
    StateId add_states(std::size_t count);

    /// Zero weights are ignored; parallel transitions with the same symbol are
    /// merged by adding their weights. Throws InvalidWeight for negative weights.
    void add_edge(StateId src, StateId dst, const Rational& weight, Symbol symbol = std::nullopt);
    void set_initial(StateId q, Rational weight);
    void set_final(StateId q, Rational weight);
    const Rational& initial(StateId q) const { return initial_.at(q); }
    const Rational& final_weight(StateId q) const { return final_.at(q); }

    Pga build() const;

private:
    Alphabet alphabet_;
    std::vector<Edge> edges_;
    std::map<std::tuple<StateId, StateId, std::size_t>, std::size_t> index_;
    std::vector<Rational> initial_;
    std::vector<Rational> final_;
};

/// An accepting path with its weight and the Parikh image of its letters.
struct WeightedPath {
    std::vector<StateId> states;
    Rational weight;
    Valuation parikh;
};

struct ValidationReport {
    ExtRational mass;
    bool is_pga = false;
    std::vector<std::string> issues;
};

enum class MassMethod {
    automatic,       ///< elimination, falling back to the linear program
    elimination,     ///< exact block Gaussian elimination only
    linear_program,  ///< exact simplex only
};

/// Structural problems (out-of-range indices, zero or negative weights,
/// duplicated transitions). Empty for every automaton built by PgaBuilder.
std::vector<std::string> structural_issues(const Pga& a);

/// Total mass of the behavior, computed exactly.
ExtRational mass(const Pga& a, MassMethod method = MassMethod::automatic);

ValidationReport validate_pga(const Pga& a);

/// Keeps only states that lie on some accepting path.
Pga trim(const Pga& a);

/// Coefficient of sigma in the behavior. Throws InfiniteMass if that
/// coefficient diverges.
Rational coefficient(const Pga& a, const Valuation& sigma);

/// All coefficients sigma <= bound (componentwise), computed degree by degree.
/// Throws InfiniteMass if a coefficient diverges.
std::map<Valuation, Rational> coefficient_table(const Pga& a, const Valuation& bound);

/// Scales initial weights by 1/mass. Throws ZeroMass or InfiniteMass.
Pga normalize(const Pga& a);

/// Returns a copy with all initial weights multiplied by factor.
Pga scale_initial(const Pga& a, const Rational& factor);

/// Accepting paths with at most max_len states.
std::vector<WeightedPath> enumerate_paths(const Pga& a, std::size_t max_len);

/// Sums path weights by Parikh image.
std::map<Valuation, Rational> aggregate_paths(const std::vector<WeightedPath>& paths);

}  // namespace redip

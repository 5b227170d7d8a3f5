// Operational Markov chain semantics of loop-free programs, used as an
// independent ground truth for the automata pipeline.
#pragma once

#include "redip/pga.hpp"
#include "redip/program.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace redip {

/// A running configuration: the statements still to execute, head first.
struct Running {
    std::vector<ProgramPtr> continuation;
    Valuation sigma;
};
/// Successful termination in sigma.
struct Terminated {
    Valuation sigma;
};
/// An observation failed.
struct Violation {};

using Config = std::variant<Running, Terminated, Violation>;

struct StepDistribution {
    std::vector<std::pair<Rational, Config>> successors;
    /// Probability of sampled values beyond the truncation bound.
    Rational residual;
};

/// The successor distribution of a running configuration. Samples from a
/// distribution with infinite support are enumerated for n = 0..trunc;
/// finite supports are enumerated completely. Throws UnsupportedIid when the
/// head statement is an iid increment, and Error when c is not Running.
class SmallStep {
public:
    SmallStep(Alphabet alphabet, std::uint64_t trunc);

    StepDistribution step(const Config& c);

    const Alphabet& alphabet() const { return alphabet_; }

private:
    struct Table {
        std::vector<Rational> pmf;  // P(n) for n < pmf.size()
        Rational tail;
    };
    const Table& table(const DistSpec& d);

    Alphabet alphabet_;
    std::uint64_t trunc_;
    std::vector<std::pair<DistSpec, Table>> tables_;
};

StepDistribution step(const Config& c, const Alphabet& alphabet, std::uint64_t trunc);

using PointPrior = std::vector<std::pair<Valuation, Rational>>;

/// The support of a prior automaton with finitely many accepting paths.
/// Throws Error when the automaton has a useful cycle.
PointPrior finite_prior(const Pga& prior);

struct EnumerationReport {
    std::map<Valuation, Rational> terminal;  ///< lower bounds
    Rational violation;                      ///< lower bound
    Rational residual;                       ///< mass not accounted for
};

/// Exhaustive exploration of the configuration DAG from every prior point.
/// terminal + violation + residual equals the prior mass exactly.
EnumerationReport enumerate(const Program& p, const Alphabet& alphabet, const PointPrior& prior,
                            std::uint64_t trunc);

struct SampleReport {
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    std::map<Valuation, std::uint64_t> terminal;

    /// Fraction of non-violating runs whose final state satisfies pred.
    template <class Pred>
    double conditional_frequency(Pred pred) const {
        std::uint64_t hits = 0;
        for (const auto& [v, n] : terminal)
            if (pred(v)) hits += n;
        std::uint64_t ok = samples - violations;
        return ok == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(ok);
    }
};

/// n independent executions. The prior automaton is normalized and sampled
/// by a random walk; iid increments run as loops. The work is split into a
/// fixed number of chunks, each with a generator derived from (seed, chunk),
/// so the report depends only on the seed.
SampleReport mc_sample(const Program& p, const Pga& prior, std::uint64_t seed, std::uint64_t n);

struct Verdict {
    bool pass = false;
    /// Largest distance between an automaton value and the oracle's lower bound.
    Rational worst_discrepancy;
    Rational residual;
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

/// Checks the automaton pipeline against exhaustive enumeration: every
/// unnormalized posterior coefficient, the normalizing constant and the
/// violation mass must lie within [lower bound, lower bound + residual].
Verdict compare(const Program& p, const Pga& prior, std::uint64_t trunc);

}  // namespace redip

// Seeded random automata, guards and programs for property tests.
#pragma once

#include "redip/distributions.hpp"
#include "redip/guard.hpp"
#include "redip/pga.hpp"
#include "redip/program.hpp"

#include <random>
#include <set>

namespace gen {

using namespace redip;

inline Rational frac(std::uint64_t num, std::uint64_t den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
    }
    bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(xs.size())];
    }
    Rational probability() {
        static const std::vector<Rational> ps = {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                                 Rational(2, 3), Rational(3, 4), Rational(1)};
        return pick(ps);
    }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

struct PgaShape {
    std::size_t max_states = 4;
    std::size_t max_out = 3;
    /// Letters that may close a cycle; transitions with other labels
    /// (epsilon included) always go forward in state order.
    std::set<std::size_t> cycle_letters = {0, 1};
    /// Allow rows summing above one (possibly infinite mass).
    bool superstochastic = false;
};

/// A random automaton whose epsilon transitions form no cycle. Rows are
/// substochastic unless shape.superstochastic is set.
inline Pga random_pga(Random& rng, const Alphabet& alphabet, const PgaShape& shape = {}) {
    std::size_t n = rng.between(1, shape.max_states);
    std::uint64_t den = rng.pick(std::vector<std::uint64_t>{2, 3, 4, 6});
    PgaBuilder b(alphabet);
    b.add_states(n);
    // Initial weights: a random composition of at most one.
    std::uint64_t left = den;
    std::size_t first = rng.below(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t q = (first + k) % n;
        std::uint64_t take = k == 0 ? rng.between(1, left) : rng.between(0, left);
        left -= take;
        b.set_initial(q, frac(take, den));
    }
    for (std::size_t q = 0; q < n; ++q) {
        std::uint64_t budget = shape.superstochastic ? 2 * den : den;
        std::uint64_t f = rng.between(0, budget);
        budget -= f;
        b.set_final(q, frac(f, den));
        std::size_t out = rng.between(0, shape.max_out);
        for (std::size_t k = 0; k < out && budget > 0; ++k) {
            std::uint64_t w = rng.between(1, budget);
            budget -= w;
            std::size_t choice = rng.below(alphabet.size() + 1);
            Symbol symbol = choice == alphabet.size() ? Symbol{} : Symbol{choice};
            std::size_t dst = rng.below(n);
            bool may_cycle = symbol && shape.cycle_letters.count(*symbol);
            if (!may_cycle && dst <= q) {
                if (q + 1 >= n) continue;
                dst = rng.between(q + 1, n - 1);
            }
            b.add_edge(q, dst, frac(w, den), symbol);
        }
    }
    return b.build();
}

/// Random guard over the given variables: depth <= max_depth, constants <= max_const.
inline Guard random_guard(Random& rng, const std::vector<std::string>& vars, int max_depth,
                          std::uint64_t max_const = 4) {
    if (max_depth == 0 || rng.chance(0.35)) {
        const std::string& v = rng.pick(vars);
        switch (rng.below(6)) {
            case 0: {
                std::uint64_t m = rng.between(1, std::max<std::uint64_t>(max_const, 1));
                return mod_eq(v, m, rng.below(m));
            }
            case 1: return at_most(v, rng.between(0, max_const));
            case 2: return equal_to(v, rng.between(0, max_const));
            case 3: return at_least(v, rng.between(0, max_const));
            default: return less_than(v, rng.between(0, max_const));
        }
    }
    switch (rng.below(3)) {
        case 0: return !random_guard(rng, vars, max_depth - 1, max_const);
        case 1: return random_guard(rng, vars, max_depth - 1, max_const) && random_guard(rng, vars, max_depth - 1, max_const);
        default: return random_guard(rng, vars, max_depth - 1, max_const) || random_guard(rng, vars, max_depth - 1, max_const);
    }
}

inline DistSpec random_distribution(Random& rng, std::uint64_t max_const) {
    static const std::vector<Rational> ps = {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4)};
    switch (rng.below(6)) {
        case 0: return Geometric{rng.pick(ps)};
        case 1: return Bernoulli{rng.probability()};
        case 2: return Dirac{rng.between(0, max_const)};
        case 3: return Uniform{rng.between(1, std::max<std::uint64_t>(max_const, 1))};
        case 4: return Binomial{rng.between(0, max_const), rng.probability()};
        default: return NegBinomial{rng.between(1, max_const > 1 ? max_const - 1 : 1), rng.pick(ps)};
    }
}

struct ProgramShape {
    std::vector<std::string> vars = {"x", "y"};
    std::size_t max_size = 8;
    std::uint64_t max_const = 3;
    int guard_depth = 2;
    bool allow_iid = false;
};

/// A random program whose size (in the sense of program_size) is exactly size.
inline ProgramPtr random_program_of_size(Random& rng, const ProgramShape& s, std::size_t size) {
    if (size >= 2) {
        bool compound = size >= 3 && rng.chance(0.5);
        if (!compound) {
            std::size_t left = rng.between(1, size - 1);
            return make_seq(random_program_of_size(rng, s, left), random_program_of_size(rng, s, size - left));
        }
        std::size_t left = rng.between(1, size - 2);
        ProgramPtr a = random_program_of_size(rng, s, left);
        ProgramPtr b = random_program_of_size(rng, s, size - 1 - left);
        if (rng.chance(0.5)) return make_program(Choice{a, rng.probability(), b});
        return make_program(IfElse{random_guard(rng, s.vars, s.guard_depth, s.max_const), a, b});
    }
    const std::string& x = rng.pick(s.vars);
    switch (rng.below(s.allow_iid ? 8 : 7)) {
        case 0: return make_program(SetZero{x});
        case 1: return make_program(IncrConst{x, rng.between(0, s.max_const)});
        case 2:
        case 3: return make_program(IncrDist{x, random_distribution(rng, s.max_const)});
        case 4: return make_program(IncrVar{x, rng.pick(s.vars)});
        case 5: return make_program(Decr{x});
        case 6: return make_program(Observe{random_guard(rng, s.vars, s.guard_depth, s.max_const)});
        default: return make_program(IncrIid{x, random_distribution(rng, s.max_const), rng.pick(s.vars)});
    }
}

inline ProgramPtr random_program(Random& rng, const ProgramShape& s = {}) {
    return random_program_of_size(rng, s, rng.between(1, s.max_size));
}

}  // namespace gen

#include "redip/distributions.hpp"

#include "redip/constructions.hpp"
#include "redip/errors.hpp"
#include "redip/serialize.hpp"

namespace redip {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_probability(const Rational& p, const char* name) {
    if (p < 0 || p > 1) throw InvalidParameter(std::string(name) + ": probability " + to_string(p) + " outside [0,1]");
}

Pga geometric_pga(const Rational& p, std::size_t x, const Alphabet& alphabet) {
    PgaBuilder b(alphabet);
    StateId q = b.add_state(1, p);
    b.add_edge(q, q, 1 - p, x);
    return b.build();
}

Pga bernoulli_pga(const Rational& p, std::size_t x, const Alphabet& alphabet) {
    PgaBuilder b(alphabet);
    StateId s0 = b.add_state(1, 1 - p);
    StateId s1 = b.add_state(0, 1);
    b.add_edge(s0, s1, p, x);
    return b.build();
}

Pga chain_pga(std::uint64_t length, std::size_t x, const Alphabet& alphabet, const Rational& final_each, bool all_final) {
    PgaBuilder b(alphabet);
    StateId first = b.add_states(length + 1);
    b.set_initial(first, 1);
    for (std::uint64_t i = 0; i < length; ++i) b.add_edge(first + i, first + i + 1, 1, x);
    if (all_final) {
        for (std::uint64_t i = 0; i <= length; ++i) b.set_final(first + i, final_each);
    } else {
        b.set_final(first + length, final_each);
    }
    return b.build();
}

Pga repeat_concat(const Pga& unit, std::uint64_t times, std::size_t x, const Alphabet& alphabet) {
    if (times == 0) return chain_pga(0, x, alphabet, 1, false);
    Pga out = unit;
    for (std::uint64_t i = 1; i < times; ++i) out = concat(out, unit);
    return out;
}

Pga custom_pga(const std::string& path, const std::string& var, const Alphabet& alphabet) {
    Pga loaded = load_pga(path);
    if (loaded.alphabet().size() != 1)
        throw CustomNotNormalized("custom distribution " + path + " must be over exactly one variable");
    // Re-letter the single variable to var, then embed into the alphabet.
    PgaBuilder b(Alphabet({var}));
    b.add_states(loaded.num_states());
    for (StateId q = 0; q < loaded.num_states(); ++q) {
        b.set_initial(q, loaded.initial(q));
        b.set_final(q, loaded.final_weight(q));
    }
    for (const auto& e : loaded.edges()) b.add_edge(e.src, e.dst, e.weight, e.symbol);
    Pga relettered = b.build().over(alphabet);
    ExtRational m = mass(relettered);
    if (!(m == ExtRational(1L)))
        throw CustomMassNotOne("custom distribution " + path + " has mass " + to_string(m) + ", expected 1");
    return relettered;
}

}  // namespace

void check_parameters(const DistSpec& spec) {
    std::visit(overloaded{
                   [](const Geometric& d) {
                       check_probability(d.p, "geometric");
                       if (d.p == 0) throw InvalidParameter("geometric: p must be positive");
                   },
                   [](const Bernoulli& d) { check_probability(d.p, "bernoulli"); },
                   [](const Dirac&) {},
                   [](const Uniform& d) {
                       if (d.m == 0) throw InvalidParameter("uniform: m must be at least 1");
                   },
                   [](const Binomial& d) { check_probability(d.p, "binomial"); },
                   [](const NegBinomial& d) {
                       check_probability(d.p, "negbinomial");
                       if (d.p == 0 && d.n > 0) throw InvalidParameter("negbinomial: p must be positive");
                   },
                   [](const Custom&) {},
               },
               spec);
}

Pga build_dist_pga(const DistSpec& spec, const std::string& var, const Alphabet& alphabet) {
    check_parameters(spec);
    std::size_t x = alphabet.index_of(var);
    return std::visit(
        overloaded{
            [&](const Geometric& d) { return geometric_pga(d.p, x, alphabet); },
            [&](const Bernoulli& d) { return bernoulli_pga(d.p, x, alphabet); },
            [&](const Dirac& d) { return chain_pga(d.n, x, alphabet, 1, false); },
            [&](const Uniform& d) { return chain_pga(d.m - 1, x, alphabet, Rational(1, d.m), true); },
            [&](const Binomial& d) { return repeat_concat(bernoulli_pga(d.p, x, alphabet), d.n, x, alphabet); },
            [&](const NegBinomial& d) { return repeat_concat(geometric_pga(d.p, x, alphabet), d.n, x, alphabet); },
            [&](const Custom& d) { return custom_pga(d.path, var, alphabet); },
        },
        spec);
}

std::string to_string(const DistSpec& spec) {
    return std::visit(
        overloaded{
            [](const Geometric& d) { return "geometric(" + to_string(d.p) + ")"; },
            [](const Bernoulli& d) { return "bernoulli(" + to_string(d.p) + ")"; },
            [](const Dirac& d) { return "dirac(" + std::to_string(d.n) + ")"; },
            [](const Uniform& d) { return "uniform(" + std::to_string(d.m) + ")"; },
            [](const Binomial& d) { return "binomial(" + std::to_string(d.n) + ", " + to_string(d.p) + ")"; },
            [](const NegBinomial& d) { return "negbinomial(" + std::to_string(d.n) + ", " + to_string(d.p) + ")"; },
            [](const Custom& d) { return "custom(\"" + d.path + "\")"; },
        },
        spec);
}

bool finite_support(const DistSpec& spec) {
    return std::visit(overloaded{
                          [](const Geometric& d) { return d.p == 1; },
                          [](const NegBinomial& d) { return d.n == 0 || d.p == 1; },
                          [](const Custom&) { return false; },
                          [](const auto&) { return true; },
                      },
                      spec);
}

}  // namespace redip

// Built-in distributions over the naturals as automata.
#pragma once

#include "redip/pga.hpp"

#include <cstdint>
#include <string>
#include <variant>

namespace redip {

struct Geometric {
    Rational p;  ///< success probability; pmf (1-p)^k p
    friend bool operator==(const Geometric&, const Geometric&) = default;
};
struct Bernoulli {
    Rational p;
    friend bool operator==(const Bernoulli&, const Bernoulli&) = default;
};
struct Dirac {
    std::uint64_t n;
    friend bool operator==(const Dirac&, const Dirac&) = default;
};
struct Uniform {
    std::uint64_t m;  ///< uniform on 0..m-1
    friend bool operator==(const Uniform&, const Uniform&) = default;
};
struct Binomial {
    std::uint64_t n;
    Rational p;
    friend bool operator==(const Binomial&, const Binomial&) = default;
};
/// Number of failures before the n-th success.
struct NegBinomial {
    std::uint64_t n;
    Rational p;
    friend bool operator==(const NegBinomial&, const NegBinomial&) = default;
};
/// A single-variable automaton loaded from a JSON file.
struct Custom {
    std::string path;
    friend bool operator==(const Custom&, const Custom&) = default;
};

using DistSpec = std::variant<Geometric, Bernoulli, Dirac, Uniform, Binomial, NegBinomial, Custom>;

/// Throws InvalidParameter when the parameters do not describe a proper
/// distribution (p outside [0,1], geometric with p = 0, uniform with m = 0).
void check_parameters(const DistSpec& spec);

/// Automaton over alphabet whose var-marginal is the given distribution.
/// Throws InvalidParameter, CustomMassNotOne, CustomNotNormalized and, for
/// custom files, the errors of deserialize.
Pga build_dist_pga(const DistSpec& spec, const std::string& var, const Alphabet& alphabet);

/// Concrete syntax, e.g. "geometric(1/2)", "binomial(3, 1/4)".
std::string to_string(const DistSpec& spec);

/// Whether the distribution has finite support.
bool finite_support(const DistSpec& spec);

}  // namespace redip

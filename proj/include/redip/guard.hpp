// Rectangular guards: Boolean combinations of threshold and congruence atoms.
#pragma once

#include "redip/alphabet.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>

namespace redip {

class Guard {
public:
    /// var < bound
    struct LessThan {
        std::string var;
        std::uint64_t bound;
        friend bool operator==(const LessThan&, const LessThan&) = default;
    };
    /// var mod modulus == residue, with modulus > residue
    struct ModEq {
        std::string var;
        std::uint64_t modulus;
        std::uint64_t residue;
        friend bool operator==(const ModEq&, const ModEq&) = default;
    };
    struct And;
    struct Not;
    using Node = std::variant<LessThan, ModEq, And, Not>;

    const Node& node() const;

    friend bool operator==(const Guard& a, const Guard& b);

private:
    struct Holder;
    explicit Guard(std::shared_ptr<const Holder> n) : node_(std::move(n)) {}
    friend Guard less_than(std::string, std::uint64_t);
    friend Guard mod_eq(std::string, std::uint64_t, std::uint64_t);
    friend Guard operator&&(const Guard&, const Guard&);
    friend Guard operator!(const Guard&);

    std::shared_ptr<const Holder> node_;
};

struct Guard::And {
    Guard lhs;
    Guard rhs;
};

struct Guard::Not {
    Guard operand;
};

struct Guard::Holder {
    Node node;
};

inline const Guard::Node& Guard::node() const { return node_->node; }

Guard less_than(std::string var, std::uint64_t bound);
/// Throws InvalidParameter unless modulus > residue.
Guard mod_eq(std::string var, std::uint64_t modulus, std::uint64_t residue);
Guard operator&&(const Guard& a, const Guard& b);
Guard operator!(const Guard& g);

// Derived forms, expressed through the two atoms, conjunction and negation.
Guard at_most(std::string var, std::uint64_t n);       // var <= n
Guard equal_to(std::string var, std::uint64_t n);      // var == n
Guard not_equal_to(std::string var, std::uint64_t n);  // var != n
Guard greater_than(std::string var, std::uint64_t n);  // var > n
Guard at_least(std::string var, std::uint64_t n);      // var >= n
Guard operator||(const Guard& a, const Guard& b);
/// Constant guards, written over the first variable of the alphabet.
Guard guard_true(const Alphabet& alphabet);
Guard guard_false(const Alphabet& alphabet);

/// sigma |= phi. Throws UnknownVariable for variables outside the alphabet.
bool guard_satisfies(const Alphabet& alphabet, const Valuation& sigma, const Guard& phi);

/// Atoms count 1, negation keeps the size, conjunction adds.
std::size_t guard_size(const Guard& phi);
/// Largest integer constant (bounds, moduli and residues).
std::uint64_t max_constant(const Guard& phi);
std::set<std::string> variables(const Guard& phi);

/// Core syntax: "x < 3", "x % 2 == 1", "not (..)", "(.. and ..)".
std::string to_string(const Guard& phi);

}  // namespace redip

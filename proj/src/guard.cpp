#include "redip/guard.hpp"

#include "redip/errors.hpp"

#include <algorithm>

namespace redip {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Guard less_than(std::string var, std::uint64_t bound) {
    return Guard(std::make_shared<const Guard::Holder>(Guard::Holder{Guard::LessThan{std::move(var), bound}}));
}

Guard mod_eq(std::string var, std::uint64_t modulus, std::uint64_t residue) {
    if (modulus <= residue) throw InvalidParameter("congruence requires modulus > residue");
    return Guard(std::make_shared<const Guard::Holder>(Guard::Holder{Guard::ModEq{std::move(var), modulus, residue}}));
}

Guard operator&&(const Guard& a, const Guard& b) {
    return Guard(std::make_shared<const Guard::Holder>(Guard::Holder{Guard::And{a, b}}));
}

Guard operator!(const Guard& g) { return Guard(std::make_shared<const Guard::Holder>(Guard::Holder{Guard::Not{g}})); }

bool operator==(const Guard& a, const Guard& b) {
    if (a.node_ == b.node_) return true;
    return std::visit(
        overloaded{
            [](const Guard::LessThan& x, const Guard::LessThan& y) { return x == y; },
            [](const Guard::ModEq& x, const Guard::ModEq& y) { return x == y; },
            [](const Guard::And& x, const Guard::And& y) { return x.lhs == y.lhs && x.rhs == y.rhs; },
            [](const Guard::Not& x, const Guard::Not& y) { return x.operand == y.operand; },
            [](const auto&, const auto&) { return false; },
        },
        a.node(), b.node());
}

Guard at_most(std::string var, std::uint64_t n) { return less_than(std::move(var), n + 1); }

Guard equal_to(std::string var, std::uint64_t n) { return less_than(var, n + 1) && !less_than(var, n); }

Guard not_equal_to(std::string var, std::uint64_t n) { return !equal_to(std::move(var), n); }

Guard greater_than(std::string var, std::uint64_t n) { return !at_most(std::move(var), n); }

Guard at_least(std::string var, std::uint64_t n) { return !less_than(std::move(var), n); }

Guard operator||(const Guard& a, const Guard& b) { return !(!a && !b); }

Guard guard_true(const Alphabet& alphabet) { return !guard_false(alphabet); }

Guard guard_false(const Alphabet& alphabet) {
    if (alphabet.empty()) throw UnknownVariable("constant guard needs a non-empty alphabet");
    return less_than(alphabet.name(0), 0);
}

bool guard_satisfies(const Alphabet& alphabet, const Valuation& sigma, const Guard& phi) {
    return std::visit(
        overloaded{
            [&](const Guard::LessThan& g) { return sigma[alphabet.index_of(g.var)] < g.bound; },
            [&](const Guard::ModEq& g) { return sigma[alphabet.index_of(g.var)] % g.modulus == g.residue; },
            [&](const Guard::And& g) {
                return guard_satisfies(alphabet, sigma, g.lhs) && guard_satisfies(alphabet, sigma, g.rhs);
            },
            [&](const Guard::Not& g) { return !guard_satisfies(alphabet, sigma, g.operand); },
        },
        phi.node());
}

std::size_t guard_size(const Guard& phi) {
    return std::visit(overloaded{
                          [](const Guard::LessThan&) -> std::size_t { return 1; },
                          [](const Guard::ModEq&) -> std::size_t { return 1; },
                          [](const Guard::And& g) { return guard_size(g.lhs) + guard_size(g.rhs); },
                          [](const Guard::Not& g) { return guard_size(g.operand); },
                      },
                      phi.node());
}

std::uint64_t max_constant(const Guard& phi) {
    return std::visit(overloaded{
                          [](const Guard::LessThan& g) { return g.bound; },
                          [](const Guard::ModEq& g) { return std::max(g.modulus, g.residue); },
                          [](const Guard::And& g) { return std::max(max_constant(g.lhs), max_constant(g.rhs)); },
                          [](const Guard::Not& g) { return max_constant(g.operand); },
                      },
                      phi.node());
}

std::set<std::string> variables(const Guard& phi) {
    return std::visit(overloaded{
                          [](const Guard::LessThan& g) { return std::set<std::string>{g.var}; },
                          [](const Guard::ModEq& g) { return std::set<std::string>{g.var}; },
                          [](const Guard::And& g) {
                              auto s = variables(g.lhs);
                              s.merge(variables(g.rhs));
                              return s;
                          },
                          [](const Guard::Not& g) { return variables(g.operand); },
                      },
                      phi.node());
}

std::string to_string(const Guard& phi) {
    return std::visit(
        overloaded{
            [](const Guard::LessThan& g) { return g.var + " < " + std::to_string(g.bound); },
            [](const Guard::ModEq& g) {
                return g.var + " % " + std::to_string(g.modulus) + " == " + std::to_string(g.residue);
            },
            [](const Guard::And& g) { return "(" + to_string(g.lhs) + " and " + to_string(g.rhs) + ")"; },
            [](const Guard::Not& g) { return "not (" + to_string(g.operand) + ")"; },
        },
        phi.node());
}

}  // namespace redip

#include "redip/program.hpp"

#include <algorithm>
#include <sstream>

namespace redip {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool same(const ProgramPtr& a, const ProgramPtr& b) { return a == b || (a && b && *a == *b); }

void print(std::ostream& out, const Program& p);

void print_block(std::ostream& out, const Program& p) {
    out << "{";
    print(out, p);
    out << "}";
}

void print(std::ostream& out, const Program& p) {
    std::visit(overloaded{
                   [&](const SetZero& s) { out << s.var << " := 0"; },
                   [&](const IncrConst& s) { out << s.var << " += " << s.n; },
                   [&](const IncrDist& s) { out << s.var << " += " << to_string(s.dist); },
                   [&](const IncrVar& s) { out << s.var << " += " << s.source; },
                   [&](const IncrIid& s) { out << s.var << " += iid(" << to_string(s.dist) << ", " << s.count << ")"; },
                   [&](const Decr& s) { out << s.var << "--"; },
                   [&](const Observe& s) { out << "observe(" << to_string(s.guard) << ")"; },
                   [&](const Choice& s) {
                       print_block(out, *s.lhs);
                       out << " [" << to_string(s.p) << "] ";
                       print_block(out, *s.rhs);
                   },
                   [&](const IfElse& s) {
                       out << "if (" << to_string(s.guard) << ") ";
                       print_block(out, *s.then_branch);
                       out << " else ";
                       print_block(out, *s.else_branch);
                   },
                   [&](const Seq& s) {
                       if (std::holds_alternative<Seq>(s.first->node))
                           print_block(out, *s.first);
                       else
                           print(out, *s.first);
                       out << "; ";
                       print(out, *s.second);
                   },
               },
               p.node);
}

template <class F>
void for_each_node(const Program& p, F&& f) {
    f(p);
    std::visit(overloaded{
                   [&](const Choice& s) {
                       for_each_node(*s.lhs, f);
                       for_each_node(*s.rhs, f);
                   },
                   [&](const IfElse& s) {
                       for_each_node(*s.then_branch, f);
                       for_each_node(*s.else_branch, f);
                   },
                   [&](const Seq& s) {
                       for_each_node(*s.first, f);
                       for_each_node(*s.second, f);
                   },
                   [](const auto&) {},
               },
               p.node);
}

}  // namespace

bool operator==(const Program& a, const Program& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const SetZero& x) { return x.var == std::get<SetZero>(b.node).var; },
            [&](const IncrConst& x) {
                const auto& y = std::get<IncrConst>(b.node);
                return x.var == y.var && x.n == y.n;
            },
            [&](const IncrDist& x) {
                const auto& y = std::get<IncrDist>(b.node);
                return x.var == y.var && x.dist == y.dist;
            },
            [&](const IncrVar& x) {
                const auto& y = std::get<IncrVar>(b.node);
                return x.var == y.var && x.source == y.source;
            },
            [&](const IncrIid& x) {
                const auto& y = std::get<IncrIid>(b.node);
                return x.var == y.var && x.dist == y.dist && x.count == y.count;
            },
            [&](const Decr& x) { return x.var == std::get<Decr>(b.node).var; },
            [&](const Observe& x) { return x.guard == std::get<Observe>(b.node).guard; },
            [&](const Choice& x) {
                const auto& y = std::get<Choice>(b.node);
                return x.p == y.p && same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
            },
            [&](const IfElse& x) {
                const auto& y = std::get<IfElse>(b.node);
                return x.guard == y.guard && same(x.then_branch, y.then_branch) &&
                       same(x.else_branch, y.else_branch);
            },
            [&](const Seq& x) {
                const auto& y = std::get<Seq>(b.node);
                return same(x.first, y.first) && same(x.second, y.second);
            },
        },
        a.node);
}

ProgramPtr make_program(Program::Node node, SourceSpan span) {
    return std::make_shared<const Program>(Program{std::move(node), span});
}

ProgramPtr make_seq(ProgramPtr first, ProgramPtr second, SourceSpan span) {
    return make_program(Seq{std::move(first), std::move(second)}, span);
}

std::string pretty(const Program& p) {
    std::ostringstream out;
    print(out, p);
    return out.str();
}

std::size_t program_size(const Program& p) {
    return std::visit(overloaded{
                          [](const Choice& s) { return 1 + program_size(*s.lhs) + program_size(*s.rhs); },
                          [](const IfElse& s) {
                              return 1 + program_size(*s.then_branch) + program_size(*s.else_branch);
                          },
                          [](const Seq& s) { return program_size(*s.first) + program_size(*s.second); },
                          [](const auto&) { return std::size_t{1}; },
                      },
                      p.node);
}

std::uint64_t max_constant(const Program& p) {
    std::uint64_t best = 0;
    for_each_node(p, [&](const Program& q) {
        if (const auto* s = std::get_if<IncrConst>(&q.node)) best = std::max(best, s->n);
        if (const auto* s = std::get_if<Observe>(&q.node)) best = std::max(best, max_constant(s->guard));
        if (const auto* s = std::get_if<IfElse>(&q.node)) best = std::max(best, max_constant(s->guard));
    });
    return best;
}

std::size_t max_guard_size(const Program& p) {
    std::size_t best = 0;
    for_each_node(p, [&](const Program& q) {
        if (const auto* s = std::get_if<Observe>(&q.node)) best = std::max(best, guard_size(s->guard));
        if (const auto* s = std::get_if<IfElse>(&q.node)) best = std::max(best, guard_size(s->guard));
    });
    return best;
}

bool contains_iid(const Program& p) {
    bool found = false;
    for_each_node(p, [&](const Program& q) { found = found || std::holds_alternative<IncrIid>(q.node); });
    return found;
}

std::vector<DistSpec> distributions(const Program& p) {
    std::vector<DistSpec> out;
    for_each_node(p, [&](const Program& q) {
        if (const auto* s = std::get_if<IncrDist>(&q.node)) out.push_back(s->dist);
        if (const auto* s = std::get_if<IncrIid>(&q.node)) out.push_back(s->dist);
    });
    return out;
}

}  // namespace redip

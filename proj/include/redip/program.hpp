// Abstract syntax of loop-free ReDiP programs after desugaring.
#pragma once

#include "redip/distributions.hpp"
#include "redip/guard.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace redip {

/// 1-based position of the first character of a construct; 0 when synthetic.
struct SourceSpan {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Program;
using ProgramPtr = std::shared_ptr<const Program>;

struct SetZero {
    std::string var;
};
struct IncrConst {
    std::string var;
    std::uint64_t n;
};
struct IncrDist {
    std::string var;
    DistSpec dist;
};
/// var += source
struct IncrVar {
    std::string var;
    std::string source;
};
/// var += iid(dist, count): the sum of count independent samples.
struct IncrIid {
    std::string var;
    DistSpec dist;
    std::string count;
};
/// var := var monus 1
struct Decr {
    std::string var;
};
struct Observe {
    Guard guard;
};
/// {lhs} [p] {rhs}
struct Choice {
    ProgramPtr lhs;
    Rational p;
    ProgramPtr rhs;
};
struct IfElse {
    Guard guard;
    ProgramPtr then_branch;
    ProgramPtr else_branch;
};
struct Seq {
    ProgramPtr first;
    ProgramPtr second;
};

struct Program {
    using Node = std::variant<SetZero, IncrConst, IncrDist, IncrVar, IncrIid, Decr, Observe, Choice, IfElse, Seq>;
    Node node;
    SourceSpan span;
};

/// Deep structural equality; source spans are ignored.
bool operator==(const Program& a, const Program& b);

ProgramPtr make_program(Program::Node node, SourceSpan span = {});
ProgramPtr make_seq(ProgramPtr first, ProgramPtr second, SourceSpan span = {});

/// Concrete syntax accepted by parse. Left-nested sequences are wrapped in
/// braces so that parsing the output yields the same tree.
std::string pretty(const Program& p);

/// Base statements count 1, sequencing adds, Choice and IfElse add 1.
std::size_t program_size(const Program& p);

/// Largest integer constant of an increment or a guard (0 if none).
std::uint64_t max_constant(const Program& p);

/// Size of the largest guard (0 if the program has none).
std::size_t max_guard_size(const Program& p);

bool contains_iid(const Program& p);

/// Distributions sampled by IncrDist and IncrIid statements.
std::vector<DistSpec> distributions(const Program& p);

}  // namespace redip

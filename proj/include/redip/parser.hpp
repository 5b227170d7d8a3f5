// Concrete syntax of ReDiP and its desugaring into the core program tree.
#pragma once

#include "redip/program.hpp"

#include <filesystem>
#include <string_view>

namespace redip {

struct ParsedProgram {
    ProgramPtr program;
    /// Every variable of the program in order of first occurrence. A program
    /// that mentions no variable is given the alphabet {x}.
    Alphabet alphabet;
};

/// Parses and desugars a program. Relative paths of custom distributions are
/// resolved against base_dir. Throws SyntaxError, GuardConstraintError and
/// ProbabilityRangeError, all carrying the offending line and column.
ParsedProgram parse(std::string_view source, const std::filesystem::path& base_dir = {});

/// Parses a stand-alone guard such as "r >= 1 and x % 2 == 0" over alphabet.
/// Throws SyntaxError, GuardConstraintError and UnknownVariable.
Guard parse_guard(std::string_view text, const Alphabet& alphabet);

}  // namespace redip

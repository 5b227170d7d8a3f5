// JSON interchange format and Graphviz export for automata.
#pragma once

#include "redip/pga.hpp"

#include <string>

namespace redip {

/// {"alphabet": [...], "states": n, "edges": [...], "initial": {...}, "final": {...}}
/// with every weight written as an exact "num/den" string.
std::string serialize(const Pga& a);

/// Inverse of serialize. Throws ParseError for malformed or out-of-range
/// input and InvalidWeight for negative or malformed weights.
Pga deserialize(const std::string& text);

/// Reads and deserializes a file. Throws IoError if it cannot be read.
Pga load_pga(const std::string& path);

/// Graphviz digraph with edges labelled
/// "r·X" or "r", initial and final weights as dangling arrows that carry a
/// label only when the weight differs from 1.
std::string export_dot(const Pga& a);

}  // namespace redip

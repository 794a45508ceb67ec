#pragma once

// Text formats: graph6 (bit-exact per the standard encoding), whitespace
// edge lists, and DOT output for rendering.

#include <string>
#include <string_view>

#include "treelab/tree.hpp"

namespace treelab {

struct ParseError : TreeError {
    using TreeError::TreeError;
};

// Standard graph6 line for the tree (no trailing newline, no ">>graph6<<"
// header). Supports n up to 258047; the order cap keeps us far below.
std::string to_graph6(const Tree& t);

// Parses a graph6 line (optional ">>graph6<<" header tolerated) and validates
// that the graph is a tree; tree validation errors propagate.
Tree from_graph6(std::string_view s);

// One "u v" pair per line; blank lines and '#' comments allowed.
Tree parse_edge_list_text(std::string_view text);
std::string to_edge_list_text(const Tree& t);

std::string to_dot(const Tree& t);

}  // namespace treelab

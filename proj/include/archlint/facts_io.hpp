#pragma once

#include <string>
#include <string_view>

#include "archlint/access_graph.hpp"

namespace archlint {

/// Reads the line-oriented facts format:
///
///   % comment
///   node('p.A', class).
///   contains('p', 'p.A').
///   isa('p.S', 'p.T').
///   virtual_contains('layer', 'p.A').
///   uses('p.A.m()', 'p.B').
///   uses('p.A.m()', 'p.B', 'src/A.jl', 12).
///
/// Clause order is irrelevant; edge endpoints may be declared by a node
/// clause anywhere in the document (a missing one is a DanglingReference).
AccessGraph parse_facts(std::string_view text);

/// Canonical serialization: clauses sorted by (node, contains, isa,
/// virtual_contains, uses) then lexicographically, one per line. Equal graphs
/// produce byte-identical output, and the output re-parses to an isomorphic
/// graph.
std::string emit_facts(const AccessGraph& graph);

} // namespace archlint

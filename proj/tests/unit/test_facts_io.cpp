#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <vector>

#include "archlint/facts_io.hpp"
#include "support/random_gen.hpp"
#include "support/test_util.hpp"

using namespace archlint;
using test_support::thrown_code;

namespace {

EntityId id(const std::string& s) { return EntityId(s); }

AccessGraph fixture() {
  AccessGraph g;
  g.add_node(id("p"), EntityKind::Package);
  g.add_node(id("p.A"), EntityKind::Class);
  g.add_node(id("p.B"), EntityKind::Class);
  g.add_node(id("p.I"), EntityKind::Interface);
  g.add_node(id("p.A.m()"), EntityKind::Method);
  g.add_node(id("p.B.f"), EntityKind::Field);
  g.add_node(id("p.I.g()"), EntityKind::Method);
  g.add_node(id("Ext"), EntityKind::Unresolved);
  g.add_node(id("V"), EntityKind::Virtual);
  g.add_contains(id("p"), id("p.A"));
  g.add_contains(id("p"), id("p.B"));
  g.add_contains(id("p"), id("p.I"));
  g.add_contains(id("p.A"), id("p.A.m()"));
  g.add_contains(id("p.B"), id("p.B.f"));
  g.add_contains(id("p.I"), id("p.I.g()"));
  g.add_isa(id("p.A"), id("p.I"));
  g.add_virtual_contains(id("V"), id("p.A.m()"));
  g.add_virtual_contains(id("V"), id("p.B"));
  g.add_uses(id("p.A.m()"), id("p.B"), SourceLocation{"a.jl", 3, 5});
  g.add_uses(id("p.A.m()"), id("p.B.f"), SourceLocation{"a.jl", 4, 9});
  g.add_uses(id("p.B.f"), id("Ext"));
  return g;
}

const char* const kFixtureFacts = "node('Ext', unresolved).\n"
                                  "node('V', virtual).\n"
                                  "node('p', package).\n"
                                  "node('p.A', class).\n"
                                  "node('p.A.m()', method).\n"
                                  "node('p.B', class).\n"
                                  "node('p.B.f', field).\n"
                                  "node('p.I', interface).\n"
                                  "node('p.I.g()', method).\n"
                                  "contains('p', 'p.A').\n"
                                  "contains('p', 'p.B').\n"
                                  "contains('p', 'p.I').\n"
                                  "contains('p.A', 'p.A.m()').\n"
                                  "contains('p.B', 'p.B.f').\n"
                                  "contains('p.I', 'p.I.g()').\n"
                                  "isa('p.A', 'p.I').\n"
                                  "virtual_contains('V', 'p.A.m()').\n"
                                  "virtual_contains('V', 'p.B').\n"
                                  "uses('p.A.m()', 'p.B', 'a.jl', 3).\n"
                                  "uses('p.A.m()', 'p.B.f', 'a.jl', 4).\n"
                                  "uses('p.B.f', 'Ext').\n";

} // namespace

TEST_SUITE("facts_io") {

TEST_CASE("emit produces the frozen canonical form") {
  CHECK(emit_facts(fixture()) == kFixtureFacts);
}

TEST_CASE("parse reads the canonical form back") {
  const AccessGraph g = parse_facts(kFixtureFacts);
  CHECK(g.node_count() == 9);
  CHECK(g.contains_count() == 6);
  CHECK(g.isa_count() == 1);
  CHECK(g.virtual_contains_count() == 2);
  CHECK(g.uses_count() == 3);
  CHECK(g.kind_of(id("p")) == EntityKind::Package);
  CHECK(g.kind_of(id("p.A.m()")) == EntityKind::Method);
  CHECK(g.kind_of(id("V")) == EntityKind::Virtual);
  CHECK(g.kind_of(id("Ext")) == EntityKind::Unresolved);
  const auto& occurrences = g.uses().at({id("p.A.m()"), id("p.B")});
  REQUIRE(occurrences.size() == 1);
  CHECK(occurrences[0] == SourceLocation{"a.jl", 3, 1});
  CHECK(g.uses().at({id("p.B.f"), id("Ext")}).empty());
}

TEST_CASE("clause order is irrelevant, including edges before nodes") {
  std::vector<std::string> lines;
  std::istringstream in(kFixtureFacts);
  for (std::string line; std::getline(in, line);)
    lines.push_back(line);
  std::mt19937_64 rng(7);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled;
    for (const std::string& line : lines)
      shuffled += line + "\n";
    CHECK(emit_facts(parse_facts(shuffled)) == kFixtureFacts);
  }
}

TEST_CASE("comments, blank lines and loose whitespace are tolerated") {
  const char* text = "% access facts\n"
                     "\n"
                     "node('p', package).   % trailing comment\n"
                     "  node( 'p.A' ,  class ) .\n"
                     "\tcontains('p',\n"
                     "          'p.A').\n";
  const AccessGraph g = parse_facts(text);
  CHECK(g.node_count() == 2);
  CHECK(g.contains_count() == 1);
  CHECK(emit_facts(parse_facts(emit_facts(g))) == emit_facts(g));
}

TEST_CASE("quoted atoms unescape backslash sequences") {
  const AccessGraph g = parse_facts("node('a\\\\b', class).\n");
  CHECK(g.has_node(id("a\\b")));
  // and emit re-escapes, closing the loop
  CHECK(emit_facts(g) == "node('a\\\\b', class).\n");
}

TEST_CASE("duplicate clauses collapse like direct graph construction") {
  const char* text = "node('p', package).\n"
                     "node('p', package).\n"
                     "node('p.A', class).\n"
                     "contains('p', 'p.A').\n"
                     "contains('p', 'p.A').\n"
                     "uses('p.A', 'p', 'a.jl', 2).\n"
                     "uses('p.A', 'p', 'a.jl', 1).\n";
  const AccessGraph g = parse_facts(text);
  CHECK(g.node_count() == 2);
  CHECK(g.contains_count() == 1);
  CHECK(g.uses_count() == 1);
  CHECK(g.uses().at({id("p.A"), id("p")}).size() == 2);
  // emit sorts the occurrence list
  CHECK(emit_facts(g) == "node('p', package).\n"
                         "node('p.A', class).\n"
                         "contains('p', 'p.A').\n"
                         "uses('p.A', 'p', 'a.jl', 1).\n"
                         "uses('p.A', 'p', 'a.jl', 2).\n");
}

TEST_CASE("structured errors") {
  // edge endpoints must have a node clause somewhere in the document
  CHECK(thrown_code([] {
          parse_facts("node('a', package).\ncontains('a', 'b').\n");
        }) == errc::dangling_reference);
  CHECK(thrown_code([] { parse_facts("uses('a', 'b').\n"); }) ==
        errc::dangling_reference);
  // graph invariant violations surface unchanged
  CHECK(thrown_code([] {
          parse_facts("node('a', class).\nnode('a', package).\n");
        }) == errc::kind_conflict);
  CHECK(thrown_code([] {
          parse_facts("node('a', class).\nuses('a', 'a').\n");
        }) == errc::self_use);
  CHECK(thrown_code([] {
          parse_facts("node('V', virtual).\nnode('a', class).\n"
                      "contains('V', 'a').\n");
        }) == errc::invalid_edge);
  CHECK(thrown_code([] { parse_facts("node('.bad', class).\n"); }) ==
        errc::invalid_entity_id);
}

TEST_CASE("syntax errors") {
  CHECK(thrown_code([] { parse_facts("node('a', class)\n"); }) ==
        errc::syntax_error); // missing period
  CHECK(thrown_code([] { parse_facts("node('a', klass).\n"); }) ==
        errc::syntax_error); // unknown kind word
  CHECK(thrown_code([] { parse_facts("node(a, class).\n"); }) ==
        errc::syntax_error); // id must be quoted
  CHECK(thrown_code([] { parse_facts("node('a').\n"); }) ==
        errc::syntax_error); // wrong arity
  CHECK(thrown_code([] { parse_facts("node().\n"); }) == errc::syntax_error);
  CHECK(thrown_code([] { parse_facts("blob('a', 'b').\n"); }) ==
        errc::syntax_error); // unknown functor
  CHECK(thrown_code([] { parse_facts("node('a, class).\n"); }) ==
        errc::syntax_error); // unterminated atom
  CHECK(thrown_code([] { parse_facts("node('a', class). garbage\n"); }) ==
        errc::syntax_error);
  CHECK(thrown_code([] {
          parse_facts("node('a', class).\nnode('b', class).\n"
                      "uses('a', 'b', 'f.jl', 0).\n");
        }) == errc::syntax_error); // line numbers are 1-based
  CHECK(thrown_code([] {
          parse_facts("node('a', class).\nnode('b', class).\n"
                      "uses('a', 'b', 'f.jl', -3).\n");
        }) == errc::syntax_error);
  CHECK(thrown_code([] {
          parse_facts("node('a', class).\nnode('b', class).\n"
                      "uses('a', 'b', 'f.jl', 'x').\n");
        }) == errc::syntax_error); // line must be an integer
  // error messages carry the offending line number
  try {
    parse_facts("node('a', class).\nnode('b', klass).\n");
    FAIL("expected syntax error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("empty input yields an empty graph") {
  const AccessGraph g = parse_facts("");
  CHECK(g.node_count() == 0);
  CHECK(emit_facts(g).empty());
  CHECK(emit_facts(parse_facts("% only a comment\n\n")).empty());
}

TEST_CASE("random graphs round-trip byte-identically") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 100; ++round) {
    const AccessGraph g = test_support::random_graph(rng);
    const std::string once = emit_facts(g);
    const AccessGraph reparsed = parse_facts(once);
    CHECK(emit_facts(reparsed) == once);
    CHECK(reparsed.node_count() == g.node_count());
    CHECK(reparsed.uses_count() == g.uses_count());
    CHECK(reparsed.contains_count() == g.contains_count());
    CHECK(reparsed.isa_count() == g.isa_count());
    CHECK(reparsed.virtual_contains_count() == g.virtual_contains_count());
  }
}

TEST_CASE("columns are not part of the wire format") {
  AccessGraph g;
  g.add_node(id("a"), EntityKind::Class);
  g.add_node(id("b"), EntityKind::Class);
  g.add_uses(id("a"), id("b"), SourceLocation{"f.jl", 7, 31});
  const std::string text = emit_facts(g);
  CHECK(text.find("uses('a', 'b', 'f.jl', 7).") != std::string::npos);
  const AccessGraph reparsed = parse_facts(text);
  CHECK(reparsed.uses().at({id("a"), id("b")})[0] == SourceLocation{"f.jl", 7, 1});
  CHECK(emit_facts(reparsed) == text);
}

} // TEST_SUITE

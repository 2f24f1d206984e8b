#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "archlint/constraint/eval.hpp"
#include "archlint/constraint/parser.hpp"
#include "archlint/javalite/parser.hpp"
#include "archlint/javalite/resolver.hpp"
#include "archlint/report.hpp"
#include "support/dot_check.hpp"
#include "support/random_gen.hpp"
#include "support/test_util.hpp"

using namespace archlint;
using test_support::check_dot;
using test_support::data_dir;
using test_support::DotStats;
using test_support::read_file;

namespace {

EntityId id(const std::string& s) { return EntityId(s); }

AccessGraph fig1_graph() {
  std::vector<javalite::CompilationUnit> units;
  for (const char* name : {"ImageDoc.jl", "ImageMgr.jl"})
    units.push_back(javalite::parse_source(std::string("fig1/") + name,
                                           read_file(data_dir() / "fig1" / name)));
  return javalite::resolve(units);
}

CheckReport fig1_report(const AccessGraph& g) {
  const constraint::BoundProgram bp =
      bind_refs(constraint::parse_constraints(
                    read_file(data_dir() / "fig1" / "hide_imagedoc.cc")),
                g);
  return make_report(g, check(bp), "fig1/hide_imagedoc.cc");
}

const char* const kFig1Text =
    "VIOLATION ImageMgr.ImageMgr() -> ImageDoc [hideScope('ImageDoc'). @ "
    "fig1/hide_imagedoc.cc:2] at fig1/ImageMgr.jl:3\n"
    "VIOLATION ImageMgr.addImage() -> ImageDoc [hideScope('ImageDoc'). @ "
    "fig1/hide_imagedoc.cc:2] at fig1/ImageMgr.jl:11\n"
    "VIOLATION ImageMgr.addImage() -> ImageDoc.ImageDoc() [hideScope('ImageDoc'). @ "
    "fig1/hide_imagedoc.cc:2] at fig1/ImageMgr.jl:11\n"
    "VIOLATION ImageMgr.display() -> ImageDoc [hideScope('ImageDoc'). @ "
    "fig1/hide_imagedoc.cc:2] at fig1/ImageMgr.jl:6\n"
    "VIOLATION ImageMgr.display() -> ImageDoc.getName() [hideScope('ImageDoc'). @ "
    "fig1/hide_imagedoc.cc:2] at fig1/ImageMgr.jl:7\n"
    "VIOLATION ImageMgr.images -> ImageDoc [hideScope('ImageDoc'). @ "
    "fig1/hide_imagedoc.cc:2] at fig1/ImageMgr.jl:2\n"
    "6 violation(s)\n";

} // namespace

TEST_SUITE("report") {

TEST_CASE("make_report snapshots the graph counts") {
  const AccessGraph g = fig1_graph();
  const CheckReport report = fig1_report(g);
  CHECK(report.nodes == 16);
  CHECK(report.uses_edges == 24);
  CHECK(report.contains_edges == 8);
  CHECK(report.isa_edges == 0);
  CHECK(report.virtual_contains_edges == 0);
  CHECK(report.constraint_file == "fig1/hide_imagedoc.cc");
  CHECK(report.violations.size() == 6);
  CHECK(report.exit_status() == 1);
}

TEST_CASE("text report matches the frozen rendering") {
  const AccessGraph g = fig1_graph();
  CHECK(render_text(fig1_report(g)) == kFig1Text);
}

TEST_CASE("an empty report is just the footer and exits clean") {
  AccessGraph g;
  g.add_node(id("a"), EntityKind::Class);
  const CheckReport report = make_report(g, {}, "r.cc");
  CHECK(report.exit_status() == 0);
  CHECK(render_text(report) == "0 violation(s)\n");
  CHECK(render_text(report, true) == "0 violation(s)\n"); // footer is never colored
}

TEST_CASE("color wraps each violation line in ANSI red") {
  const AccessGraph g = fig1_graph();
  const std::string colored = render_text(fig1_report(g), true);
  std::size_t reds = 0;
  for (std::size_t pos = 0; (pos = colored.find("\x1b[31m", pos)) != std::string::npos;
       ++pos)
    ++reds;
  std::size_t resets = 0;
  for (std::size_t pos = 0; (pos = colored.find("\x1b[0m", pos)) != std::string::npos;
       ++pos)
    ++resets;
  CHECK(reds == 6);
  CHECK(resets == 6);
  CHECK(colored.find("\x1b[31mVIOLATION ImageMgr.ImageMgr()") != std::string::npos);
  // stripping the escapes yields the plain rendering
  std::string stripped = colored;
  for (const char* esc : {"\x1b[31m", "\x1b[0m"}) {
    for (std::size_t pos = 0; (pos = stripped.find(esc)) != std::string::npos;)
      stripped.erase(pos, std::string(esc).size());
  }
  CHECK(stripped == kFig1Text);
}

TEST_CASE("occurrence lists render sorted by file and line, columns ignored") {
  AccessGraph g;
  g.add_node(id("a"), EntityKind::Class);
  g.add_node(id("b"), EntityKind::Class);
  g.add_uses(id("a"), id("b"), SourceLocation{"b.jl", 9, 1});
  g.add_uses(id("a"), id("b"), SourceLocation{"a.jl", 12, 7});
  g.add_uses(id("a"), id("b"), SourceLocation{"a.jl", 3, 2});
  const constraint::BoundProgram bp =
      bind_refs(constraint::parse_constraints("hideFrom('b', 'a')."), g);
  const CheckReport report = make_report(g, check(bp), "r.cc");
  CHECK(render_text(report) ==
        "VIOLATION a -> b [hideFrom('b', 'a'). @ r.cc:1] at "
        "a.jl:3,a.jl:12,b.jl:9\n"
        "1 violation(s)\n");
}

TEST_CASE("structured report carries the summary and every violation") {
  const AccessGraph g = fig1_graph();
  const std::string text = render_structured(fig1_report(g));
  CHECK(text.back() == '\n');
  const nlohmann::json doc = nlohmann::json::parse(text);

  CHECK(doc["summary"]["nodes"] == 16);
  CHECK(doc["summary"]["uses_edges"] == 24);
  CHECK(doc["summary"]["contains_edges"] == 8);
  CHECK(doc["summary"]["isa_edges"] == 0);
  CHECK(doc["summary"]["virtual_contains_edges"] == 0);
  CHECK(doc["summary"]["constraint_file"] == "fig1/hide_imagedoc.cc");
  CHECK(doc["summary"]["violation_count"] == 6);
  CHECK(doc["summary"]["exit_status"] == 1);

  REQUIRE(doc["violations"].size() == 6);
  const nlohmann::json& first = doc["violations"][0];
  CHECK(first["src"] == "ImageMgr.ImageMgr()");
  CHECK(first["tgt"] == "ImageDoc");
  CHECK(first["judged_viewer"] == "ImageMgr.ImageMgr()");
  CHECK(first["clause_text"] == "hideScope('ImageDoc').");
  CHECK(first["clause_line"] == 2);
  REQUIRE(first["occurrences"].size() == 1);
  CHECK(first["occurrences"][0]["file"] == "fig1/ImageMgr.jl");
  CHECK(first["occurrences"][0]["line"] == 3);

  // fixed key order: summary precedes violations, counts precede status
  CHECK(text.find("\"summary\"") < text.find("\"violations\""));
  CHECK(text.find("\"nodes\"") < text.find("\"uses_edges\""));
  CHECK(text.find("\"violation_count\"") < text.find("\"exit_status\""));
}

TEST_CASE("structured report of a clean run") {
  AccessGraph g;
  g.add_node(id("a"), EntityKind::Class);
  const nlohmann::json doc =
      nlohmann::json::parse(render_structured(make_report(g, {}, "r.cc")));
  CHECK(doc["summary"]["violation_count"] == 0);
  CHECK(doc["summary"]["exit_status"] == 0);
  CHECK(doc["violations"].empty());
}

TEST_CASE("dot output is structurally valid and counts the graph") {
  const AccessGraph g = fig1_graph();
  const std::string dot = render_dot(g);
  const DotStats stats = check_dot(dot, "red");
  CHECK(stats.node_ids.size() == 16);
  CHECK(stats.contains_edges == 8);
  CHECK(stats.isa_edges == 0);
  CHECK(stats.virtual_edges == 0);
  CHECK(stats.uses_edges == 24); // one line per (src, tgt) pair
  CHECK(stats.colored_pairs.empty());
  // deterministic
  CHECK(render_dot(g) == dot);
}

TEST_CASE("dot colors exactly the violating uses edges") {
  const AccessGraph g = fig1_graph();
  const CheckReport report = fig1_report(g);
  const DotStats stats = check_dot(render_dot(g, &report), "red");
  CHECK(stats.uses_edges == 24);
  const std::set<std::pair<std::string, std::string>> expected = {
      {"ImageMgr.ImageMgr()", "ImageDoc"},
      {"ImageMgr.addImage()", "ImageDoc"},
      {"ImageMgr.addImage()", "ImageDoc.ImageDoc()"},
      {"ImageMgr.display()", "ImageDoc"},
      {"ImageMgr.display()", "ImageDoc.getName()"},
      {"ImageMgr.images", "ImageDoc"},
  };
  CHECK(stats.colored_pairs == expected);
}

TEST_CASE("dot filter keeps the scope plus its direct uses-neighbors") {
  const AccessGraph g = fig1_graph();
  const CheckReport report = fig1_report(g);
  const DotStats stats =
      check_dot(render_dot(g, &report, id("ImageDoc")), "red");
  const std::set<std::string> expected_nodes = {
      "ImageDoc",           "ImageDoc.ImageDoc()", "ImageDoc.getName()",
      "ImageDoc.name",      "ImageMgr.ImageMgr()", "ImageMgr.addImage()",
      "ImageMgr.display()", "ImageMgr.images",     "String",
  };
  CHECK(stats.node_ids == expected_nodes);
  // only edges whose two endpoints stayed visible are drawn; that includes
  // edges among the neighbors themselves (ImageMgr members -> ImageMgr.images)
  CHECK(stats.contains_edges == 3);
  CHECK(stats.uses_edges == 13);
  CHECK(stats.colored_pairs.size() == 6);
}

TEST_CASE("dot styles are configurable") {
  const AccessGraph g = fig1_graph();
  const CheckReport report = fig1_report(g);
  DotStyle style;
  style.scope_shape = "hexagon";
  style.member_shape = "cds";
  style.field_shape = "note";
  style.violation_color = "blue";
  const std::string dot = render_dot(g, &report, std::nullopt, style);
  const DotStats stats = check_dot(dot, "blue");
  CHECK(stats.colored_pairs.size() == 6);
  CHECK(dot.find("\"ImageDoc\" [shape=hexagon, label=\"ImageDoc\"]") !=
        std::string::npos);
  CHECK(dot.find("\"ImageDoc.getName()\" [shape=cds, label=\"getName\"]") !=
        std::string::npos);
  CHECK(dot.find("\"ImageDoc.name\" [shape=note, label=\"name\"]") !=
        std::string::npos);
  CHECK(dot.find("color=red") == std::string::npos);
}

TEST_CASE("dot renders every relation kind") {
  AccessGraph g;
  g.add_node(id("p"), EntityKind::Package);
  g.add_node(id("p.A"), EntityKind::Class);
  g.add_node(id("p.I"), EntityKind::Interface);
  g.add_node(id("V"), EntityKind::Virtual);
  g.add_contains(id("p"), id("p.A"));
  g.add_contains(id("p"), id("p.I"));
  g.add_isa(id("p.A"), id("p.I"));
  g.add_virtual_contains(id("V"), id("p.A"));
  g.add_uses(id("p.A"), id("p.I"), SourceLocation{"a.jl", 1, 1});
  const DotStats stats = check_dot(render_dot(g), "red");
  CHECK(stats.node_ids.size() == 4);
  CHECK(stats.contains_edges == 2);
  CHECK(stats.isa_edges == 1);
  CHECK(stats.virtual_edges == 1);
  CHECK(stats.uses_edges == 1);
}

TEST_CASE("dot output validates on random graphs") {
  std::mt19937_64 rng(2026);
  for (int round = 0; round < 50; ++round) {
    const AccessGraph g = test_support::random_graph(rng);
    const DotStats stats = check_dot(render_dot(g), "red");
    CHECK(stats.node_ids.size() == g.node_count());
    CHECK(stats.contains_edges == static_cast<int>(g.contains_count()));
    CHECK(stats.isa_edges == static_cast<int>(g.isa_count()));
    CHECK(stats.virtual_edges == static_cast<int>(g.virtual_contains_count()));
    CHECK(stats.uses_edges == static_cast<int>(g.uses_count()));
  }
}

TEST_CASE("the dot checker rejects shapes the renderer never emits") {
  using test_support::check_dot;
  const auto throws = [](const std::string& text) {
    try {
      check_dot(text, "red");
      return false;
    } catch (const std::runtime_error&) {
      return true;
    }
  };
  CHECK(throws("digraph access_graph {\n  rankdir=LR;\n}")); // missing newline
  CHECK(throws("digraph g {\n  rankdir=LR;\n}\n"));
  CHECK(throws("digraph access_graph {\n  rankdir=LR;\n"
               "  \"a\" -> \"b\";\n}\n")); // endpoints not declared
  CHECK(throws("digraph access_graph {\n  rankdir=LR;\n"
               "  \"a\" [shape=box, label=\"a\"];\n"
               "  \"a\" [shape=box, label=\"a\"];\n}\n")); // duplicate node
  CHECK(throws("digraph access_graph {\n  rankdir=LR;\n"
               "  \"a\" [shape=box, label=\"a\"];\n"
               "  \"b\" [shape=box, label=\"b\"];\n"
               "  \"a\" -> \"b\" [style=bold];\n}\n")); // unknown attribute
  CHECK_FALSE(throws("digraph access_graph {\n  rankdir=LR;\n"
                     "  \"a\" [shape=box, label=\"a\"];\n"
                     "  \"b\" [shape=box, label=\"b\"];\n"
                     "  \"a\" -> \"b\" [color=red];\n}\n"));
}

} // TEST_SUITE

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "archlint/report.hpp"

namespace archlint::cli {

/// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;         // success / no violations
inline constexpr int exit_violations = 1; // check found violations
inline constexpr int exit_bad_input = 2;  // source, facts or constraint errors
inline constexpr int exit_io = 3;         // unreadable/unwritable paths

struct CliConfig {
  std::vector<std::string> inputs;          // source files or directories
  std::optional<std::string> constraints_path;
  std::optional<std::string> facts_path;    // pre-extracted graph input
  std::optional<std::string> out_path;      // subcommand's main artifact
  std::string format = "text";              // check: text | structured
  std::optional<std::string> filter;        // graph: scope reference
  bool use_color = false;                   // check: ANSI in text reports
  DotStyle dot_style;
};

/// extract: parse sources, write the facts file (out_path or `out`).
int run_extract(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// check: build the graph (facts_path XOR sources), evaluate the constraint
/// file, print the report. Returns exit_violations when violations exist.
int run_check(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// graph: like check but emits DOT (constraints optional; violations only
/// affect edge coloring and the exit code).
int run_graph(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry: parses argv (subcommands extract/check/graph),
/// reads ARCHLINT_COLOR, dispatches, returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace archlint::cli

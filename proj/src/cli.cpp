#include "archlint/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "archlint/constraint/parser.hpp"
#include "archlint/errors.hpp"
#include "archlint/facts_io.hpp"
#include "archlint/javalite/parser.hpp"
#include "archlint/javalite/resolver.hpp"

namespace fs = std::filesystem;

namespace archlint::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(errc::io_error, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad())
    throw Error(errc::io_error, "cannot read '" + path + "'");
  return buffer.str();
}

void write_output(const std::optional<std::string>& path, const std::string& content,
                  std::ostream& fallback) {
  if (!path) {
    fallback << content;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out)
    throw Error(errc::io_error, "cannot write '" + *path + "'");
  out << content;
  out.flush();
  if (!out)
    throw Error(errc::io_error, "cannot write '" + *path + "'");
}

bool is_source_file(const fs::path& path) {
  const std::string ext = path.extension().string();
  return ext == ".jl" || ext == ".java";
}

std::vector<std::string> gather_source_paths(const std::vector<std::string>& inputs) {
  std::vector<std::string> paths;
  for (const std::string& input : inputs) {
    std::error_code ec;
    const fs::file_status status = fs::status(input, ec);
    if (ec || status.type() == fs::file_type::not_found)
      throw Error(errc::io_error, "no such file or directory: '" + input + "'");
    if (fs::is_directory(status)) {
      for (const auto& entry : fs::recursive_directory_iterator(input)) {
        if (entry.is_regular_file() && is_source_file(entry.path()))
          paths.push_back(entry.path().generic_string());
      }
    } else {
      paths.push_back(fs::path(input).generic_string());
    }
  }
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  return paths;
}

AccessGraph graph_from_sources(const std::vector<std::string>& inputs) {
  std::vector<javalite::CompilationUnit> units;
  for (const std::string& path : gather_source_paths(inputs))
    units.push_back(javalite::parse_source(path, read_file(path)));
  return javalite::resolve(units);
}

AccessGraph load_graph(const CliConfig& cfg) {
  if (cfg.facts_path)
    return parse_facts(read_file(*cfg.facts_path));
  return graph_from_sources(cfg.inputs);
}

[[noreturn]] void usage_error(const std::string& message) {
  throw Error(errc::parse_error, message);
}

void require_graph_source(const CliConfig& cfg) {
  if (cfg.facts_path && !cfg.inputs.empty())
    usage_error("give either source inputs or --facts, not both");
  if (!cfg.facts_path && cfg.inputs.empty())
    usage_error("no input: give source files/directories or --facts");
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == errc::io_error ? exit_io : exit_bad_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  }
}

struct CheckOutcome {
  CheckReport report;
  AccessGraph graph;
};

CheckOutcome evaluate(const CliConfig& cfg) {
  AccessGraph graph = load_graph(cfg);
  std::vector<constraint::Violation> violations;
  std::string constraint_file;
  if (cfg.constraints_path) {
    constraint_file = *cfg.constraints_path;
    const constraint::ConstraintProgram program =
        constraint::parse_constraints(read_file(constraint_file));
    const constraint::BoundProgram bound = constraint::bind_refs(program, graph);
    violations = constraint::check(bound);
  }
  CheckOutcome outcome{make_report(graph, std::move(violations), constraint_file),
                       std::move(graph)};
  return outcome;
}

} // namespace

int run_extract(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.inputs.empty())
      usage_error("extract needs source files or directories");
    const AccessGraph graph = graph_from_sources(cfg.inputs);
    write_output(cfg.out_path, emit_facts(graph), out);
    return exit_ok;
  });
}

int run_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_graph_source(cfg);
    if (!cfg.constraints_path)
      usage_error("check needs --constraints");
    if (cfg.format != "text" && cfg.format != "structured")
      usage_error("unknown format '" + cfg.format + "'");
    const CheckOutcome outcome = evaluate(cfg);
    const std::string rendered =
        cfg.format == "structured"
            ? render_structured(outcome.report)
            : render_text(outcome.report, cfg.use_color);
    write_output(cfg.out_path, rendered, out);
    return outcome.report.exit_status();
  });
}

int run_graph(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_graph_source(cfg);
    const CheckOutcome outcome = evaluate(cfg);
    std::optional<EntityId> filter;
    if (cfg.filter)
      filter = constraint::resolve_ref(outcome.graph, constraint::Ref{*cfg.filter, 0, 0});
    const CheckReport* report = cfg.constraints_path ? &outcome.report : nullptr;
    write_output(cfg.out_path, render_dot(outcome.graph, report, filter, cfg.dot_style),
                 out);
    return outcome.report.exit_status();
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Architecture conformance checker: extracts access graphs from "
               "sources and checks coupling constraints against them"};
  app.require_subcommand(1);

  CliConfig cfg;
  const char* color = std::getenv("ARCHLINT_COLOR");
  cfg.use_color = color != nullptr && std::string(color) == "1";

  CLI::App* extract = app.add_subcommand("extract", "Emit the facts file for sources");
  extract->add_option("inputs", cfg.inputs, "source files or directories");
  extract->add_option("--out", cfg.out_path, "facts output path (default: stdout)");

  CLI::App* chk = app.add_subcommand("check", "Check coupling constraints");
  chk->add_option("inputs", cfg.inputs, "source files or directories");
  chk->add_option("--facts", cfg.facts_path, "read the graph from a facts file");
  chk->add_option("--constraints", cfg.constraints_path, "constraint file");
  chk->add_option("--format", cfg.format, "report format: text | structured");
  chk->add_option("--out", cfg.out_path, "report output path (default: stdout)");

  CLI::App* graph = app.add_subcommand("graph", "Emit a DOT graph");
  graph->add_option("inputs", cfg.inputs, "source files or directories");
  graph->add_option("--facts", cfg.facts_path, "read the graph from a facts file");
  graph->add_option("--constraints", cfg.constraints_path,
                    "constraint file (colors violating edges)");
  graph->add_option("--filter", cfg.filter, "restrict to a scope and its neighbors");
  graph->add_option("--dot,--out", cfg.out_path, "DOT output path (default: stdout)");
  graph->add_option("--violation-color", cfg.dot_style.violation_color,
                    "color for violating uses edges");
  graph->add_option("--scope-shape", cfg.dot_style.scope_shape,
                    "shape for packages/classes/interfaces");
  graph->add_option("--member-shape", cfg.dot_style.member_shape,
                    "shape for methods/constructors");
  graph->add_option("--field-shape", cfg.dot_style.field_shape,
                    "shape for data members");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_bad_input;
  }

  if (extract->parsed())
    return run_extract(cfg, out, err);
  if (chk->parsed())
    return run_check(cfg, out, err);
  return run_graph(cfg, out, err);
}

} // namespace archlint::cli

#pragma once

#include <compare>
#include <string>

namespace archlint {

/// Position of a name occurrence or a declaration in an input file.
/// line/column are 1-based.
struct SourceLocation {
  std::string file;
  int line = 1;
  int column = 1;

  auto operator<=>(const SourceLocation&) const = default;

  /// Rendered as `file:line`. Columns stay internal: the facts wire format
  /// does not carry them, and reports must not differ between the source
  /// path and the facts path.
  std::string to_string() const { return file + ":" + std::to_string(line); }
};

} // namespace archlint

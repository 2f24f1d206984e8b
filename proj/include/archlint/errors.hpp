#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace archlint {

enum class errc {
  kind_conflict,
  unknown_entity,
  self_use,
  contains_cycle_or_second_parent,
  isa_cycle,
  invalid_edge,
  invalid_entity_id,
  syntax_error,
  dangling_reference,
  parse_error,
  ambiguous_name,
  duplicate_member,
  duplicate_type,
  unknown_predicate,
  reserved_predicate,
  duplicate_scope_name,
  unknown_name,
  io_error,
};

const char* errc_name(errc code);

/// Single exception type for all structured failures; `code` tells callers
/// (and the CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
public:
  Error(errc code, std::string message)
      : std::runtime_error(errc_name(code) + (": " + message)), code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

} // namespace archlint

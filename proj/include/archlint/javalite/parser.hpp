#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "archlint/javalite/ast.hpp"

namespace archlint::javalite {

/// Parses one JavaLite source file. Supported subset: package declaration,
/// single-type imports, class/interface declarations with extends/implements,
/// fields, methods and constructors (with throws clauses), statement forms
/// block / local declaration / expression / return / if / while / enhanced
/// for, and the usual expression forms including `new T(args)` and generic
/// type names `T<U>`. Throws ParseError(file:line:col, expected...).
CompilationUnit parse_source(const std::string& path, std::string_view text);

} // namespace archlint::javalite

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cartanforge/field.hpp"

namespace cartanforge {

/// Syntax or resolution failure in expression source, with a 1-based
/// location.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

/// Names a chart: which identifiers alias the axes c1, c2, c3. The canonical
/// names c1, c2, c3 are always available.
struct Chart {
  std::string name;
  std::vector<std::pair<std::string, int>> aliases;  // identifier -> axis

  /// (r, theta, psi) aliased to (c1, c2, c3).
  static const Chart& frame_bundle();
  /// No aliases beyond c1, c2, c3.
  static const Chart& plain();
};

/// Parses expression source into a scalar field. The language: `let name =
/// expr;` bindings followed by one bare expression; operators + - * / ^
/// (conventional precedence, ^ right-associative, unary minus); calls to
/// sin, cos, tan, exp, log, sqrt, abs, pow; numbers with optional scientific
/// notation; identifiers are lowercase [a-z_][a-z0-9_]*.
ScalarField parse_field(std::string_view source,
                        const Chart& chart = Chart::frame_bundle());

}  // namespace cartanforge

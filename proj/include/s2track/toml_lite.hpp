#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "s2track/errors.hpp"

namespace s2track::toml {

/// A parsed scalar or numeric array with its source line (for diagnostics).
struct Value {
  enum class Kind { number, string, boolean, array };
  Kind kind = Kind::number;
  double num = 0.0;
  std::string str;
  bool boolean = false;
  std::vector<double> array;
  int line = 0;
};

/// Keys are flattened as "table.key".
using Table = std::map<std::string, Value>;

/// Parses the TOML-compatible subset used by scenario configs: [table]
/// headers, `key = value` pairs, `#` comments, numbers, booleans, double
/// quoted strings, and flat arrays of numbers. Throws ParseError with a
/// line:column position.
Table parse(std::string_view text);

}  // namespace s2track::toml

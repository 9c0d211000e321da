#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cartanforge {

/// Insertion-ordered JSON tree for report output. Numbers are printed with
/// 17 significant digits so reruns with identical inputs are byte-identical
/// and round-trip through doubles exactly.
class Json {
 public:
  Json() : kind_(Kind::Null) {}

  static Json object();
  static Json array();
  static Json number(double v);
  static Json integer(std::int64_t v);
  static Json boolean(bool v);
  static Json string(std::string v);

  /// Appends a key to an object; returns *this for chaining.
  Json& add(const std::string& key, Json v);
  /// Appends an element to an array.
  Json& push(Json v);

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };

  Kind kind_;
  bool b_ = false;
  std::int64_t i_ = 0;
  double d_ = 0.0;
  std::string s_;
  std::vector<Json> elems_;
  std::vector<std::pair<std::string, Json>> members_;

  void write(std::string& out, int indent, int depth) const;
};

std::string format_double_17(double v);

}  // namespace cartanforge

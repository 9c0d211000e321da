#include "cartanforge/jsonout.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cartanforge {

std::string format_double_17(double v) {
  if (!std::isfinite(v)) {
    // JSON has no literal for these; reports should never contain them, but
    // a readable token beats aborting a diagnostic dump.
    return std::isnan(v) ? "\"nan\"" : (v > 0 ? "\"inf\"" : "\"-inf\"");
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::Object;
  return j;
}

Json Json::array() {
  Json j;
  j.kind_ = Kind::Array;
  return j;
}

Json Json::number(double v) {
  Json j;
  j.kind_ = Kind::Double;
  j.d_ = v;
  return j;
}

Json Json::integer(std::int64_t v) {
  Json j;
  j.kind_ = Kind::Int;
  j.i_ = v;
  return j;
}

Json Json::boolean(bool v) {
  Json j;
  j.kind_ = Kind::Bool;
  j.b_ = v;
  return j;
}

Json Json::string(std::string v) {
  Json j;
  j.kind_ = Kind::String;
  j.s_ = std::move(v);
  return j;
}

Json& Json::add(const std::string& key, Json v) {
  if (kind_ != Kind::Object)
    throw std::logic_error("Json::add requires an object");
  members_.emplace_back(key, std::move(v));
  return *this;
}

Json& Json::push(Json v) {
  if (kind_ != Kind::Array)
    throw std::logic_error("Json::push requires an array");
  elems_.push_back(std::move(v));
  return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
  if (indent <= 0) return;
  out += '\n';
  out.append(static_cast<size_t>(indent) * depth, ' ');
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::Null: out += "null"; return;
    case Kind::Bool: out += b_ ? "true" : "false"; return;
    case Kind::Int: out += std::to_string(i_); return;
    case Kind::Double: out += format_double_17(d_); return;
    case Kind::String: write_escaped(out, s_); return;
    case Kind::Array: {
      if (elems_.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (size_t i = 0; i < elems_.size(); ++i) {
        if (i) out += ',';
        newline_indent(out, indent, depth + 1);
        elems_[i].write(out, indent, depth + 1);
      }
      newline_indent(out, indent, depth);
      out += ']';
      return;
    }
    case Kind::Object: {
      if (members_.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      for (size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ',';
        newline_indent(out, indent, depth + 1);
        write_escaped(out, members_[i].first);
        out += indent > 0 ? ": " : ":";
        members_[i].second.write(out, indent, depth + 1);
      }
      newline_indent(out, indent, depth);
      out += '}';
      return;
    }
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  return out;
}

}  // namespace cartanforge

#include "dcbam/canonical_json.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "dcbam/errors.hpp"

namespace dcbam {

std::string format_number(double value) {
  if (!std::isfinite(value)) {
    throw DomainError("non-finite number cannot be serialized");
  }
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw DomainError("number formatting failed");
  return std::string(buf, end);
}

namespace {

void write(const Json& node, int depth, std::string& out) {
  auto indent = [&](int d) { out.append(static_cast<std::size_t>(d) * 2, ' '); };
  switch (node.type()) {
    case Json::value_t::object: {
      if (node.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = node.begin(); it != node.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        indent(depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        write(it.value(), depth + 1, out);
      }
      out += '\n';
      indent(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (node.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i) out += ",\n";
        indent(depth + 1);
        write(node[i], depth + 1, out);
      }
      out += '\n';
      indent(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_number(node.get<double>());
      return;
    default:
      // strings, booleans, null and integers already have a unique form
      out += node.dump(-1, ' ', false, Json::error_handler_t::strict);
      return;
  }
}

}  // namespace

std::string canonical_dump(const Json& doc) {
  std::string out;
  write(doc, 0, out);
  return out;
}

}  // namespace dcbam

#include "curvecross/curve_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "curvecross/error.hpp"

namespace curvecross {

namespace {

using nlohmann::json;

void append_array(std::string& out, std::span<const double> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_exact_double(values[i]);
  }
  out += ']';
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& require_key(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError("missing key \"" + std::string(key) + "\" in " + where);
  }
  return obj.at(key);
}

std::vector<double> read_numbers(const json& arr, std::size_t expected, const std::string& where) {
  if (!arr.is_array()) throw SchemaError(where + " must be an array");
  if (arr.size() != expected) {
    throw SchemaError(where + " has " + std::to_string(arr.size()) + " entries, expected " +
                      std::to_string(expected));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : arr) {
    if (!v.is_number()) throw SchemaError(where + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string format_exact_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error("failed to format double");
  return std::string(buf.data(), ptr);
}

std::string to_curve_json(const TrigCurve& c, SobolevOrder r) {
  std::string out = "{\"degree\": " + std::to_string(c.degree()) + ", \"r\": " + std::to_string(r.r);
  out += ", \"x\": {\"a\": ";
  append_array(out, c.xa());
  out += ", \"b\": ";
  append_array(out, c.xb());
  out += "}, \"y\": {\"a\": ";
  append_array(out, c.ya());
  out += ", \"b\": ";
  append_array(out, c.yb());
  out += "}}\n";
  return out;
}

CurveFile parse_curve_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << "curve JSON syntax error at line " << line << ", column " << col << ": " << e.what();
    throw SchemaError(msg.str());
  }
  if (!doc.is_object()) throw SchemaError("curve JSON must be an object");

  const json& deg = require_key(doc, "degree", "curve");
  if (!deg.is_number_integer() || deg.get<long long>() < 0) {
    throw SchemaError("\"degree\" must be a non-negative integer");
  }
  const auto n = static_cast<std::size_t>(deg.get<long long>());

  SobolevOrder r{};
  if (doc.contains("r")) {
    const json& rv = doc.at("r");
    if (!rv.is_number_integer() || rv.get<long long>() < 0) {
      throw SchemaError("\"r\" must be a non-negative integer");
    }
    r.r = static_cast<unsigned>(rv.get<long long>());
  }

  const json& x = require_key(doc, "x", "curve");
  const json& y = require_key(doc, "y", "curve");
  auto xa = read_numbers(require_key(x, "a", "\"x\""), n + 1, "x.a");
  auto xb = read_numbers(require_key(x, "b", "\"x\""), n, "x.b");
  auto ya = read_numbers(require_key(y, "a", "\"y\""), n + 1, "y.a");
  auto yb = read_numbers(require_key(y, "b", "\"y\""), n, "y.b");

  try {
    return CurveFile{TrigCurve(std::move(xa), std::move(xb), std::move(ya), std::move(yb)), r};
  } catch (const PreconditionError& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace curvecross

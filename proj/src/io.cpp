#include "plift/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "plift/error.hpp"

namespace plift {

namespace {

using json = nlohmann::ordered_json;

std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the first occurrence of "key", or 1.
std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 1 : line_at(text, pos);
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte is 1-based and points just past the offending character.
    fail(source, line_at(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
}

Rat rat_of(const json& v, std::string_view text, std::string_view source, std::string_view key) {
  try {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(Int(v.dump()));
  } catch (const Error&) {
  }
  fail(source, line_of_key(text, key), "expected a rational \"p/q\", got " + v.dump());
}

std::string rat_text(const Rat& r) { return to_string(r); }

json columns_json(const Realisation& r) {
  json cols = json::array();
  for (std::size_t c = 0; c < r.cols(); ++c) {
    json col = json::array();
    for (std::size_t i = 0; i < r.rows(); ++i) col.push_back(rat_text(r(i, c)));
    cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace

Config parse_config(std::string_view text, std::string_view source) {
  const json j = parse_json(text, source);
  if (!j.is_object()) fail(source, 1, "expected an object with \"points\" and \"lines\"");
  if (!j.contains("points") || !j["points"].is_number_integer())
    fail(source, line_of_key(text, "points"), "\"points\" must be an integer");
  if (!j.contains("lines") || !j["lines"].is_array())
    fail(source, line_of_key(text, "lines"), "\"lines\" must be an array of arrays");
  Config c;
  c.n = j["points"].get<int>();
  for (const auto& line : j["lines"]) {
    if (!line.is_array()) fail(source, line_of_key(text, "lines"), "each line must be an array");
    std::vector<int> pts;
    for (const auto& p : line) {
      if (!p.is_number_integer())
        fail(source, line_of_key(text, "lines"), "point indices must be integers, got " + p.dump());
      pts.push_back(p.get<int>());
    }
    c.lines.push_back(std::move(pts));
  }
  require_valid(c);
  return c;
}

std::string config_to_json(const Config& c) {
  json j;
  j["points"] = c.n;
  j["lines"] = c.lines;
  return j.dump() + "\n";
}

Realisation parse_realisation(std::string_view text, std::string_view source) {
  const json j = parse_json(text, source);
  if (!j.is_object() || !j.contains("columns") || !j["columns"].is_array())
    fail(source, line_of_key(text, "columns"), "expected {\"columns\": [[x, y, z], ...]}");
  std::vector<QVector> cols;
  for (const auto& col : j["columns"]) {
    if (!col.is_array() || col.size() != 3)
      fail(source, line_of_key(text, "columns"), "each column needs 3 coordinates, got " + col.dump());
    QVector v;
    for (const auto& e : col) v.push_back(rat_of(e, text, source, "columns"));
    cols.push_back(std::move(v));
  }
  return QMatrix::from_columns(cols, 3);
}

std::string realisation_to_json(const Realisation& r) {
  json j;
  j["columns"] = columns_json(r);
  return j.dump() + "\n";
}

QVector parse_abscissas(std::string_view text, std::string_view source) {
  const json j = parse_json(text, source);
  const json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("abscissas"))
      fail(source, 1, "expected {\"abscissas\": [...]} or an array");
    arr = &j["abscissas"];
  }
  if (!arr->is_array()) fail(source, line_of_key(text, "abscissas"), "abscissas must be an array");
  QVector x;
  for (const auto& e : *arr) x.push_back(rat_of(e, text, source, "abscissas"));
  return x;
}

std::string abscissas_to_json(const QVector& x) {
  json j;
  j["abscissas"] = json::array();
  for (const Rat& v : x) j["abscissas"].push_back(rat_text(v));
  return j.dump() + "\n";
}

std::string lift_result_to_json(const LiftResult& l) {
  json j;
  j["kind"] = std::string(to_string(l.kind));
  j["z"] = json::array();
  for (const Rat& v : l.z) j["z"].push_back(rat_text(v));
  j["columns"] = columns_json(l.realisation);
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path + ":0: cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Config load_config(const std::string& path) { return parse_config(read_file(path), path); }

QVector load_abscissas(const std::string& path) { return parse_abscissas(read_file(path), path); }

Realisation load_realisation(const std::string& path) {
  return parse_realisation(read_file(path), path);
}

}  // namespace plift

#pragma once

#include <string>
#include <string_view>

#include "plift/config.hpp"
#include "plift/lifting.hpp"

namespace plift {

// Parsers throw ParseError with a "source:line: " prefix. `source` names the
// input in messages, usually the file path.

// {"points": n, "lines": [[1,2,3], ...]}; validated, throws InvalidConfig.
Config parse_config(std::string_view text, std::string_view source = "<input>");
std::string config_to_json(const Config& c);

// {"columns": [["p/q","p/q","p/q"], ...]}
Realisation parse_realisation(std::string_view text, std::string_view source = "<input>");
std::string realisation_to_json(const Realisation& r);

// {"abscissas": ["p/q", ...]} or a bare array. Integers may be JSON numbers.
QVector parse_abscissas(std::string_view text, std::string_view source = "<input>");
std::string abscissas_to_json(const QVector& x);

// Realisation format plus "kind" and "z".
std::string lift_result_to_json(const LiftResult& l);

// Throws ParseError when the file cannot be read.
std::string read_file(const std::string& path);

Config load_config(const std::string& path);
QVector load_abscissas(const std::string& path);
Realisation load_realisation(const std::string& path);

}  // namespace plift

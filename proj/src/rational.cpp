#include "plift/rational.hpp"

#include <cctype>

#include "plift/error.hpp"

namespace plift {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::SizeMismatch: return "size-mismatch";
    case ErrorKind::KTooLarge: return "k-too-large";
    case ErrorKind::MissingVariable: return "missing-variable";
    case ErrorKind::DuplicateAbscissa: return "duplicate-abscissa";
    case ErrorKind::NotAForest: return "not-a-forest";
    case ErrorKind::DegenerateParameterCollision: return "degenerate-parameter-collision";
    case ErrorKind::AllZeroLift: return "all-zero-lift";
    case ErrorKind::CenterOnLine: return "center-on-line";
    case ErrorKind::PointAtCenter: return "point-at-center";
    case ErrorKind::PointAtChartInfinity: return "point-at-chart-infinity";
    case ErrorKind::SingularTransform: return "singular-T";
    case ErrorKind::ZeroScale: return "zero-scale";
    case ErrorKind::InvalidLine: return "invalid-line";
    case ErrorKind::InvalidColumn: return "invalid-column";
    case ErrorKind::NonSimpleInput: return "non-simple-input";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::UnknownFormat: return "unknown-format";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::RetryBudgetExhausted: return "retry-budget-exhausted";
    case ErrorKind::TooLarge: return "too-large";
  }
  return "unknown";
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Int parse_int(std::string_view s) {
  if (!valid_integer(s))
    throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Int(std::string(s), 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  const auto slash = text.find('/');
  Int num = parse_int(text.substr(0, slash));
  Int den = 1;
  if (slash != std::string_view::npos) {
    auto d = text.substr(slash + 1);
    if (!d.empty() && (d[0] == '-' || d[0] == '+'))
      throw Error(ErrorKind::ParseError, "signed denominator in '" + std::string(text) + "'");
    den = parse_int(d);
    if (den == 0)
      throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace plift

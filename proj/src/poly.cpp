#include "plift/poly.hpp"

#include <algorithm>
#include <cctype>

#include "plift/error.hpp"

namespace plift {

std::string var_name(VarId v) {
  static constexpr char letters[] = {'x', 'y', 'z'};
  return std::string(1, letters[static_cast<int>(v.letter)]) + "_" + std::to_string(v.point);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(VarId v, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.factors_.emplace_back(v.index(), exp);
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [var, exp] : factors) {
    if (exp == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == var) {
      m.factors_.back().second += exp;
    } else {
      m.factors_.emplace_back(var, exp);
    }
  }
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::exponent(VarId v) const {
  const auto idx = v.index();
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{idx, 0});
  return (it != factors_.end() && it->first == idx) ? it->second : 0;
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.factors_.begin();
  for (const auto& [var, exp] : factors_) {
    while (it != other.factors_.end() && it->first < var) ++it;
    if (it == other.factors_.end() || it->first != var || it->second < exp) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      m.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      m.factors_.push_back(*j++);
    } else {
      m.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial m;
  auto j = b.factors_.begin();
  for (const auto& [var, exp] : a.factors_) {
    std::uint32_t e = exp;
    if (j != b.factors_.end() && j->first == var) e -= (j++)->second;
    if (e > 0) m.factors_.emplace_back(var, e);
  }
  return m;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  const auto da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // Scan from the smallest variable: a smaller exponent there means a larger monomial.
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    const std::uint32_t va = i < fa.size() ? fa[i].first : UINT32_MAX;
    const std::uint32_t vb = j < fb.size() ? fb[j].first : UINT32_MAX;
    if (va == vb) {
      if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? 1 : -1;
      ++i;
      ++j;
    } else if (va < vb) {
      return -1;  // a has the smaller variable, b has exponent 0 there
    } else {
      return 1;
    }
  }
  return 0;
}

// -------------------------------------------------------------- Assignment

Assignment Assignment::from_columns(const QMatrix& m) {
  if (m.rows() != 3) throw Error(ErrorKind::SizeMismatch, "realisation must have 3 rows");
  Assignment a(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < 3; ++r)
      a.values_[3 * c + r] = m(r, c);
  return a;
}

void Assignment::set(VarId v, Rat value) {
  const auto idx = v.index();
  if (idx >= values_.size()) values_.resize(3 * static_cast<std::size_t>(v.point));
  values_[idx] = std::move(value);
}

const std::optional<Rat>& Assignment::get(VarId v) const {
  static const std::optional<Rat> none;
  const auto idx = v.index();
  return idx < values_.size() ? values_[idx] : none;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(const Rat& constant) {
  if (sgn(constant) != 0) terms_.emplace(Monomial(), constant);
}

Poly Poly::variable(VarId v) { return term(Rat(1), Monomial::of(v)); }

Poly Poly::term(const Rat& coeff, Monomial m) {
  Poly p;
  if (sgn(coeff) != 0) p.terms_.emplace(std::move(m), coeff);
  return p;
}

std::uint32_t Poly::degree() const { return is_zero() ? 0 : leading_monomial().degree(); }

Rat Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly p;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
  return p;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [m, v] : p.terms_) v = -v;
  return p;
}

Rat Poly::evaluate(const Assignment& at) const {
  bool integral = true;
  for (const auto& [m, c] : terms_) {
    if (c.get_den() != 1) integral = false;
    for (const auto& [var, exp] : m.factors()) {
      const auto& v = at.get(VarId::from_index(var));
      if (!v) throw Error(ErrorKind::MissingVariable, var_name(VarId::from_index(var)) + " is unassigned");
      if (v->get_den() != 1) integral = false;
    }
  }
  if (integral) {
    Int acc = 0, t;
    for (const auto& [m, c] : terms_) {
      t = c.get_num();
      for (const auto& [var, exp] : m.factors()) {
        const Int& x = at.get(VarId::from_index(var))->get_num();
        for (std::uint32_t e = 0; e < exp; ++e) t *= x;
      }
      acc += t;
    }
    return Rat(acc);
  }
  Rat acc = 0, t;
  for (const auto& [m, c] : terms_) {
    t = c;
    for (const auto& [var, exp] : m.factors()) {
      const Rat& x = *at.get(VarId::from_index(var));
      for (std::uint32_t e = 0; e < exp; ++e) t *= x;
    }
    acc += t;
  }
  return acc;
}

Poly canonical_sign(Poly p) {
  if (!p.is_zero() && sgn(std::prev(p.terms().end())->second) < 0) return -p;
  return p;
}

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorKind::SizeMismatch, "division by the zero polynomial");
  Poly rem = a;
  Poly q;
  const Monomial& lb = b.leading_monomial();
  const Rat& cb = b.leading_coeff();
  while (!rem.is_zero()) {
    const Monomial& lr = rem.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    Poly t = Poly::term(rem.leading_coeff() / cb, lr / lb);
    q += t;
    rem -= t * b;
  }
  return q;
}

std::optional<MultiDeg> multidegree(const Poly& p, int points) {
  int maxPoint = points;
  for (const auto& [m, c] : p.terms())
    for (const auto& f : m.factors())
      maxPoint = std::max(maxPoint, VarId::from_index(f.first).point);

  std::optional<MultiDeg> out;
  for (const auto& [m, c] : p.terms()) {
    MultiDeg d;
    d.point.assign(static_cast<std::size_t>(std::max(maxPoint, 0)), 0);
    for (const auto& [var, exp] : m.factors()) {
      const VarId v = VarId::from_index(var);
      d.letter[static_cast<int>(v.letter)] += exp;
      d.point[static_cast<std::size_t>(v.point - 1)] += exp;
    }
    if (!out) {
      out = std::move(d);
    } else if (!(*out == d)) {
      return std::nullopt;
    }
  }
  if (!out) {
    out.emplace();
    out->point.assign(static_cast<std::size_t>(std::max(maxPoint, 0)), 0);
  }
  return out;
}

std::set<VarId> support_vars(const Poly& p) {
  std::set<VarId> s;
  for (const auto& [m, c] : p.terms())
    for (const auto& f : m.factors()) s.insert(VarId::from_index(f.first));
  return s;
}

namespace {

Poly coordinate(int point, int row) {
  return Poly::variable({static_cast<Letter>(row), point});
}

// Determinant of the 3x3 matrix with the given polynomial columns.
Poly det3_poly(const std::array<std::array<Poly, 3>, 3>& col) {
  auto m = [&](int r, int c) -> const Poly& { return col[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]; };
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

void check_point(int i) {
  if (i < 1) throw Error(ErrorKind::IndexOutOfRange, "point index must be >= 1");
}

}  // namespace

Poly bracket(int i, int j, int k) {
  check_point(i);
  check_point(j);
  check_point(k);
  std::array<std::array<Poly, 3>, 3> cols;
  const int pts[3] = {i, j, k};
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) cols[c][r] = coordinate(pts[c], r);
  return det3_poly(cols);
}

Poly frame_bracket(int i, int j, int f) {
  if (f < 1 || f > 3) throw Error(ErrorKind::IndexOutOfRange, "frame index must be 1, 2 or 3");
  std::array<Rat, 3> e{0, 0, 0};
  e[static_cast<std::size_t>(f - 1)] = 1;
  return frame_bracket(i, j, e);
}

Poly frame_bracket(int i, int j, std::span<const Rat> v) {
  check_point(i);
  check_point(j);
  if (v.size() != 3) throw Error(ErrorKind::SizeMismatch, "frame point must have 3 coordinates");
  // Expansion along the constant column.
  auto minor2 = [&](int r0, int r1) {
    return coordinate(i, r0) * coordinate(j, r1) - coordinate(j, r0) * coordinate(i, r1);
  };
  Poly p;
  if (sgn(v[0]) != 0) p += v[0] * minor2(1, 2);
  if (sgn(v[1]) != 0) p -= v[1] * minor2(0, 2);
  if (sgn(v[2]) != 0) p += v[2] * minor2(0, 1);
  return p;
}

// ---------------------------------------------------------------- printing

std::string to_plain(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool neg = sgn(c) < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const Rat mag = abs_rat(c);
    const bool unit = mag == 1;
    if (!unit || m.is_one()) out += to_string(mag);
    bool needStar = !unit;
    for (const auto& [var, exp] : m.factors()) {
      if (needStar) out += "*";
      out += var_name(VarId::from_index(var));
      if (exp > 1) out += "^" + std::to_string(exp);
      needStar = true;
    }
  }
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Poly parse() {
    Poly result;
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool firstTerm = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!firstTerm) {
        fail("expected '+' or '-'");
      }
      result += parse_term() * Rat(sign);
      firstTerm = false;
    }
    return result;
  }

 private:
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_));
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Rat parse_number() {
    std::string text = digits();
    if (pos_ < s_.size() && peek() == '/') {
      ++pos_;
      text += "/" + digits();
    }
    return parse_rat(text);
  }

  Monomial::Factor parse_variable() {
    const char c = peek();
    const Letter letter = c == 'x' ? Letter::X : c == 'y' ? Letter::Y : Letter::Z;
    ++pos_;
    if (pos_ == s_.size() || peek() != '_') fail("expected '_' after variable letter");
    ++pos_;
    std::string idx;
    if (pos_ < s_.size() && peek() == '{') {
      ++pos_;
      idx = digits();
      if (pos_ == s_.size() || peek() != '}') fail("expected '}'");
      ++pos_;
    } else {
      idx = digits();
    }
    const long point = std::stol(idx);
    if (point < 1) fail("point index must be >= 1");
    std::uint32_t exp = 1;
    if (pos_ < s_.size() && peek() == '^') {
      ++pos_;
      exp = static_cast<std::uint32_t>(std::stoul(digits()));
    }
    return {VarId{letter, static_cast<int>(point)}.index(), exp};
  }

  Poly parse_term() {
    Rat coeff = 1;
    std::vector<Monomial::Factor> factors;
    bool any = false;
    while (pos_ < s_.size()) {
      skip_ws();
      if (pos_ == s_.size()) break;
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_number();
      } else if (c == 'x' || c == 'y' || c == 'z') {
        factors.push_back(parse_variable());
      } else {
        break;
      }
      any = true;
      skip_ws();
      if (pos_ < s_.size() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (pos_ == s_.size()) fail("dangling '*'");
      }
    }
    if (!any) fail("expected a term");
    return Poly::term(coeff, Monomial::from_factors(std::move(factors)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace plift

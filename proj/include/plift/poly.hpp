#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plift/linalg.hpp"
#include "plift/rational.hpp"

namespace plift {

enum class Letter : std::uint8_t { X = 0, Y = 1, Z = 2 };

// Coordinate variable x_i, y_i or z_i of point i (1-based).
struct VarId {
  Letter letter = Letter::X;
  int point = 1;

  friend auto operator<=>(const VarId& a, const VarId& b) {
    return a.index() <=> b.index();
  }
  friend bool operator==(const VarId&, const VarId&) = default;

  // Position in the order x_1 < y_1 < z_1 < x_2 < ...
  std::uint32_t index() const {
    return 3u * static_cast<std::uint32_t>(point - 1) + static_cast<std::uint32_t>(letter);
  }
  static VarId from_index(std::uint32_t i) {
    return {static_cast<Letter>(i % 3), static_cast<int>(i / 3) + 1};
  }
};

std::string var_name(VarId v);

class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;  // (variable index, exponent)

  Monomial() = default;
  static Monomial of(VarId v, std::uint32_t exp = 1);
  // Factors need not be sorted or merged; zero exponents are dropped.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::uint32_t degree() const;
  std::uint32_t exponent(VarId v) const;
  bool is_one() const noexcept { return factors_.empty(); }
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted by variable index, exponents > 0
};

// Graded reverse lexicographic comparison with x_1 < y_1 < z_1 < x_2 < ...
// Returns <0, 0, >0.
int grevlex_compare(const Monomial& a, const Monomial& b);

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

// Values for the coordinate variables, indexed by VarId::index().
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t points) : values_(3 * points) {}
  // Columns of a 3 x n matrix become (x_i, y_i, z_i).
  static Assignment from_columns(const QMatrix& m);

  void set(VarId v, Rat value);
  const std::optional<Rat>& get(VarId v) const;
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<std::optional<Rat>> values_;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rat, GrevlexGreater>;

  Poly() = default;
  Poly(const Rat& constant);  // NOLINT(google-explicit-constructor)
  Poly(int constant) : Poly(Rat(constant)) {}  // NOLINT(google-explicit-constructor)
  static Poly variable(VarId v);
  static Poly term(const Rat& coeff, Monomial m);

  // Terms in canonical order, leading (grevlex-largest) term first.
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::uint32_t degree() const;
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rat& leading_coeff() const { return terms_.begin()->second; }
  Rat coeff(const Monomial& m) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  Poly operator-() const;
  friend bool operator==(const Poly&, const Poly&) = default;

  // Throws MissingVariable when a variable of the polynomial is unassigned.
  Rat evaluate(const Assignment& at) const;

 private:
  void add_term(const Monomial& m, const Rat& c);
  TermMap terms_;
};

// Multiplies by -1 when needed so that the grevlex-least monomial has a
// positive coefficient.
Poly canonical_sign(Poly p);

// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);

struct MultiDeg {
  std::array<std::uint32_t, 3> letter{};  // (d_x, d_y, d_z)
  std::vector<std::uint32_t> point;       // (d_1, ..., d_n)
  friend bool operator==(const MultiDeg&, const MultiDeg&) = default;
};

// nullopt when the terms do not share one letter and one point multidegree.
// `points` fixes the length of the point vector.
std::optional<MultiDeg> multidegree(const Poly& p, int points);

std::set<VarId> support_vars(const Poly& p);

// Determinant of the 3x3 matrix with columns (x_i,y_i,z_i), (x_j,..), (x_k,..).
Poly bracket(int i, int j, int k);

// Same determinant with the third column replaced by the f-th unit vector.
Poly frame_bracket(int i, int j, int f);

// Determinant with third column an explicit constant vector.
Poly frame_bracket(int i, int j, std::span<const Rat> v);

// "x_1*y_2*z_3 - 2/3*x_1^2 + 5", terms in canonical order.
std::string to_plain(const Poly& p);

// Reads the plain format above, and also juxtaposed factors such as
// "-x_5y_4y_6z_1z_2z_3+x_4y_5y_6z_1z_2z_3" or "x_{10}". Throws ParseError.
Poly parse_poly(std::string_view text);

}  // namespace plift

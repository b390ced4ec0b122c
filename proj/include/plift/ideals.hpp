#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plift/config.hpp"
#include "plift/lifting.hpp"
#include "plift/poly.hpp"

namespace plift {

// R1, R2, R3 are the standard basis vectors; an explicit point carries its coordinates.
class FramePoint {
 public:
  static FramePoint R(int index);
  static FramePoint explicit_point(QVector coords);

  // 1..3 for R1..R3, 0 for an explicit point.
  int tag() const noexcept { return tag_; }
  const QVector& coords() const noexcept { return coords_; }
  std::string label() const;

 private:
  int tag_ = 1;
  QVector coords_;
};

// [a b P] as a polynomial in the coordinates of a and b.
Poly frame_bracket(int a, int b, const FramePoint& p);

// Line points a < b < c and off-line points with a~m1,m2; b~m2,m3; c~m1,m3.
struct QsPairing {
  std::array<int, 3> onLine;
  std::array<int, 3> offLine;  // m1, m2, m3
};

// Throws InvalidLine unless the line is one of 123, 156, 246, 345.
QsPairing qs_pairing(const std::vector<int>& line);

// [a m1 P1][b m2 P2][c m3 P3] - [a m2 P1][b m3 P2][c m1 P3], unnormalised sign.
Poly qs_raw(const std::vector<int>& line, const FramePoint& p1, const FramePoint& p2,
            const FramePoint& p3);

// qs_raw with canonical sign.
Poly qs_poly(const std::vector<int>& line, const FramePoint& p1, const FramePoint& p2,
             const FramePoint& p3);

// One summand sgn(sigma) * prod of six brackets [u v P^t].
struct G34Summand {
  int sign = 1;
  std::array<std::array<int, 2>, 6> pairs;
};

// Summands for column c (1..4) in the order of the permutations of the
// remaining columns. Throws InvalidColumn.
std::vector<G34Summand> g34_summands(int column);

Poly g34_raw(int column, const std::array<FramePoint, 6>& frames);
Poly g34_poly(int column, const std::array<FramePoint, 6>& frames);

// Numeric values of the bracket products at a realisation, with frame points
// given as explicit vectors (no expansion).
Rat qs_value(const Realisation& r, const std::vector<int>& line,
             const std::array<QVector, 3>& frames);
Rat g34_value(const Realisation& r, int column, const std::array<QVector, 6>& frames);

struct Generator {
  Poly poly;
  std::string label;
  std::uint32_t degree = 0;
  MultiDeg multidegree;
};

struct GeneratorSet {
  std::string idealName;
  int n = 0;
  std::vector<Generator> entries;
};

// Weakly increasing tuples over {1,2,3} of the given length.
std::vector<std::vector<int>> weakly_increasing(std::size_t length);

GeneratorSet qs_generators();
GeneratorSet g34_generators();

// Minor of the symbolic collinearity matrix with entry [P_a P_b] in row slot t
// replaced by [P_a P_b R_{frames[t]}]. Indices are 0-based. Throws SizeMismatch.
Poly extend_minor(const CollinMatrix& pattern, const std::vector<std::size_t>& rowIdx,
                  const std::vector<std::size_t>& colIdx, const std::vector<int>& frames);

// Same minor with entries [P_a P_b P] for an explicit point P.
Poly point_minor(const CollinMatrix& pattern, const std::vector<std::size_t>& rowIdx,
                 const std::vector<std::size_t>& colIdx, const QVector& p);

// Line-triple brackets plus every extension of every k x k minor of the
// symbolic collinearity matrix, k = n - 2 unless given. Throws TooLarge when
// minors * 3^k exceeds `budget`.
GeneratorSet radical_ideal_generators(const Config& c, std::optional<std::size_t> k = std::nullopt,
                                      std::size_t budget = 2'000'000);

// "plain", "cas" or "json". Throws UnknownFormat.
std::string emit(const GeneratorSet& g, std::string_view format);

struct Table1Row {
  std::array<int, 3> ijk;
  std::array<int, 3> generator;
  std::array<std::string, 4> coefficients;  // of [123], [156], [246], [345]
};

const std::vector<Table1Row>& table1_rows();

// QS(l123; R_ijk) - QS(l123; R_gen) - sum coeff * bracket; zero when the row holds.
Poly table1_residual(const Table1Row& row);

struct Table1Result {
  Table1Row row;
  bool pass = false;
};

std::vector<Table1Result> table1_verify();

}  // namespace plift

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plift/config.hpp"
#include "plift/linalg.hpp"

namespace plift {

// Entry sign * [P_a P_b] of the symbolic collinearity matrix; sign 0 is a zero entry.
struct PatternEntry {
  int sign = 0;
  int a = 0;
  int b = 0;
};

struct CollinMatrix {
  Config config;
  std::vector<Triple> rowTriples;
  std::optional<QMatrix> numeric;
  std::optional<QVector> abscissas;

  std::size_t rows() const { return rowTriples.size(); }
  std::size_t cols() const { return static_cast<std::size_t>(config.n); }
  // Symbolic entry at a 0-based position.
  PatternEntry entry(std::size_t row, std::size_t col) const;
};

// One row per 3-subset of each line: lines in config order, triples
// lexicographic within a line.
std::vector<Triple> collin_row_triples(const Config& c);

CollinMatrix collin_pattern(const Config& c);

// Throws DuplicateAbscissa, SizeMismatch.
CollinMatrix build_collin(const Config& c, const QVector& x);

// Entry text such as "[23]", "-[13]" or "0".
std::string entry_text(const PatternEntry& e);

struct LiftSpace {
  std::vector<QVector> basis;
  std::size_t dimension = 0;
  std::vector<QVector> trivialPlane;  // (1,...,1) and (x_1,...,x_n)
  bool hasNontrivial = false;         // dimension >= 3
};

LiftSpace lift_space(const CollinMatrix& m);

enum class LiftKind { Trivial, Degenerate, Realising };

std::string_view to_string(LiftKind k);

struct LiftResult {
  LiftKind kind = LiftKind::Trivial;
  QVector z;
  Realisation realisation;  // columns (x_i, 1, z_i)
};

Realisation lifted_points(const QVector& x, const QVector& z);

// Compares the zero pattern of all 3x3 minors against the configuration.
LiftKind classify(const Config& c, const Realisation& r);

// Random combinations of the lift-space basis; nullopt when dim <= 2.
std::optional<LiftResult> lift(const Config& c, const QVector& x, int attempts, std::uint64_t seed);

// Line-by-line construction along the forest. Throws NotAForest,
// DegenerateParameterCollision.
LiftResult forest_lift(const Config& c, const QVector& x);

// Throws AllZeroLift.
LiftResult epsilon_scale(const LiftResult& l, const Rat& eps);

struct Projection {
  QVector abscissas;
  QVector chartA, chartB;  // point t*A + B has abscissa t
  bool distinct = true;

  QVector chart_point(const Rat& t) const;
};

// Central projection onto `targetLine` (line coefficients). Throws
// CenterOnLine, PointAtCenter, PointAtChartInfinity.
Projection project(const Realisation& r, const QVector& center, const QVector& targetLine);

// Column i becomes scales[i] * T * column_i. Throws SingularTransform, ZeroScale.
Realisation apply_projectivity(const Realisation& r, const QMatrix& T, const QVector& scales);

enum class Verdict { Liftable, NotLiftable, Inconclusive };

std::string_view to_string(Verdict v);

struct ComponentRank {
  std::vector<int> points;
  std::size_t lines = 0;
  std::size_t rank = 0;
  bool liftable = false;
};

struct LiftabilityReport {
  Verdict verdict = Verdict::Inconclusive;
  int omega = 0;
  std::size_t genericRank = 0;
  std::vector<ComponentRank> components;
  int trials = 0;
  bool deterministic = false;
  std::string hypothesis;
  std::string errorBound;
};

// Per component with at least two lines: liftable iff n_K - 3 >= generic
// rank of its collinearity matrix. Single-line components are liftable;
// isolated points are excluded.
LiftabilityReport is_liftable_generic(const Config& c, int trials, std::uint64_t seed,
                                      bool deterministic = false);

enum class QuasiVerdict { QuasiLiftable, NotQuasiLiftable, Inconclusive };

std::string_view to_string(QuasiVerdict v);

struct QuasiReport {
  QuasiVerdict verdict = QuasiVerdict::Inconclusive;
  LiftabilityReport whole;
  std::vector<LiftabilityReport> deletions;
};

QuasiReport is_quasi_liftable(const Config& c, int trials, std::uint64_t seed);

// Rank over Q(x_1..x_n) by fraction-free elimination on polynomial entries.
std::size_t symbolic_rank(const Config& c);

// Distinct integer abscissas drawn from [-bound, bound].
QVector random_abscissas(std::size_t n, std::uint64_t seed, std::int64_t bound = 65536);

}  // namespace plift

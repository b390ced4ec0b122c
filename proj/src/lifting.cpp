#include "plift/lifting.hpp"

#include <algorithm>
#include <set>

#include "plift/error.hpp"
#include "plift/poly.hpp"
#include "plift/random.hpp"

namespace plift {

// ------------------------------------------------------ collinearity matrix

PatternEntry CollinMatrix::entry(std::size_t row, std::size_t col) const {
  const Triple& t = rowTriples.at(row);
  const int p = static_cast<int>(col) + 1;
  if (p == t[0]) return {1, t[1], t[2]};
  if (p == t[1]) return {-1, t[0], t[2]};
  if (p == t[2]) return {1, t[0], t[1]};
  return {};
}

std::vector<Triple> collin_row_triples(const Config& c) {
  std::vector<Triple> rows;
  for (const auto& l : c.lines)
    for (const auto& s : combinations(l.size(), 3)) rows.push_back({l[s[0]], l[s[1]], l[s[2]]});
  return rows;
}

CollinMatrix collin_pattern(const Config& c) {
  require_valid(c);
  CollinMatrix m;
  m.config = c;
  m.rowTriples = collin_row_triples(c);
  return m;
}

namespace {

void require_distinct(const QVector& x) {
  std::vector<Rat> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw Error(ErrorKind::DuplicateAbscissa, "abscissa " + to_string(sorted[i]) + " repeats");
}

}  // namespace

CollinMatrix build_collin(const Config& c, const QVector& x) {
  CollinMatrix m = collin_pattern(c);
  if (x.size() != static_cast<std::size_t>(c.n))
    throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(c.n) + " abscissas");
  require_distinct(x);
  QMatrix num(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const Triple& t = m.rowTriples[r];
    auto xv = [&](int p) -> const Rat& { return x[static_cast<std::size_t>(p - 1)]; };
    num(r, static_cast<std::size_t>(t[0] - 1)) = xv(t[1]) - xv(t[2]);
    num(r, static_cast<std::size_t>(t[1] - 1)) = -(xv(t[0]) - xv(t[2]));
    num(r, static_cast<std::size_t>(t[2] - 1)) = xv(t[0]) - xv(t[1]);
  }
  m.numeric = std::move(num);
  m.abscissas = x;
  return m;
}

std::string entry_text(const PatternEntry& e) {
  if (e.sign == 0) return "0";
  std::string s = e.sign < 0 ? "-[" : "[";
  const bool wide = e.a > 9 || e.b > 9;
  s += std::to_string(e.a) + (wide ? " " : "") + std::to_string(e.b) + "]";
  return s;
}

// ------------------------------------------------------------- lift spaces

LiftSpace lift_space(const CollinMatrix& m) {
  if (!m.numeric) throw Error(ErrorKind::SizeMismatch, "lift space needs a numeric matrix");
  LiftSpace s;
  s.basis = nullspace(*m.numeric);
  s.dimension = s.basis.size();
  s.hasNontrivial = s.dimension >= 3;
  s.trivialPlane = {QVector(m.cols(), Rat(1)), *m.abscissas};
  return s;
}

std::string_view to_string(LiftKind k) {
  switch (k) {
    case LiftKind::Trivial: return "trivial";
    case LiftKind::Degenerate: return "degenerate";
    case LiftKind::Realising: return "realising";
  }
  return "unknown";
}

Realisation lifted_points(const QVector& x, const QVector& z) {
  if (x.size() != z.size()) throw Error(ErrorKind::SizeMismatch, "x and z lengths differ");
  QMatrix r(3, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    r(0, i) = x[i];
    r(1, i) = 1;
    r(2, i) = z[i];
  }
  return r;
}

namespace {

struct Pattern {
  std::size_t mismatches = 0;
  std::size_t zeros = 0;
  std::size_t total = 0;
};

Pattern compare_pattern(const Config& c, const Realisation& r) {
  if (r.rows() != 3 || r.cols() != static_cast<std::size_t>(c.n))
    throw Error(ErrorKind::SizeMismatch, "realisation does not match the configuration size");
  const Rank3Matroid m = circuits(c);
  std::vector<QVector> col(r.cols());
  for (std::size_t i = 0; i < r.cols(); ++i) col[i] = r.column(i);
  Pattern p;
  for (const auto& s : combinations(r.cols(), 3)) {
    const bool zero = sgn(det3(col[s[0]], col[s[1]], col[s[2]])) == 0;
    const bool expected = m.circuits3.count({static_cast<int>(s[0]) + 1, static_cast<int>(s[1]) + 1,
                                             static_cast<int>(s[2]) + 1}) > 0;
    p.zeros += zero;
    p.mismatches += zero != expected;
    ++p.total;
  }
  return p;
}

LiftKind kind_of(const Pattern& p) {
  if (p.mismatches == 0) return LiftKind::Realising;
  if (p.zeros == p.total) return LiftKind::Trivial;
  return LiftKind::Degenerate;
}

}  // namespace

LiftKind classify(const Config& c, const Realisation& r) { return kind_of(compare_pattern(c, r)); }

std::optional<LiftResult> lift(const Config& c, const QVector& x, int attempts, std::uint64_t seed) {
  const CollinMatrix m = build_collin(c, x);
  const LiftSpace space = lift_space(m);
  if (!space.hasNontrivial) return std::nullopt;

  Rng rng(seed);
  std::optional<LiftResult> best;
  std::size_t bestMismatch = 0;
  for (int a = 0; a < std::max(attempts, 1); ++a) {
    QVector z(x.size());
    for (const auto& v : space.basis) {
      const Rat coef = rng.uniform_rat(-10000, 10000);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += coef * v[i];
    }
    Realisation r = lifted_points(x, z);
    const Pattern p = compare_pattern(c, r);
    const LiftKind k = kind_of(p);
    if (k == LiftKind::Realising) return LiftResult{k, std::move(z), std::move(r)};
    const bool better = !best || (k == LiftKind::Degenerate &&
                                  (best->kind == LiftKind::Trivial || p.mismatches < bestMismatch));
    if (better) {
      best = LiftResult{k, std::move(z), std::move(r)};
      bestMismatch = p.mismatches;
    }
  }
  return best;
}

LiftResult forest_lift(const Config& c, const QVector& x) {
  require_valid(c);
  if (x.size() != static_cast<std::size_t>(c.n))
    throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(c.n) + " abscissas");
  require_distinct(x);
  if (!analyze(c).isForest) throw Error(ErrorKind::NotAForest, "configuration graph has a cycle");

  constexpr int kRetries = 64;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Rng rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(attempt));
    std::vector<std::optional<Rat>> z(x.size());
    std::vector<bool> done(c.lines.size(), false);
    for (std::size_t processed = 0; processed < c.lines.size(); ++processed) {
      // Prefer a line already attached to the chased part.
      std::size_t pick = c.lines.size();
      for (std::size_t i = 0; i < c.lines.size() && pick == c.lines.size(); ++i) {
        if (done[i]) continue;
        for (int p : c.lines[i])
          if (z[static_cast<std::size_t>(p - 1)]) {
            pick = i;
            break;
          }
      }
      if (pick == c.lines.size())
        pick = static_cast<std::size_t>(std::find(done.begin(), done.end(), false) - done.begin());
      done[pick] = true;

      // z = slope * x + offset on this line, through its fixed point if any.
      const Rat slope = rng.uniform_rat(-1000, 1000);
      std::optional<Rat> offset;
      for (int p : c.lines[pick]) {
        const auto i = static_cast<std::size_t>(p - 1);
        if (!z[i]) continue;
        const Rat b = *z[i] - slope * x[i];
        if (offset && *offset != b)
          throw Error(ErrorKind::NotAForest, "line meets the chased part twice");
        offset = b;
      }
      if (!offset) offset = rng.uniform_rat(-1000, 1000);
      for (int p : c.lines[pick]) {
        const auto i = static_cast<std::size_t>(p - 1);
        if (!z[i]) z[i] = slope * x[i] + *offset;
      }
    }
    QVector zv(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) zv[i] = z[i] ? *z[i] : rng.uniform_rat(-1000, 1000);
    Realisation r = lifted_points(x, zv);
    if (classify(c, r) == LiftKind::Realising) return {LiftKind::Realising, std::move(zv), std::move(r)};
  }
  throw Error(ErrorKind::DegenerateParameterCollision,
              "no realising parameters after " + std::to_string(kRetries) + " attempts");
}

LiftResult epsilon_scale(const LiftResult& l, const Rat& eps) {
  Rat maxAbs = 0;
  for (const Rat& v : l.z) maxAbs = std::max(maxAbs, abs_rat(v));
  if (sgn(maxAbs) == 0) throw Error(ErrorKind::AllZeroLift, "every z coordinate is zero");
  const Rat factor = eps / (Rat(static_cast<long>(l.z.size())) * maxAbs);
  LiftResult out = l;
  for (std::size_t i = 0; i < out.z.size(); ++i) {
    out.z[i] *= factor;
    out.realisation(2, i) = out.z[i];
  }
  return out;
}

// -------------------------------------------------------------- projection

QVector Projection::chart_point(const Rat& t) const {
  return {t * chartA[0] + chartB[0], t * chartA[1] + chartB[1], t * chartA[2] + chartB[2]};
}

namespace {

Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

Projection project(const Realisation& r, const QVector& center, const QVector& targetLine) {
  if (r.rows() != 3 || center.size() != 3 || targetLine.size() != 3)
    throw Error(ErrorKind::SizeMismatch, "projection works on 3-vectors");
  if (is_zero_vector(targetLine)) throw Error(ErrorKind::CenterOnLine, "target line is zero");
  if (sgn(dot(center, targetLine)) == 0)
    throw Error(ErrorKind::CenterOnLine, "projection center lies on the target line");

  Projection p;
  const auto basis = nullspace(QMatrix(1, 3, {targetLine[0], targetLine[1], targetLine[2]}));
  p.chartA = basis[0];
  p.chartB = basis[1];
  const QVector normal = cross(p.chartA, p.chartB);
  for (std::size_t i = 0; i < r.cols(); ++i) {
    const QVector pt = r.column(i);
    const QVector ray = cross(center, pt);
    if (is_zero_vector(ray))
      throw Error(ErrorKind::PointAtCenter, "point " + std::to_string(i + 1) + " equals the center");
    const QVector q = cross(ray, targetLine);
    const Rat a = dot(cross(q, p.chartB), normal);
    const Rat b = dot(cross(p.chartA, q), normal);
    if (sgn(b) == 0)
      throw Error(ErrorKind::PointAtChartInfinity,
                  "point " + std::to_string(i + 1) + " projects to the chart's point at infinity");
    p.abscissas.push_back(a / b);
  }
  std::vector<Rat> sorted = p.abscissas;
  std::sort(sorted.begin(), sorted.end());
  p.distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return p;
}

Realisation apply_projectivity(const Realisation& r, const QMatrix& T, const QVector& scales) {
  if (T.rows() != 3 || T.cols() != 3) throw Error(ErrorKind::SizeMismatch, "T must be 3x3");
  if (scales.size() != r.cols()) throw Error(ErrorKind::SizeMismatch, "one scale per point");
  if (sgn(determinant(T)) == 0) throw Error(ErrorKind::SingularTransform, "det(T) = 0");
  for (const Rat& s : scales)
    if (sgn(s) == 0) throw Error(ErrorKind::ZeroScale, "scales must be nonzero");
  QMatrix out = T * r;
  for (std::size_t c = 0; c < out.cols(); ++c)
    for (std::size_t i = 0; i < 3; ++i) out(i, c) *= scales[c];
  return out;
}

// ------------------------------------------------------------- liftability

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Liftable: return "liftable";
    case Verdict::NotLiftable: return "not-liftable";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string_view to_string(QuasiVerdict v) {
  switch (v) {
    case QuasiVerdict::QuasiLiftable: return "quasi-liftable";
    case QuasiVerdict::NotQuasiLiftable: return "not-quasi-liftable";
    case QuasiVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

QVector random_abscissas(std::size_t n, std::uint64_t seed, std::int64_t bound) {
  Rng rng(seed);
  std::set<std::int64_t> seen;
  QVector x;
  while (x.size() < n) {
    const std::int64_t v = rng.uniform(-bound, bound);
    if (seen.insert(v).second) x.push_back(rat(v));
  }
  return x;
}

std::size_t symbolic_rank(const Config& c) {
  require_valid(c);
  if (c.n > 12) throw Error(ErrorKind::TooLarge, "symbolic rank is limited to 12 points");
  const CollinMatrix m = collin_pattern(c);
  // Rank is invariant under x -> a*x + b, so x_1 = 0 and x_2 = 1 lose nothing.
  auto coordinate = [](int p) -> Poly {
    if (p == 1) return Poly(0);
    if (p == 2) return Poly(1);
    return Poly::variable({Letter::X, p});
  };
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Poly> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t col = 0; col < cols; ++col) {
      const PatternEntry e = m.entry(r, col);
      if (e.sign != 0) a[r * cols + col] = Rat(e.sign) * (coordinate(e.a) - coordinate(e.b));
    }

  std::size_t rank = 0;
  Poly prev(1);
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rows;
    for (std::size_t i = rank; i < rows; ++i) {
      const Poly& v = a[i * cols + col];
      if (!v.is_zero() && (piv == rows || v.size() < a[piv * cols + col].size())) piv = i;
    }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    const Poly pivot = a[rank * cols + col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const Poly lead = a[i * cols + col];
      for (std::size_t j = col + 1; j < cols; ++j) {
        Poly num = a[i * cols + j] * pivot - lead * a[rank * cols + j];
        auto q = exact_divide(num, prev);
        if (!q) throw Error(ErrorKind::SizeMismatch, "fraction-free step was not exact");
        a[i * cols + j] = std::move(*q);
      }
      a[i * cols + col] = Poly();
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

LiftabilityReport is_liftable_generic(const Config& c, int trials, std::uint64_t seed,
                                      bool deterministic) {
  require_valid(c);
  const ConfigAnalysis an = analyze(c);
  LiftabilityReport rep;
  rep.omega = an.omega;
  rep.trials = trials;
  rep.deterministic = deterministic;
  rep.hypothesis = "every connected component derives from a maximal matroid (caller-asserted)";

  bool undecided = false;
  std::size_t worstRank = 0;
  for (int comp = 0; comp < an.omega; ++comp) {
    ComponentRank cr;
    std::vector<int> newIndex(static_cast<std::size_t>(c.n) + 1, 0);
    for (int p = 1; p <= c.n; ++p)
      if (an.component[static_cast<std::size_t>(p - 1)] == comp) {
        cr.points.push_back(p);
        newIndex[static_cast<std::size_t>(p)] = static_cast<int>(cr.points.size());
      }
    Config sub;
    sub.n = static_cast<int>(cr.points.size());
    for (const auto& l : c.lines) {
      if (an.component[static_cast<std::size_t>(l.front() - 1)] != comp) continue;
      std::vector<int> nl;
      for (int p : l) nl.push_back(newIndex[static_cast<std::size_t>(p)]);
      sub.lines.push_back(std::move(nl));
    }
    cr.lines = sub.lines.size();
    if (cr.lines == 0) continue;  // isolated point
    const std::size_t nk = cr.points.size();
    if (cr.lines == 1) {
      cr.rank = nk - 2;
      cr.liftable = true;
    } else {
      if (deterministic) {
        cr.rank = symbolic_rank(sub);
      } else {
        for (int t = 0; t < trials; ++t) {
          const QVector x = random_abscissas(nk, derive_seed(seed, static_cast<std::uint64_t>(t)));
          cr.rank = std::max(cr.rank, rank(*build_collin(sub, x).numeric));
        }
        if (trials <= 0) undecided = true;
      }
      worstRank = std::max(worstRank, cr.rank);
      cr.liftable = nk >= 3 && nk - 3 >= cr.rank;
    }
    rep.genericRank += cr.rank;
    rep.components.push_back(std::move(cr));
  }

  if (deterministic) {
    rep.errorBound = "exact";
  } else if (worstRank == 0) {
    rep.errorBound = "exact (no component with two or more lines)";
  } else {
    rep.errorBound = "P(observed rank below generic rank) <= (" + std::to_string(worstRank) +
                     "/131073)^" + std::to_string(std::max(trials, 0)) + " per component";
  }
  if (undecided) {
    rep.verdict = Verdict::Inconclusive;
  } else {
    const bool all = std::all_of(rep.components.begin(), rep.components.end(),
                                 [](const ComponentRank& k) { return k.liftable; });
    rep.verdict = all ? Verdict::Liftable : Verdict::NotLiftable;
  }
  return rep;
}

QuasiReport is_quasi_liftable(const Config& c, int trials, std::uint64_t seed) {
  QuasiReport q;
  q.whole = is_liftable_generic(c, trials, seed);
  if (q.whole.verdict == Verdict::Inconclusive) return q;
  bool inconclusive = false, allLiftable = true;
  for (std::size_t l = 0; l < c.lines.size(); ++l) {
    q.deletions.push_back(is_liftable_generic(delete_line(c, l).config, trials, seed));
    inconclusive |= q.deletions.back().verdict == Verdict::Inconclusive;
    allLiftable &= q.deletions.back().verdict == Verdict::Liftable;
  }
  if (q.whole.verdict == Verdict::Liftable) {
    q.verdict = QuasiVerdict::NotQuasiLiftable;
  } else if (inconclusive) {
    q.verdict = QuasiVerdict::Inconclusive;
  } else {
    q.verdict = allLiftable ? QuasiVerdict::QuasiLiftable : QuasiVerdict::NotQuasiLiftable;
  }
  return q;
}

}  // namespace plift

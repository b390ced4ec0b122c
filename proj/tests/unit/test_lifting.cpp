#include <regex>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "plift/error.hpp"
#include "plift/lifting.hpp"
#include "plift/verify.hpp"

using namespace plift;

namespace {

// Printed matrices, rows separated by "\\" and entries by "&".
const char* const kGrid33 = R"([23] & -[13] & [12] & 0 & 0 & 0 & 0 & 0 & 0\\
[47] & 0 & 0 & -[17] & 0 & 0 & [14] & 0 & 0\\
0 & [58] & 0 & 0 & -[28] & 0 & 0 & [25] & 0\\
0 & 0 & [69] & 0 & 0 & -[39] & 0 & 0 & [36] \\
0 & 0 & 0 & [56] & -[46] & [45] & 0 & 0 & 0\\
0 & 0 & 0 & 0 & 0 & 0 & [89] & -[79] & [78])";

const char* const kQs = R"([23] & -[13] & [12] & 0 & 0 & 0 \\
[56] & 0 & 0 & 0 & -[16] & [15] \\
0 & [46] & 0 & -[26] & 0 & [24] \\
0 & 0 & [45] & -[35] & [34] & 0)";

const char* const kG34 = R"([2\,3] & -[1\,3] & [1\,2] & 0 & 0 & 0 & 0 & 0 & 0 & 0 & 0 & 0 \\
0 & 0 & 0 & [5\,6] & -[4\,6] & [4\,5] & 0 & 0 & 0 & 0 & 0 & 0 \\
0 & 0 & 0 & 0 & 0 & 0 & [8\,9] & -[7\,9] & [7\,8] & 0 & 0 & 0 \\
0 & 0 & 0 & 0 & 0 & 0 & 0 & 0 & 0 & [11\,12] & -[10\,12] & [10\,11]\\
[4\,7] & 0 & 0 & -[1\,7] & 0 & 0 & [1\,4] & 0 & 0 & 0 & 0 & 0 \\
[4\,10] & 0 & 0 & -[1\,10] & 0 & 0 & 0 & 0 & 0 &[1\,4] & 0 & 0 \\
[7\,10] & 0 & 0 & 0 & 0 & 0 & -[1 \, 10] & 0 & 0 & [1\,7] & 0 & 0 \\
0 & 0 & 0 & [7 \, 10] & 0 & 0 & -[4 \, 10] & 0 & 0 & [4\,7] & 0 & 0\\
0 & [5\,8] & 0 & 0 & -[2\,8] & 0 & 0 & [2\,5] & 0 & 0 & 0 & 0  \\
0 & [5\,11] & 0 & 0 & -[2\,11] & 0 & 0 & 0 & 0 & 0 & [2\,5] & 0  \\
0 & [8\,11] & 0 & 0 & 0 & 0 & 0 & -[2 \, 11] & 0 & 0 & [2\,8] & 0 \\
0 & 0 & 0 & 0 & [8\, 11] & 0 & 0 & -[5 \, 11] & 0 & 0 & [5\,8] & 0 \\
0 & 0 & [6\,9] & 0 & 0 & -[3\,9] & 0 & 0 & [3\,6] & 0 & 0 & 0  \\
0 & 0 & [6\,12] & 0 & 0 & -[3\,12] & 0 & 0 & 0 & 0 & 0 & [3\,6] \\
0 & 0 & [9\,12] & 0 & 0 & 0 & 0 & 0 & -[3 \, 12] & 0 & 0 & [3\,9] \\
0& 0 & 0 & 0 & 0 & [9\, 12] & 0 & 0 & -[6 \, 12] & 0 & 0 & [6\,9])";

// "[1\,10]" -> "[1 10]", "[2\,3]" -> "[23]", as entry_text writes them.
std::string normalise(std::string cell) {
  cell = std::regex_replace(cell, std::regex(R"(\\,)"), " ");
  std::smatch m;
  const std::string trimmed = std::regex_replace(cell, std::regex(R"(^\s+|\s+$)"), "");
  if (!std::regex_match(trimmed, m, std::regex(R"((-?)\[\s*(\d+)\s+(\d+)\s*\])"))) return trimmed;
  const bool wide = m[2].length() > 1 || m[3].length() > 1;
  return m[1].str() + "[" + m[2].str() + (wide ? " " : "") + m[3].str() + "]";
}

std::vector<std::vector<std::string>> printed(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find("\\\\", start);
    if (end == std::string::npos) end = text.size();
    std::vector<std::string> row;
    std::stringstream ss(text.substr(start, end - start));
    std::string cell;
    while (std::getline(ss, cell, '&')) row.push_back(normalise(cell));
    rows.push_back(row);
    start = end + 2;
  }
  return rows;
}

void check_printed(const Config& c, const char* text) {
  const CollinMatrix p = collin_pattern(c);
  const auto rows = printed(text);
  REQUIRE(rows.size() == p.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == p.cols());
    for (std::size_t j = 0; j < p.cols(); ++j) CHECK(entry_text(p.entry(i, j)) == rows[i][j]);
  }
}

QVector from_chart(const Realisation& r) {
  return project(r, {Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(1)}).abscissas;
}

bool realises(const Config& c, const Realisation& r) {
  return membership(r, circuits(c)).realisesM;
}

}  // namespace

TEST_SUITE("lifting") {
  TEST_CASE("collinearity matrices match the printed ones") {
    check_printed(grid3x3_config(), kGrid33);
    check_printed(quadset_config(), kQs);
    check_printed(grid3x4_config(), kG34);
    CHECK(normalise("-[1 \\, 10]") == "-[1 10]");
  }

  TEST_CASE("numeric entries follow the sign pattern") {
    const QVector x = random_abscissas(6, 5);
    const CollinMatrix m = build_collin(quadset_config(), x);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const PatternEntry e = m.entry(i, j);
        const Rat expected = e.sign == 0 ? Rat(0) : Rat(e.sign * (x[e.a - 1] - x[e.b - 1]));
        CHECK((*m.numeric)(i, j) == expected);
      }
    CHECK_THROWS_AS(build_collin(quadset_config(), {Rat(0), Rat(1), Rat(2), Rat(3), Rat(4), Rat(4)}), Error);
    CHECK_THROWS_AS(build_collin(quadset_config(), {Rat(0), Rat(1)}), Error);
  }

  TEST_CASE("each line block has rank length minus two") {
    Rng rng(51);
    for (int t = 0; t < 200; ++t) {
      const Config c = oracle::random_config(rng, 12, 5, false);
      const CollinMatrix m = build_collin(c, random_abscissas(static_cast<std::size_t>(c.n), rng.next(), 1000));
      std::size_t row = 0;
      for (const auto& l : c.lines) {
        const std::size_t count = l.size() * (l.size() - 1) * (l.size() - 2) / 6;
        std::vector<std::size_t> rows(count), cols(m.cols());
        std::iota(rows.begin(), rows.end(), row);
        std::iota(cols.begin(), cols.end(), 0);
        CHECK(oracle::gauss_rank(m.numeric->submatrix(rows, cols)) == l.size() - 2);
        row += count;
      }
      CHECK(row == m.rows());
    }
  }

  TEST_CASE("trivial lifts are always in the kernel") {
    Rng rng(52);
    for (int t = 0; t < 200; ++t) {
      const Config c = oracle::random_config(rng, 12, 5, false);
      const QVector x = random_abscissas(static_cast<std::size_t>(c.n), rng.next(), 1000);
      const CollinMatrix m = build_collin(c, x);
      CHECK(is_zero_vector(m.numeric->apply(QVector(x.size(), Rat(1)))));
      CHECK(is_zero_vector(m.numeric->apply(x)));
      const LiftSpace s = lift_space(m);
      CHECK(s.dimension == x.size() - oracle::gauss_rank(*m.numeric));
      CHECK(s.dimension >= 2);
      // the trivial plane lies in the span of the basis
      QMatrix b(x.size(), s.dimension);
      for (std::size_t j = 0; j < s.dimension; ++j)
        for (std::size_t i = 0; i < x.size(); ++i) b(i, j) = s.basis[j][i];
      for (const auto& v : s.trivialPlane) {
        QMatrix ext(x.size(), s.dimension + 1);
        for (std::size_t i = 0; i < x.size(); ++i) {
          for (std::size_t j = 0; j < s.dimension; ++j) ext(i, j) = b(i, j);
          ext(i, s.dimension) = v[i];
        }
        CHECK(oracle::gauss_rank(ext) == s.dimension);
      }
    }
  }

  TEST_CASE("lift space examples") {
    CHECK(lift_space(build_collin(grid3x3_config(), random_abscissas(9, 1))).dimension == 3);
    CHECK(lift_space(build_collin(quadset_config(), random_abscissas(6, 1))).dimension == 2);
    CHECK_FALSE(lift_space(build_collin(quadset_config(), random_abscissas(6, 1))).hasNontrivial);
    CHECK_THROWS_AS(lift_space(collin_pattern(quadset_config())), Error);
    SampleSpec spec;
    for (std::uint64_t s = 0; s < 10; ++s) {
      spec.seed = s;
      const auto p = random_projection(sample(spec), s);
      REQUIRE(p);
      CHECK(lift_space(build_collin(quadset_config(), p->abscissas)).dimension >= 3);
    }
  }

  TEST_CASE("lift examples") {
    const QVector x = random_abscissas(9, 2);
    const auto g = lift(grid3x3_config(), x, 32, 0);
    REQUIRE(g);
    CHECK(g->kind == LiftKind::Realising);
    CHECK(from_chart(g->realisation) == x);
    CHECK(realises(grid3x3_config(), g->realisation));

    CHECK_FALSE(lift(quadset_config(), random_abscissas(6, 3), 32, 0));

    SampleSpec spec;
    spec.seed = 12;
    const auto p = random_projection(sample(spec), 12);
    REQUIRE(p);
    const auto q = lift(quadset_config(), p->abscissas, 32, 0);
    REQUIRE(q);
    CHECK(q->kind == LiftKind::Realising);
    CHECK(realises(quadset_config(), q->realisation));

    CHECK_THROWS_AS(lift(quadset_config(), {Rat(0), Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)}, 4, 0), Error);
  }

  TEST_CASE("lift output satisfies every collinearity") {
    Rng rng(53);
    for (int t = 0; t < 60; ++t) {
      const Config c = oracle::random_config(rng, 10, 4, t % 2 == 0);
      const QVector x = random_abscissas(static_cast<std::size_t>(c.n), rng.next(), 1000);
      const auto l = lift(c, x, 8, rng.next());
      if (!l) continue;
      for (const auto& line : c.lines)
        for (std::size_t i = 2; i < line.size(); ++i)
          CHECK(oracle::det3(oracle::col(l->realisation, line[0]), oracle::col(l->realisation, line[1]),
                             oracle::col(l->realisation, line[i])) == 0);
      CHECK(from_chart(l->realisation) == x);
    }
  }

  TEST_CASE("classify examples") {
    const QVector x = random_abscissas(6, 4);
    CHECK(classify(quadset_config(), lifted_points(x, QVector(6, Rat(0)))) == LiftKind::Trivial);
    SampleSpec spec;
    spec.seed = 4;
    const Realisation qs = sample(spec);
    CHECK(classify(quadset_config(), qs) == LiftKind::Realising);
    // A genuine quadrilateral set read as a 3x3-free config of 6 points is degenerate.
    CHECK(classify(Config{6, {{1, 2, 3}}}, qs) == LiftKind::Degenerate);
  }

  TEST_CASE("forest lift examples") {
    for (const Config& c : {forest_two_lines_config(), forest_path_config(), forest_star_config(),
                            Config{5, {{1, 2, 3, 4, 5}}}}) {
      const QVector x = random_abscissas(static_cast<std::size_t>(c.n), 6);
      const LiftResult l = forest_lift(c, x);
      CHECK(l.kind == LiftKind::Realising);
      CHECK(realises(c, l.realisation));
      CHECK(from_chart(l.realisation) == x);
    }
    CHECK_THROWS_AS(forest_lift(quadset_config(), random_abscissas(6, 1)), Error);
    try {
      forest_lift(quadset_config(), random_abscissas(6, 1));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotAForest);
    }
  }

  TEST_CASE("forest lift then projection is the identity on random forests") {
    Rng rng(54);
    for (int t = 0; t < 100; ++t) {
      const Config c = oracle::random_config(rng, 12, 5, true);
      const QVector x = random_abscissas(static_cast<std::size_t>(c.n), rng.next(), 1000);
      const LiftResult l = forest_lift(c, x);
      CHECK(l.kind == LiftKind::Realising);
      CHECK(realises(c, l.realisation));
      CHECK(from_chart(l.realisation) == x);
    }
  }

  TEST_CASE("epsilon scaling examples") {
    SampleSpec spec;
    spec.seed = 21;
    const auto p = random_projection(sample(spec), 21);
    REQUIRE(p);
    const auto q = lift(quadset_config(), p->abscissas, 32, 0);
    REQUIRE(q);
    REQUIRE(q->kind == LiftKind::Realising);
    const LiftResult s = epsilon_scale(*q, rat(1, 1000));
    CHECK(s.kind == LiftKind::Realising);
    for (const Rat& z : s.z) CHECK(abs(z) <= rat(1, 6000));
    const LiftResult twice = epsilon_scale(epsilon_scale(*q, rat(1, 7)), rat(3, 5));
    CHECK(twice.kind == q->kind);

    LiftResult trivial;
    trivial.z = {Rat(1), Rat(1), Rat(1)};
    trivial.realisation = lifted_points({Rat(0), Rat(1), Rat(2)}, trivial.z);
    trivial.kind = LiftKind::Trivial;
    CHECK(epsilon_scale(trivial, rat(1, 2)).kind == LiftKind::Trivial);

    LiftResult zero;
    zero.z = QVector(3, Rat(0));
    zero.realisation = lifted_points({Rat(0), Rat(1), Rat(2)}, zero.z);
    CHECK_THROWS_AS(epsilon_scale(zero, rat(1, 2)), Error);
  }

  TEST_CASE("epsilon scaling preserves the minor zero pattern") {
    Rng rng(55);
    for (int t = 0; t < 50; ++t) {
      const Config c = oracle::random_config(rng, 9, 4, true);
      const LiftResult l = forest_lift(c, random_abscissas(static_cast<std::size_t>(c.n), rng.next(), 500));
      const LiftResult s = epsilon_scale(l, rat(rng.uniform(1, 100), rng.uniform(100, 10000)));
      for (int a = 1; a <= c.n; ++a)
        for (int b = a + 1; b <= c.n; ++b)
          for (int d = b + 1; d <= c.n; ++d) {
            const bool z1 = oracle::det3(oracle::col(l.realisation, a), oracle::col(l.realisation, b),
                                         oracle::col(l.realisation, d)) == 0;
            const bool z2 = oracle::det3(oracle::col(s.realisation, a), oracle::col(s.realisation, b),
                                         oracle::col(s.realisation, d)) == 0;
            CHECK(z1 == z2);
          }
    }
  }

  TEST_CASE("projection examples") {
    SampleSpec spec;
    spec.kind = SampleSpec::Kind::Grid;
    spec.seed = 8;
    const Realisation g = sample(spec);
    const QVector center{Rat(101), Rat(-37), Rat(59)};
    const QVector line{Rat(3), Rat(-7), Rat(11)};
    const Projection p = project(g, center, line);
    CHECK(p.distinct);
    CHECK(p.abscissas.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
      const QVector q = p.chart_point(p.abscissas[i]);
      // q lies on the target line and on the line through the center and the point
      CHECK(q[0] * line[0] + q[1] * line[1] + q[2] * line[2] == 0);
      CHECK(oracle::det3(center, g.column(i), q) == 0);
    }
    CHECK_THROWS_AS(project(g, {Rat(0), Rat(0), Rat(1)}, {Rat(1), Rat(0), Rat(0)}), Error);
    QMatrix at = g;
    for (std::size_t i = 0; i < 3; ++i) at(i, 0) = center[i];
    CHECK_THROWS_AS(project(at, center, line), Error);
    // Two points on one line through the center project to the same abscissa.
    const QMatrix same{{Rat(1), Rat(1), Rat(2)}, {Rat(1), Rat(1), Rat(1)}, {Rat(0), Rat(5), Rat(0)}};
    const Projection d = project(same, {Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(1)});
    CHECK_FALSE(d.distinct);
  }

  TEST_CASE("projectivity examples") {
    SampleSpec spec;
    spec.seed = 9;
    const Realisation qs = sample(spec);
    CHECK(apply_projectivity(qs, QMatrix::identity(3), QVector(6, Rat(1))) == qs);
    Rng rng(56);
    for (int t = 0; t < 50; ++t) {
      QMatrix T = oracle::random_matrix(rng, 3, 3, 20);
      if (oracle::cofactor_det(T) == 0) continue;
      QVector scales;
      for (int i = 0; i < 6; ++i) scales.push_back(rat(rng.uniform(1, 30), rng.uniform(1, 30)) * (i % 2 ? -1 : 1));
      const Realisation moved = apply_projectivity(qs, T, scales);
      CHECK(config_of_realisation(moved) == quadset_config());
      for (int l = 0; l < 4; ++l)
        CHECK(oracle::qs_value(moved, l, {oracle::unit(1), oracle::unit(2), oracle::unit(3)}) == 0);
    }
    QMatrix singular(3, 3);
    CHECK_THROWS_AS(apply_projectivity(qs, singular, QVector(6, Rat(1))), Error);
    QVector zeroScale(6, Rat(1));
    zeroScale[2] = 0;
    CHECK_THROWS_AS(apply_projectivity(qs, QMatrix::identity(3), zeroScale), Error);
  }

  TEST_CASE("liftability verdicts") {
    const auto g33 = is_liftable_generic(grid3x3_config(), 8, 0);
    CHECK(g33.verdict == Verdict::Liftable);
    CHECK(g33.genericRank == 6);
    const auto qs = is_liftable_generic(quadset_config(), 8, 0);
    CHECK(qs.verdict == Verdict::NotLiftable);
    CHECK(qs.genericRank == 4);
    CHECK(is_liftable_generic(grid3x4_config(), 8, 0).verdict == Verdict::NotLiftable);
    CHECK(is_liftable_generic(grid3x4_config(), 8, 0).genericRank == 10);
    for (const Config& c : {forest_two_lines_config(), forest_path_config(), forest_star_config()})
      CHECK(is_liftable_generic(c, 8, 0).verdict == Verdict::Liftable);
    CHECK(is_liftable_generic(quadset_config(), 8, 0, true).verdict == Verdict::NotLiftable);
    CHECK(is_liftable_generic(grid3x3_config(), 8, 0, true).errorBound == "exact");
    CHECK(is_liftable_generic(Config{6, {{1, 2, 3}, {4, 5, 6}}}, 8, 0).omega == 2);
  }

  TEST_CASE("quasi-liftability verdicts") {
    CHECK(is_quasi_liftable(quadset_config(), 8, 0).verdict == QuasiVerdict::QuasiLiftable);
    CHECK(is_quasi_liftable(grid3x4_config(), 8, 0).verdict == QuasiVerdict::QuasiLiftable);
    CHECK(is_quasi_liftable(grid3x3_config(), 8, 0).verdict == QuasiVerdict::NotQuasiLiftable);
  }

  TEST_CASE("liftability is monotone under line deletion") {
    for (const Config& c : {grid3x3_config(), forest_two_lines_config(), forest_path_config(),
                            forest_star_config()}) {
      REQUIRE(is_liftable_generic(c, 8, 1).verdict == Verdict::Liftable);
      for (std::size_t l = 0; l < c.lines.size(); ++l)
        CHECK(is_liftable_generic(delete_line(c, l).config, 8, 1).verdict == Verdict::Liftable);
    }
  }

  TEST_CASE("symbolic rank equals the generic numeric rank") {
    CHECK(symbolic_rank(quadset_config()) == 4);
    CHECK(symbolic_rank(grid3x3_config()) == 6);
    CHECK(symbolic_rank(grid3x4_config()) == 10);
    Rng rng(57);
    for (int t = 0; t < 20; ++t) {
      const Config c = oracle::random_config(rng, 9, 4, false);
      std::size_t best = 0;
      for (int s = 0; s < 4; ++s)
        best = std::max(best, oracle::gauss_rank(*build_collin(c, random_abscissas(static_cast<std::size_t>(c.n),
                                                                                   rng.next()))
                                                      .numeric));
      CHECK(symbolic_rank(c) == best);
    }
  }
}

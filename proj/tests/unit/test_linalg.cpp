#include <tuple>

#include "doctest.h"
#include "oracles.hpp"
#include "plift/error.hpp"
#include "plift/lifting.hpp"
#include "plift/linalg.hpp"

using namespace plift;

namespace {

// Λ_QS typed from its printed form, [ij] = x_i - x_j.
QMatrix printed_qs_lambda(const QVector& x) {
  auto b = [&](int i, int j) { return Rat(x[i - 1] - x[j - 1]); };
  const Rat z = 0;
  return QMatrix{{b(2, 3), -b(1, 3), b(1, 2), z, z, z},
                 {b(5, 6), z, z, z, -b(1, 6), b(1, 5)},
                 {z, b(4, 6), z, -b(2, 6), z, b(2, 4)},
                 {z, z, b(4, 5), -b(3, 5), b(3, 4), z}};
}

QVector iota_x(int n) {
  QVector x;
  for (int i = 0; i < n; ++i) x.push_back(Rat(i));
  return x;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rationals stay in lowest terms") {
    const Rat r = parse_rat("-6/4");
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 2);
    CHECK(to_string(parse_rat("10/5")) == "2");
    CHECK_THROWS_AS(parse_rat("1/0"), Error);
    CHECK_THROWS_AS(parse_rat("abc"), Error);
    CHECK_THROWS_AS(parse_rat("6/-4"), Error);
  }

  TEST_CASE("rank examples") {
    CHECK(rank(QMatrix(4, 6)) == 0);
    CHECK(rank(QMatrix::identity(3)) == 3);
    CHECK(rank(QMatrix()) == 0);
    const QMatrix lq = printed_qs_lambda(iota_x(6));
    CHECK(oracle::gauss_rank(lq) == 4);
    CHECK(rank(lq) == 4);
  }

  TEST_CASE("nullspace examples") {
    CHECK(nullspace(QMatrix::identity(3)).empty());
    CHECK(nullspace(QMatrix(1, 3)).size() == 3);
    const QVector x = random_abscissas(9, 7);
    const CollinMatrix m = build_collin(grid3x3_config(), x);
    CHECK(oracle::gauss_rank(*m.numeric) == 6);
    CHECK(nullspace(*m.numeric).size() == 3);
  }

  TEST_CASE("minor examples") {
    const QMatrix id = QMatrix::identity(3);
    CHECK(minor(id, std::vector<std::size_t>{}, std::vector<std::size_t>{}) == 1);
    CHECK(minor(id, std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{0, 2}) == 0);
    CHECK_THROWS_AS(minor(id, std::vector<std::size_t>{0, 3}, std::vector<std::size_t>{0, 1}), Error);
    CHECK_THROWS_AS(minor(id, std::vector<std::size_t>{0}, std::vector<std::size_t>{0, 1}), Error);
  }

  TEST_CASE("minor of the QS matrix matches QS with R3 frames at chart points") {
    // Points (x_i, 1, 0) make [P_a P_b R3] = x_a - x_b.
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const QVector x = trial == 0 ? iota_x(6) : random_abscissas(6, rng.next(), 1000);
      QMatrix pts(3, 6);
      for (std::size_t i = 0; i < 6; ++i) {
        pts(0, i) = x[i];
        pts(1, i) = 1;
      }
      const Rat qs = oracle::qs_value(pts, 0, {oracle::unit(3), oracle::unit(3), oracle::unit(3)});
      const Rat m = minor(printed_qs_lambda(x), std::vector<std::size_t>{1, 2, 3},
                          std::vector<std::size_t>{3, 4, 5});
      CHECK(m == -qs);
    }
  }

  TEST_CASE("all_minors examples") {
    const auto one = all_minors(QMatrix::identity(2), 2);
    REQUIRE(one.size() == 1);
    CHECK(one[0].rows == std::vector<std::size_t>{0, 1});
    CHECK(one[0].cols == std::vector<std::size_t>{0, 1});
    CHECK(one[0].value == 1);
    CHECK_THROWS_AS(all_minors(QMatrix::identity(2), 3), Error);

    const CollinMatrix g = build_collin(grid3x4_config(), random_abscissas(12, 3));
    std::size_t count = 0, nonzero = 0;
    for_each_minor(*g.numeric, 10, [&](const MinorEntry& e) {
      ++count;
      nonzero += sgn(e.value) != 0;
    });
    CHECK(count == 8008 * 66);
    CHECK(nonzero > 0);
  }

  TEST_CASE("all_minors order is lexicographic and values agree with cofactor expansion") {
    Rng rng(5);
    const QMatrix m = oracle::random_matrix(rng, 4, 5, 20);
    const auto entries = all_minors(m, 3);
    REQUIRE(entries.size() == 4 * 10);
    for (std::size_t i = 1; i < entries.size(); ++i)
      CHECK(std::tie(entries[i - 1].rows, entries[i - 1].cols) < std::tie(entries[i].rows, entries[i].cols));
    for (const auto& e : entries) CHECK(e.value == oracle::cofactor_det(m.submatrix(e.rows, e.cols)));
  }

  TEST_CASE("determinant agrees with cofactor expansion on 1000 random matrices") {
    Rng rng(2024);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
      QMatrix m = oracle::random_matrix(rng, n, n, 65536);
      if (t % 10 == 0 && n > 1)  // force singular
        for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j) * 3;
      if (t % 7 == 0) m(0, 0) = rat(rng.uniform(-9, 9), rng.uniform(1, 9));
      CHECK(determinant(m) == oracle::cofactor_det(m));
    }
  }

  TEST_CASE("rank-nullity and kernel membership") {
    Rng rng(99);
    for (int t = 0; t < 300; ++t) {
      const std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 7));
      const std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 7));
      const std::size_t r = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(std::min(rows, cols))));
      // product of rows x r and r x cols has rank <= r, generically r
      const QMatrix m = oracle::random_matrix(rng, rows, r, 50) * oracle::random_matrix(rng, r, cols, 50);
      const auto ns = nullspace(m);
      CHECK(rank(m) == oracle::gauss_rank(m));
      CHECK(rank(m) + ns.size() == cols);
      for (const auto& v : ns) {
        CHECK(is_zero_vector(m.apply(v)));
        const auto lead = std::find_if(v.begin(), v.end(), [](const Rat& q) { return q != 0; });
        REQUIRE(lead != v.end());
        CHECK(*lead == 1);
      }
    }
  }

  TEST_CASE("rank invariant under permutations and row scaling") {
    Rng rng(123);
    for (int t = 0; t < 200; ++t) {
      const QMatrix m = oracle::random_matrix(rng, 3, 2, 5) * oracle::random_matrix(rng, 2, 5, 5);
      std::vector<std::size_t> rp{2, 0, 1}, cp{4, 1, 3, 0, 2};
      QMatrix p(3, 5);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j) p(i, j) = m(rp[i], cp[j]);
      QMatrix s = m;
      const Rat f = rat(rng.uniform(1, 50), rng.uniform(1, 50));
      for (std::size_t j = 0; j < 5; ++j) s(1, j) *= -f;
      CHECK(rank(p) == rank(m));
      CHECK(rank(s) == rank(m));
    }
  }

  TEST_CASE("reduced row echelon form is canonical") {
    Rng rng(8);
    const QMatrix a = oracle::random_matrix(rng, 2, 4, 9);
    const QMatrix mix = QMatrix{{Rat(2), Rat(1)}, {Rat(-1), Rat(3)}} * a;
    CHECK(reduced_row_echelon(a).reduced == reduced_row_echelon(mix).reduced);
    CHECK(nullspace(a) == nullspace(mix));
  }

  TEST_CASE("cross and det3") {
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
      const QVector a = oracle::random_vec3(rng, 30), b = oracle::random_vec3(rng, 30),
                    c = oracle::random_vec3(rng, 30);
      CHECK(det3(a, b, c) == oracle::det3(a, b, c));
      const QVector n = cross(a, b);
      CHECK(oracle::det3(a, b, n) == n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    }
  }
}

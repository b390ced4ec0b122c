#include "plift/ideals.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "plift/error.hpp"

namespace plift {

// ------------------------------------------------------------ frame points

FramePoint FramePoint::R(int index) {
  if (index < 1 || index > 3) throw Error(ErrorKind::IndexOutOfRange, "frame index must be 1..3");
  FramePoint p;
  p.tag_ = index;
  p.coords_ = {0, 0, 0};
  p.coords_[static_cast<std::size_t>(index - 1)] = 1;
  return p;
}

FramePoint FramePoint::explicit_point(QVector coords) {
  if (coords.size() != 3) throw Error(ErrorKind::SizeMismatch, "frame point needs 3 coordinates");
  FramePoint p;
  p.tag_ = 0;
  p.coords_ = std::move(coords);
  return p;
}

std::string FramePoint::label() const {
  if (tag_ > 0) return "R" + std::to_string(tag_);
  return "(" + to_string(coords_[0]) + "," + to_string(coords_[1]) + "," + to_string(coords_[2]) + ")";
}

Poly frame_bracket(int a, int b, const FramePoint& p) {
  if (p.tag() > 0) return frame_bracket(a, b, p.tag());
  return frame_bracket(a, b, std::span<const Rat>(p.coords()));
}

// ---------------------------------------------------------------------- QS

QsPairing qs_pairing(const std::vector<int>& line) {
  const Config qs = quadset_config();
  if (std::find(qs.lines.begin(), qs.lines.end(), line) == qs.lines.end())
    throw Error(ErrorKind::InvalidLine, "not a line of the quadrilateral set");
  // Off-line partners of p: the other points on the second line through p.
  auto partners = [&](int p) {
    std::vector<int> out;
    for (const auto& l : qs.lines) {
      if (l == line || std::find(l.begin(), l.end(), p) == l.end()) continue;
      for (int q : l)
        if (q != p) out.push_back(q);
    }
    return out;
  };
  const int a = line[0], b = line[1], c = line[2];
  const auto pa = partners(a), pb = partners(b);
  int m2 = 0;
  for (int q : pa)
    if (std::find(pb.begin(), pb.end(), q) != pb.end()) m2 = q;
  const int m1 = pa[0] == m2 ? pa[1] : pa[0];
  const int m3 = pb[0] == m2 ? pb[1] : pb[0];
  return {{a, b, c}, {m1, m2, m3}};
}

Poly qs_raw(const std::vector<int>& line, const FramePoint& p1, const FramePoint& p2,
            const FramePoint& p3) {
  const QsPairing q = qs_pairing(line);
  const auto [a, b, c] = q.onLine;
  const auto [m1, m2, m3] = q.offLine;
  return frame_bracket(a, m1, p1) * frame_bracket(b, m2, p2) * frame_bracket(c, m3, p3) -
         frame_bracket(a, m2, p1) * frame_bracket(b, m3, p2) * frame_bracket(c, m1, p3);
}

Poly qs_poly(const std::vector<int>& line, const FramePoint& p1, const FramePoint& p2,
             const FramePoint& p3) {
  return canonical_sign(qs_raw(line, p1, p2, p3));
}

// --------------------------------------------------------------------- G34

std::vector<G34Summand> g34_summands(int column) {
  if (column < 1 || column > 4) throw Error(ErrorKind::InvalidColumn, "column must be 1..4");
  auto point = [](int row, int col) { return 3 * (col - 1) + row; };
  std::vector<int> rest;
  for (int k = 1; k <= 4; ++k)
    if (k != column) rest.push_back(k);

  std::vector<G34Summand> out;
  std::array<int, 3> sigma{0, 1, 2};
  do {
    G34Summand s;
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) inversions += sigma[i] > sigma[j];
    s.sign = inversions % 2 == 0 ? 1 : -1;
    std::array<int, 3> rowOfColumn{};
    for (int row = 1; row <= 3; ++row) {
      const int t = sigma[static_cast<std::size_t>(row - 1)];
      rowOfColumn[static_cast<std::size_t>(t)] = row;
      s.pairs[static_cast<std::size_t>(row - 1)] = {point(row, column), point(row, rest[static_cast<std::size_t>(t)])};
    }
    for (int t = 0; t < 3; ++t) {
      std::array<int, 2> q{};
      int n = 0;
      for (int row = 1; row <= 3; ++row)
        if (row != rowOfColumn[static_cast<std::size_t>(t)]) q[static_cast<std::size_t>(n++)] = point(row, rest[static_cast<std::size_t>(t)]);
      s.pairs[static_cast<std::size_t>(3 + t)] = q;
    }
    out.push_back(s);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

Poly g34_raw(int column, const std::array<FramePoint, 6>& frames) {
  Poly total;
  for (const auto& s : g34_summands(column)) {
    Poly prod(s.sign);
    for (std::size_t t = 0; t < 6; ++t) prod = prod * frame_bracket(s.pairs[t][0], s.pairs[t][1], frames[t]);
    total += prod;
  }
  return total;
}

Poly g34_poly(int column, const std::array<FramePoint, 6>& frames) {
  return canonical_sign(g34_raw(column, frames));
}

namespace {

Rat bracket_value(const Realisation& r, int a, int b, const QVector& p) {
  const QVector ca = r.column(static_cast<std::size_t>(a - 1));
  const QVector cb = r.column(static_cast<std::size_t>(b - 1));
  return det3(ca, cb, p);
}

}  // namespace

Rat qs_value(const Realisation& r, const std::vector<int>& line,
             const std::array<QVector, 3>& frames) {
  const QsPairing q = qs_pairing(line);
  const auto [a, b, c] = q.onLine;
  const auto [m1, m2, m3] = q.offLine;
  return bracket_value(r, a, m1, frames[0]) * bracket_value(r, b, m2, frames[1]) *
             bracket_value(r, c, m3, frames[2]) -
         bracket_value(r, a, m2, frames[0]) * bracket_value(r, b, m3, frames[1]) *
             bracket_value(r, c, m1, frames[2]);
}

Rat g34_value(const Realisation& r, int column, const std::array<QVector, 6>& frames) {
  Rat total = 0;
  for (const auto& s : g34_summands(column)) {
    Rat prod = s.sign;
    for (std::size_t t = 0; t < 6 && sgn(prod) != 0; ++t)
      prod *= bracket_value(r, s.pairs[t][0], s.pairs[t][1], frames[t]);
    total += prod;
  }
  return total;
}

// -------------------------------------------------------------- generators

std::vector<std::vector<int>> weakly_increasing(std::size_t length) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(length, 1);
  while (true) {
    out.push_back(t);
    std::size_t i = length;
    while (i > 0 && t[i - 1] == 3) --i;
    if (i == 0) break;
    const int v = t[i - 1] + 1;
    for (std::size_t j = i - 1; j < length; ++j) t[j] = v;
  }
  return out;
}

namespace {

std::string frames_label(const std::vector<int>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ",R" : "R") + std::to_string(t[i]);
  return s;
}

std::string triple_label(int a, int b, int c) {
  const bool wide = a > 9 || b > 9 || c > 9;
  const std::string sep = wide ? " " : "";
  return "[" + std::to_string(a) + sep + std::to_string(b) + sep + std::to_string(c) + "]";
}

Generator make_generator(Poly p, std::string label, int n) {
  Generator g;
  g.degree = p.degree();
  g.multidegree = multidegree(p, n).value_or(MultiDeg{});
  g.poly = std::move(p);
  g.label = std::move(label);
  return g;
}

void add_line_brackets(GeneratorSet& g, const Config& c) {
  for (const auto& t : collin_row_triples(c))
    g.entries.push_back(make_generator(canonical_sign(bracket(t[0], t[1], t[2])),
                                       triple_label(t[0], t[1], t[2]), c.n));
}

}  // namespace

GeneratorSet qs_generators() {
  GeneratorSet g;
  g.idealName = "I_QS";
  g.n = 6;
  add_line_brackets(g, quadset_config());
  const std::vector<int> l123{1, 2, 3};
  for (const auto& t : weakly_increasing(3))
    g.entries.push_back(make_generator(
        qs_poly(l123, FramePoint::R(t[0]), FramePoint::R(t[1]), FramePoint::R(t[2])),
        "QS(l123;" + frames_label(t) + ")", 6));
  return g;
}

GeneratorSet g34_generators() {
  GeneratorSet g;
  g.idealName = "I_G34";
  g.n = 12;
  add_line_brackets(g, grid3x4_config());
  for (const auto& t : weakly_increasing(6)) {
    std::array<FramePoint, 6> f{FramePoint::R(t[0]), FramePoint::R(t[1]), FramePoint::R(t[2]),
                                FramePoint::R(t[3]), FramePoint::R(t[4]), FramePoint::R(t[5])};
    g.entries.push_back(make_generator(g34_poly(1, f), "G34(c1;" + frames_label(t) + ")", 12));
  }
  return g;
}

// --------------------------------------------------------- minor extension

namespace {

// Signed nonzero Leibniz products of the selected minor: for each, the
// column chosen in every row slot.
void leibniz(const CollinMatrix& m, const std::vector<std::size_t>& rows,
             const std::vector<std::size_t>& cols, std::size_t slot, std::vector<bool>& used,
             std::vector<std::size_t>& choice, int sign,
             const std::function<void(int, const std::vector<std::size_t>&)>& sink) {
  if (slot == rows.size()) {
    sink(sign, choice);
    return;
  }
  // Choosing column j after `slot` rows: its position among unused columns
  // gives the parity contribution.
  int position = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (used[j]) continue;
    if (m.entry(rows[slot], cols[j]).sign != 0) {
      used[j] = true;
      choice[slot] = j;
      leibniz(m, rows, cols, slot + 1, used, choice, position % 2 == 0 ? sign : -sign, sink);
      used[j] = false;
    }
    ++position;
  }
}

void check_minor_args(const CollinMatrix& m, const std::vector<std::size_t>& rowIdx,
                      const std::vector<std::size_t>& colIdx) {
  if (rowIdx.size() != colIdx.size())
    throw Error(ErrorKind::SizeMismatch, "row and column index sets differ in size");
  for (std::size_t r : rowIdx)
    if (r >= m.rows()) throw Error(ErrorKind::IndexOutOfRange, "row index out of range");
  for (std::size_t c : colIdx)
    if (c >= m.cols()) throw Error(ErrorKind::IndexOutOfRange, "column index out of range");
}

template <class EntryFn>
Poly expand_minor(const CollinMatrix& m, const std::vector<std::size_t>& rowIdx,
                  const std::vector<std::size_t>& colIdx, EntryFn entry) {
  Poly total;
  std::vector<bool> used(colIdx.size(), false);
  std::vector<std::size_t> choice(rowIdx.size());
  leibniz(m, rowIdx, colIdx, 0, used, choice, 1, [&](int sign, const std::vector<std::size_t>& ch) {
    Poly prod(sign);
    for (std::size_t t = 0; t < ch.size(); ++t) {
      const PatternEntry e = m.entry(rowIdx[t], colIdx[ch[t]]);
      prod = prod * (Rat(e.sign) * entry(t, e));
    }
    total += prod;
  });
  return total;
}

}  // namespace

Poly extend_minor(const CollinMatrix& pattern, const std::vector<std::size_t>& rowIdx,
                  const std::vector<std::size_t>& colIdx, const std::vector<int>& frames) {
  check_minor_args(pattern, rowIdx, colIdx);
  if (frames.size() != rowIdx.size())
    throw Error(ErrorKind::SizeMismatch, "one frame index per row slot");
  return expand_minor(pattern, rowIdx, colIdx, [&](std::size_t t, const PatternEntry& e) {
    return frame_bracket(e.a, e.b, frames[t]);
  });
}

Poly point_minor(const CollinMatrix& pattern, const std::vector<std::size_t>& rowIdx,
                 const std::vector<std::size_t>& colIdx, const QVector& p) {
  check_minor_args(pattern, rowIdx, colIdx);
  return expand_minor(pattern, rowIdx, colIdx, [&](std::size_t, const PatternEntry& e) {
    return frame_bracket(e.a, e.b, std::span<const Rat>(p));
  });
}

namespace {

std::string index_label(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
  return s + "}";
}

std::vector<std::vector<int>> all_frame_tuples(std::size_t k) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(k, 1);
  while (true) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] == 3) t[--i] = 1;
    if (i == 0) break;
    ++t[i - 1];
  }
  return out;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

GeneratorSet radical_ideal_generators(const Config& c, std::optional<std::size_t> k,
                                      std::size_t budget) {
  const CollinMatrix m = collin_pattern(c);
  GeneratorSet g;
  g.idealName = "I_ext";
  g.n = c.n;
  add_line_brackets(g, c);

  const std::size_t size = k.value_or(c.n >= 2 ? static_cast<std::size_t>(c.n - 2) : 0);
  if (size == 0 || size > std::min(m.rows(), m.cols())) return g;
  std::size_t work = binom(m.rows(), size) * binom(m.cols(), size);
  for (std::size_t i = 0; i < size && work <= budget; ++i) work *= 3;
  if (work > budget)
    throw Error(ErrorKind::TooLarge, std::to_string(size) + "-minors times 3^" +
                                         std::to_string(size) + " extensions exceed the budget");

  std::set<std::string> seen;
  for (const auto& gen : g.entries) seen.insert(to_plain(gen.poly));
  const auto tuples = all_frame_tuples(size);
  for (const auto& rows : combinations(m.rows(), size))
    for (const auto& cols : combinations(m.cols(), size))
      for (const auto& t : tuples) {
        Poly p = canonical_sign(extend_minor(m, rows, cols, t));
        if (p.is_zero()) continue;
        if (!seen.insert(to_plain(p)).second) continue;
        g.entries.push_back(make_generator(
            std::move(p), "ext(rows=" + index_label(rows) + ",cols=" + index_label(cols) + ";" +
                              frames_label(t) + ")",
            c.n));
      }
  return g;
}

// ---------------------------------------------------------------- emission

namespace {

std::string ring_variables(int n) {
  std::string s;
  for (int p = 1; p <= n; ++p)
    for (int l = 0; l < 3; ++l) {
      if (!s.empty()) s += ",";
      s += var_name({static_cast<Letter>(l), p});
    }
  return s;
}

nlohmann::ordered_json poly_json(const Poly& p) {
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::ordered_json exps = nlohmann::ordered_json::object();
    for (const auto& [var, e] : m.factors()) exps[var_name(VarId::from_index(var))] = e;
    terms.push_back({{"coeff", to_string(c)}, {"exps", exps}});
  }
  return terms;
}

}  // namespace

std::string emit(const GeneratorSet& g, std::string_view format) {
  std::ostringstream out;
  if (format == "plain") {
    out << "# " << g.idealName << ": " << g.entries.size() << " generators in "
        << 3 * g.n << " variables\n";
    for (const auto& e : g.entries) out << e.label << ": " << to_plain(e.poly) << "\n";
  } else if (format == "cas") {
    out << "-- " << g.idealName << ": " << g.entries.size() << " generators\n";
    out << "R = QQ[" << ring_variables(g.n) << "];\n";
    for (std::size_t i = 0; i < g.entries.size(); ++i)
      out << "g" << i + 1 << " = " << to_plain(g.entries[i].poly) << "; -- "
          << g.entries[i].label << "\n";
    if (g.entries.empty()) {
      out << "I = ideal(0_R);\n";
    } else {
      out << "I = ideal(";
      for (std::size_t i = 0; i < g.entries.size(); ++i) out << (i ? "," : "") << "g" << i + 1;
      out << ");\n";
    }
  } else if (format == "json") {
    nlohmann::ordered_json j;
    j["ideal"] = g.idealName;
    j["points"] = g.n;
    std::map<std::uint32_t, std::size_t> degrees;
    auto gens = nlohmann::ordered_json::array();
    for (const auto& e : g.entries) {
      ++degrees[e.degree];
      gens.push_back({{"label", e.label},
                      {"degree", e.degree},
                      {"letterDegree", e.multidegree.letter},
                      {"pointDegree", e.multidegree.point},
                      {"terms", poly_json(e.poly)}});
    }
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [d, n] : degrees) counts[std::to_string(d)] = n;
    j["degreeCounts"] = counts;
    j["generators"] = gens;
    out << j.dump(2) << "\n";
  } else {
    throw Error(ErrorKind::UnknownFormat, "format must be plain, cas or json");
  }
  return out.str();
}

// ----------------------------------------------------------------- Table 1

const std::vector<Table1Row>& table1_rows() {
  static const std::vector<Table1Row> rows = {
      {{1, 2, 1}, {1, 1, 2}, {"-y_6z_4z_5+y_5z_4z_6", "y_3z_2z_4-y_2z_3z_4", "-y_5z_1z_3+y_1z_3z_5", "-y_6z_1z_2+y_1z_2z_6"}},
      {{2, 1, 1}, {1, 1, 2}, {"-y_6z_4z_5+y_4z_5z_6", "y_4z_2z_3-y_2z_3z_4", "-y_3z_1z_5+y_1z_3z_5", "-y_6z_1z_2+y_2z_1z_6"}},
      {{1, 3, 1}, {1, 1, 3}, {"y_4y_6z_5-y_4y_5z_6", "-y_3y_4z_2+y_2y_4z_3", "y_3y_5z_1-y_1y_3z_5", "y_2y_6z_1-y_1y_2z_6"}},
      {{3, 1, 1}, {1, 1, 3}, {"y_5y_6z_4-y_4y_5z_6", "-y_3y_4z_2+y_2y_3z_4", "y_3y_5z_1-y_1y_5z_3", "y_1y_6z_2-y_1y_2z_6"}},
      {{2, 1, 2}, {1, 2, 2}, {"x_5z_4z_6-x_4z_5z_6", "-x_4z_2z_3+x_3z_2z_4", "-x_5z_1z_3+x_3z_1z_5", "-x_2z_1z_6+x_1z_2z_6"}},
      {{2, 2, 1}, {1, 2, 2}, {"x_6z_4z_5-x_4z_5z_6", "-x_4z_2z_3+x_2z_3z_4", "x_3z_1z_5-x_1z_3z_5", "x_6z_1z_2-x_2z_1z_6"}},
      {{1, 3, 2}, {1, 2, 3}, {"-x_4y_6z_5+x_4y_5z_6", "x_4y_3z_2-x_4y_2z_3", "-x_3y_5z_1+x_3y_1z_5", "-x_2y_6z_1+x_2y_1z_6"}},
      {{2, 1, 3}, {1, 2, 3}, {"-x_5y_4z_6+x_4y_5z_6", "x_4y_3z_2-x_3y_4z_2", "x_5y_3z_1-x_3y_5z_1", "x_2y_1z_6-x_1y_2z_6"}},
      {{2, 3, 1}, {1, 2, 3}, {"-x_6y_4z_5+x_4y_5z_6", "x_4y_3z_2-x_2y_4z_3", "-x_3y_5z_1+x_1y_3z_5", "-x_6y_2z_1+x_2y_1z_6"}},
      {{3, 1, 2}, {1, 2, 3}, {"-x_5y_6z_4+x_4y_5z_6", "x_4y_3z_2-x_3y_2z_4", "-x_3y_5z_1+x_5y_1z_3", "-x_1y_6z_2+x_2y_1z_6"}},
      {{3, 2, 1}, {1, 2, 3}, {"-x_6y_5z_4+x_4y_5z_6", "x_4y_3z_2-x_2y_3z_4", "-x_3y_5z_1+x_1y_5z_3", "-x_6y_1z_2+x_2y_1z_6"}},
      {{3, 1, 3}, {1, 3, 3}, {"x_5y_4y_6-x_4y_5y_6", "-x_4y_2y_3+x_3y_2y_4", "-x_5y_1y_3+x_3y_1y_5", "-x_2y_1y_6+x_1y_2y_6"}},
      {{3, 3, 1}, {1, 3, 3}, {"x_6y_4y_5-x_4y_5y_6", "-x_4y_2y_3+x_2y_3y_4", "x_3y_1y_5-x_1y_3y_5", "x_6y_1y_2-x_2y_1y_6"}},
      // Printed as (2,3,3), which is itself a generator of another letter degree.
      {{2, 3, 2}, {2, 2, 3}, {"x_4x_6z_5-x_4x_5z_6", "-x_3x_4z_2+x_2x_4z_3", "x_3x_5z_1-x_1x_3z_5", "x_2x_6z_1-x_1x_2z_6"}},
      {{3, 2, 2}, {2, 2, 3}, {"x_5x_6z_4-x_4x_5z_6", "-x_3x_4z_2+x_2x_3z_4", "x_3x_5z_1-x_1x_5z_3", "x_1x_6z_2-x_1x_2z_6"}},
      {{3, 2, 3}, {2, 3, 3}, {"-x_5x_6y_4+x_4x_6y_5", "x_2x_4y_3-x_2x_3y_4", "x_1x_5y_3-x_1x_3y_5", "x_2x_6y_1-x_1x_6y_2"}},
      {{3, 3, 2}, {2, 3, 3}, {"-x_5x_6y_4+x_4x_5y_6", "x_3x_4y_2-x_2x_3y_4", "-x_3x_5y_1+x_1x_5y_3", "-x_1x_6y_2+x_1x_2y_6"}},
  };
  return rows;
}

Poly table1_residual(const Table1Row& row) {
  const std::vector<int> l123{1, 2, 3};
  auto qs = [&](const std::array<int, 3>& t) {
    return qs_raw(l123, FramePoint::R(t[0]), FramePoint::R(t[1]), FramePoint::R(t[2]));
  };
  const Config c = quadset_config();
  Poly residual = qs(row.ijk) - qs(row.generator);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& l = c.lines[i];
    residual -= parse_poly(row.coefficients[i]) * bracket(l[0], l[1], l[2]);
  }
  return residual;
}

std::vector<Table1Result> table1_verify() {
  std::vector<Table1Result> out;
  for (const auto& row : table1_rows()) out.push_back({row, table1_residual(row).is_zero()});
  return out;
}

}  // namespace plift

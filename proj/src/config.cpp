#include "plift/config.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "plift/error.hpp"

namespace plift {

Config normalized(Config c) {
  std::sort(c.lines.begin(), c.lines.end());
  return c;
}

namespace {

std::string line_text(const std::vector<int>& l) {
  std::string s = "{";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + "}";
}

}  // namespace

std::vector<Violation> validate(const Config& c) {
  std::vector<Violation> out;
  if (c.n < 0) out.push_back({"bad-point-count", "negative point count"});
  bool shapeOk = true;
  for (const auto& l : c.lines) {
    if (l.size() < 2) {
      out.push_back({"short-line", "line " + line_text(l) + " has fewer than 2 points"});
      shapeOk = false;
    }
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l[i] < 1 || l[i] > c.n) {
        out.push_back({"point-out-of-range", "line " + line_text(l) + " references point " +
                                                 std::to_string(l[i])});
        shapeOk = false;
      }
      if (i > 0 && l[i] <= l[i - 1]) {
        out.push_back({"unsorted-line", "line " + line_text(l) + " is not strictly increasing"});
        shapeOk = false;
        break;
      }
    }
  }
  if (!shapeOk) return out;

  for (std::size_t a = 0; a < c.lines.size(); ++a)
    for (std::size_t b = a + 1; b < c.lines.size(); ++b) {
      const auto& la = c.lines[a];
      const auto& lb = c.lines[b];
      if (la == lb) {
        out.push_back({"duplicate-line", "line " + line_text(la) + " appears twice"});
        continue;
      }
      std::vector<int> common;
      std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(common));
      if (common.size() == std::min(la.size(), lb.size())) {
        out.push_back({"contained-line", "line " + line_text(la.size() < lb.size() ? la : lb) +
                                             " is contained in " +
                                             line_text(la.size() < lb.size() ? lb : la)});
      } else if (common.size() >= 2) {
        out.push_back({"shared-pair", "points " + std::to_string(common[0]) + "," +
                                          std::to_string(common[1]) + " lie on lines " +
                                          line_text(la) + " and " + line_text(lb)});
      }
    }
  return out;
}

void require_valid(const Config& c) {
  const auto v = validate(c);
  if (!v.empty()) throw Error(ErrorKind::InvalidConfig, v.front().kind + ": " + v.front().message);
}

bool Rank3Matroid::dependent(int i, int j, int k) const {
  Triple t{i, j, k};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) return true;
  return circuits3.count(t) > 0;
}

Rank3Matroid circuits(const Config& c) {
  Rank3Matroid m;
  m.n = c.n;
  for (const auto& l : c.lines)
    for (const auto& s : combinations(l.size(), 3))
      m.circuits3.insert({l[s[0]], l[s[1]], l[s[2]]});
  return m;
}

bool closed_under_elimination(const Rank3Matroid& m) {
  for (auto a = m.circuits3.begin(); a != m.circuits3.end(); ++a)
    for (auto b = std::next(a); b != m.circuits3.end(); ++b) {
      std::vector<int> common;
      std::set_intersection(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(common));
      if (common.size() != 2) continue;
      std::vector<int> u;
      std::set_union(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(u));
      for (const auto& s : combinations(u.size(), 3))
        if (!m.dependent(u[s[0]], u[s[1]], u[s[2]])) return false;
    }
  return true;
}

namespace {

bool parallel(const QMatrix& r, std::size_t a, std::size_t b) {
  const QVector ca = r.column(a), cb = r.column(b);
  return is_zero_vector(cross(ca, cb));
}

}  // namespace

Simplification simplify(const Realisation& r) {
  if (r.rows() != 3) throw Error(ErrorKind::SizeMismatch, "realisation must have 3 rows");
  Simplification s;
  const std::size_t n = r.cols();
  std::vector<int> classOf(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero_vector(r.column(i))) {
      s.loops.push_back(static_cast<int>(i) + 1);
      continue;
    }
    if (classOf[i] >= 0) continue;
    classOf[i] = static_cast<int>(s.parallelClasses.size());
    std::vector<int> cls{static_cast<int>(i) + 1};
    for (std::size_t j = i + 1; j < n; ++j) {
      if (classOf[j] >= 0 || is_zero_vector(r.column(j))) continue;
      if (parallel(r, i, j)) {
        classOf[j] = classOf[i];
        cls.push_back(static_cast<int>(j) + 1);
      }
    }
    s.parallelClasses.push_back(std::move(cls));
  }
  std::vector<QVector> cols;
  for (const auto& cls : s.parallelClasses) {
    s.indexMap.push_back(cls.front());
    cols.push_back(r.column(static_cast<std::size_t>(cls.front() - 1)));
  }
  s.simple = QMatrix::from_columns(cols, 3);
  return s;
}

Config config_of_realisation(const Realisation& r) {
  const Simplification s = simplify(r);
  if (!s.loops.empty() || s.parallelClasses.size() != r.cols())
    throw Error(ErrorKind::NonSimpleInput, "realisation has loops or parallel points");
  const std::size_t n = r.cols();
  std::vector<QVector> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = r.column(i);

  Config c;
  c.n = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<int> line{static_cast<int>(i) + 1, static_cast<int>(j) + 1};
      bool leastPair = true;
      for (std::size_t k = 0; k < n && leastPair; ++k) {
        if (k == i || k == j) continue;
        if (sgn(det3(col[i], col[j], col[k])) != 0) continue;
        if (k < j) leastPair = false;
        line.push_back(static_cast<int>(k) + 1);
      }
      if (!leastPair || line.size() < 3) continue;
      std::sort(line.begin(), line.end());
      c.lines.push_back(std::move(line));
    }
  return normalized(std::move(c));
}

ConfigAnalysis analyze(const Config& c) {
  ConfigAnalysis a;
  const std::size_t n = static_cast<std::size_t>(c.n);
  a.linesPerPoint.assign(n, 0);
  std::set<std::pair<int, int>> edges;
  for (const auto& l : c.lines) {
    for (int p : l) ++a.linesPerPoint[static_cast<std::size_t>(p - 1)];
    for (std::size_t i = 0; i + 1 < l.size(); ++i) edges.insert({l[i], l[i + 1]});
  }
  a.graphEdges.assign(edges.begin(), edges.end());
  a.maxLinesPerPoint =
      a.linesPerPoint.empty() ? 0 : *std::max_element(a.linesPerPoint.begin(), a.linesPerPoint.end());

  // Components by repeated relabelling along edges.
  a.component.resize(n);
  std::iota(a.component.begin(), a.component.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [u, v] : a.graphEdges) {
      int& cu = a.component[static_cast<std::size_t>(u - 1)];
      int& cv = a.component[static_cast<std::size_t>(v - 1)];
      if (cu != cv) {
        cu = cv = std::min(cu, cv);
        changed = true;
      }
    }
  }
  std::map<int, int> dense;
  for (int& id : a.component) id = dense.try_emplace(id, static_cast<int>(dense.size())).first->second;
  a.omega = static_cast<int>(dense.size());
  a.isForest = a.graphEdges.size() + static_cast<std::size_t>(a.omega) == n;
  return a;
}

LineDeletion delete_line(const Config& c, std::size_t line) {
  if (line >= c.lines.size()) throw Error(ErrorKind::InvalidLine, "line index out of range");
  std::vector<int> count(static_cast<std::size_t>(c.n), 0);
  for (const auto& l : c.lines)
    for (int p : l) ++count[static_cast<std::size_t>(p - 1)];

  std::vector<bool> removed(static_cast<std::size_t>(c.n), false);
  for (int p : c.lines[line])
    if (count[static_cast<std::size_t>(p - 1)] == 1) removed[static_cast<std::size_t>(p - 1)] = true;

  LineDeletion d;
  d.indexMap.assign(static_cast<std::size_t>(c.n), 0);
  int next = 0;
  for (int p = 1; p <= c.n; ++p)
    if (!removed[static_cast<std::size_t>(p - 1)]) d.indexMap[static_cast<std::size_t>(p - 1)] = ++next;
  d.config.n = next;
  for (std::size_t i = 0; i < c.lines.size(); ++i) {
    if (i == line) continue;
    std::vector<int> l;
    for (int p : c.lines[i]) l.push_back(d.indexMap[static_cast<std::size_t>(p - 1)]);
    d.config.lines.push_back(std::move(l));
  }
  return d;
}

Config quadset_config() { return {6, {{1, 2, 3}, {1, 5, 6}, {2, 4, 6}, {3, 4, 5}}}; }

Config grid3x3_config() {
  return {9, {{1, 2, 3}, {1, 4, 7}, {2, 5, 8}, {3, 6, 9}, {4, 5, 6}, {7, 8, 9}}};
}

Config grid3x4_config() { return grid_config(3, 4); }

Config grid_config(int rows, int cols) {
  Config c;
  c.n = rows * cols;
  for (int k = 1; k <= cols; ++k) {
    std::vector<int> col;
    for (int r = 1; r <= rows; ++r) col.push_back((k - 1) * rows + r);
    c.lines.push_back(std::move(col));
  }
  for (int r = 1; r <= rows; ++r) {
    std::vector<int> row;
    for (int k = 1; k <= cols; ++k) row.push_back((k - 1) * rows + r);
    c.lines.push_back(std::move(row));
  }
  return c;
}

Config forest_two_lines_config() { return {5, {{1, 2, 3}, {3, 4, 5}}}; }

Config forest_path_config() { return {10, {{1, 2, 3, 4}, {4, 5, 6, 7}, {7, 8, 9, 10}}}; }

Config forest_star_config() { return {7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}}}; }

}  // namespace plift

#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plift/linalg.hpp"

namespace plift {

// Abstract point-line configuration on points 1..n. Each line is a strictly
// increasing list of point indices.
struct Config {
  int n = 0;
  std::vector<std::vector<int>> lines;

  friend bool operator==(const Config&, const Config&) = default;
};

// Same configuration with lines sorted lexicographically.
Config normalized(Config c);

struct Violation {
  std::string kind;  // short-line, point-out-of-range, unsorted-line, duplicate-line,
                     // contained-line, shared-pair, bad-point-count
  std::string message;
};

std::vector<Violation> validate(const Config& c);

// Throws InvalidConfig naming the first violation.
void require_valid(const Config& c);

using Triple = std::array<int, 3>;

struct Rank3Matroid {
  int n = 0;
  std::set<Triple> circuits3;  // collinear triples, i < j < k

  bool dependent(int i, int j, int k) const;
};

Rank3Matroid circuits(const Config& c);

// Two circuit triples sharing two points force every triple of their union.
bool closed_under_elimination(const Rank3Matroid& m);

// 3 x n matrix; column i-1 holds the homogeneous coordinates of point i.
using Realisation = QMatrix;

struct Simplification {
  std::vector<int> loops;
  std::vector<std::vector<int>> parallelClasses;  // ascending, ordered by least member
  Realisation simple;
  std::vector<int> indexMap;  // simple point k+1 is original point indexMap[k]
};

Simplification simplify(const Realisation& r);

// Lines are the maximal collinear sets of size >= 3, sorted lexicographically.
// Throws NonSimpleInput on zero or parallel columns.
Config config_of_realisation(const Realisation& r);

struct ConfigAnalysis {
  int omega = 0;
  bool isForest = true;
  int maxLinesPerPoint = 0;
  std::vector<std::pair<int, int>> graphEdges;
  std::vector<int> component;  // component id of point i at index i-1
  std::vector<int> linesPerPoint;
};

ConfigAnalysis analyze(const Config& c);

struct LineDeletion {
  Config config;
  std::vector<int> indexMap;  // new index of old point i at i-1, 0 when removed
};

// `line` is a 0-based position in c.lines.
LineDeletion delete_line(const Config& c, std::size_t line);

// Bundled configurations.
Config quadset_config();
Config grid3x3_config();
Config grid3x4_config();
// Columns first, then rows; point (row r, column k) is (k-1)*rows + r.
Config grid_config(int rows, int cols);
Config forest_two_lines_config();
Config forest_path_config();
Config forest_star_config();

}  // namespace plift

#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "plift/rational.hpp"

namespace plift {

using QVector = std::vector<Rat>;

// Dense row-major matrix over Q. Indices are 0-based.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);
  QMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix from_columns(std::span<const QVector> columns, std::size_t height);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const Rat& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Rat& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  std::span<const Rat> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  QVector column(std::size_t c) const;
  const std::vector<Rat>& entries() const noexcept { return entries_; }

  QMatrix transpose() const;
  QMatrix submatrix(std::span<const std::size_t> rowIdx,
                    std::span<const std::size_t> colIdx) const;
  QVector apply(std::span<const Rat> v) const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

// Exact rank over Q via fraction-free (Bareiss) elimination.
std::size_t rank(const QMatrix& m);

// Determinant of a square matrix via Bareiss elimination.
Rat determinant(const QMatrix& m);

struct EchelonForm {
  QMatrix reduced;                  // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

EchelonForm reduced_row_echelon(const QMatrix& m);

// Canonical kernel basis: the rows of the reduced row echelon form of any
// basis of {z : m z = 0}. Each vector has leading entry 1 and zeros in the
// leading positions of the others, so the output depends only on the kernel.
std::vector<QVector> nullspace(const QMatrix& m);

// Determinant of the submatrix on strictly increasing 0-based index sets.
// Throws IndexOutOfRange / SizeMismatch.
Rat minor(const QMatrix& m, std::span<const std::size_t> rowIdx,
          std::span<const std::size_t> colIdx);

struct MinorEntry {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  Rat value;
};

// Visits every k x k minor exactly once in lexicographic order of
// (rows, cols). Row subsets are processed in blocks, possibly on several
// threads, and emitted in order. Throws KTooLarge.
void for_each_minor(const QMatrix& m, std::size_t k,
                    const std::function<void(const MinorEntry&)>& sink);

std::vector<MinorEntry> all_minors(const QMatrix& m, std::size_t k);

// Lexicographic enumeration of k-subsets of {0..n-1}.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

Rat det3(std::span<const Rat> a, std::span<const Rat> b, std::span<const Rat> c);
QVector cross(std::span<const Rat> a, std::span<const Rat> b);
bool is_zero_vector(std::span<const Rat> v);

}  // namespace plift

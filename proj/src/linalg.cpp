#include "plift/linalg.hpp"

#include <algorithm>
#include <thread>
#include <utility>

#include "plift/error.hpp"

namespace plift {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw Error(ErrorKind::SizeMismatch, "entry count does not match shape");
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::SizeMismatch, "ragged initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(std::span<const QVector> columns, std::size_t height) {
  QMatrix m(height, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != height)
      throw Error(ErrorKind::SizeMismatch, "column height mismatch");
    for (std::size_t r = 0; r < height; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::submatrix(std::span<const std::size_t> rowIdx,
                           std::span<const std::size_t> colIdx) const {
  QMatrix s(rowIdx.size(), colIdx.size());
  for (std::size_t i = 0; i < rowIdx.size(); ++i)
    for (std::size_t j = 0; j < colIdx.size(); ++j) s(i, j) = (*this)(rowIdx[i], colIdx[j]);
  return s;
}

QVector QMatrix::apply(std::span<const Rat> v) const {
  if (v.size() != cols_) throw Error(ErrorKind::SizeMismatch, "vector length != cols");
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rat acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::SizeMismatch, "product shape mismatch");
  QMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

namespace {

// Row-major integer matrix obtained by clearing the denominators of each row.
// scale[r] is the factor row r was multiplied by.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;
  std::vector<Int> scale;

  Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

IntMatrix to_integer_rows(const QMatrix& m) {
  IntMatrix im{m.rows(), m.cols(), std::vector<Int>(m.rows() * m.cols()),
               std::vector<Int>(m.rows(), 1)};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Int l = 1;
    for (const Rat& q : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    im.scale[r] = l;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rat& q = m(r, c);
      im.at(r, c) = q.get_num() * (l / q.get_den());
    }
  }
  return im;
}

// In-place fraction-free elimination on a rows x cols integer block.
// Returns the rank; when the block is square and nonsingular, *det receives
// the determinant.
std::size_t bareiss(Int* a, std::size_t rows, std::size_t cols, Int* det = nullptr) {
  std::size_t r = 0;
  Int prev = 1;
  int sign = 1;
  Int tmp;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p * cols + c]) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
      sign = -sign;
    }
    const Int& piv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      Int& lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Int& x = a[i * cols + j];
        mpz_mul(x.get_mpz_t(), x.get_mpz_t(), piv.get_mpz_t());
        mpz_mul(tmp.get_mpz_t(), lead.get_mpz_t(), a[r * cols + j].get_mpz_t());
        mpz_sub(x.get_mpz_t(), x.get_mpz_t(), tmp.get_mpz_t());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      lead = 0;
    }
    prev = piv;
    ++r;
  }
  if (det != nullptr) {
    if (rows == cols && r == rows) {
      *det = rows == 0 ? Int(1) : Int(a[(rows - 1) * cols + (cols - 1)] * sign);
    } else {
      *det = 0;
    }
  }
  return r;
}

void check_indices(std::span<const std::size_t> idx, std::size_t bound, const char* what) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= bound)
      throw Error(ErrorKind::IndexOutOfRange, std::string(what) + " index out of range");
    if (i > 0 && idx[i] <= idx[i - 1])
      throw Error(ErrorKind::IndexOutOfRange, std::string(what) + " indices not increasing");
  }
}

}  // namespace

std::size_t rank(const QMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  IntMatrix im = to_integer_rows(m);
  return bareiss(im.a.data(), im.rows, im.cols);
}

Rat determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::SizeMismatch, "determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  IntMatrix im = to_integer_rows(m);
  Int d;
  bareiss(im.a.data(), im.rows, im.cols, &d);
  Int s = 1;
  for (const Int& f : im.scale) s *= f;
  Rat out(d, s);
  out.canonicalize();
  return out;
}

EchelonForm reduced_row_echelon(const QMatrix& m) {
  QMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    const Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      const Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

std::vector<QVector> nullspace(const QMatrix& m) {
  const std::size_t n = m.cols();
  const EchelonForm ef = reduced_row_echelon(m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : ef.pivots) is_pivot[p] = true;

  std::vector<QVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVector v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < ef.pivots.size(); ++i) v[ef.pivots[i]] = -ef.reduced(i, f);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;

  QMatrix stacked(basis.size(), n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) stacked(i, j) = basis[i][j];
  const EchelonForm canon = reduced_row_echelon(stacked);
  std::vector<QVector> out;
  out.reserve(canon.pivots.size());
  for (std::size_t i = 0; i < canon.pivots.size(); ++i) {
    auto row = canon.reduced.row(i);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

Rat minor(const QMatrix& m, std::span<const std::size_t> rowIdx,
          std::span<const std::size_t> colIdx) {
  if (rowIdx.size() != colIdx.size())
    throw Error(ErrorKind::SizeMismatch, "row and column index sets differ in size");
  check_indices(rowIdx, m.rows(), "row");
  check_indices(colIdx, m.cols(), "column");
  if (rowIdx.empty()) return 1;
  return determinant(m.submatrix(rowIdx, colIdx));
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

namespace {

// All minors sharing one row subset. The rank of the k x cols row block is
// computed first: when it is below k, every minor on those rows is zero.
void minors_for_rows(const IntMatrix& im, const std::vector<std::size_t>& rows,
                     const std::vector<std::vector<std::size_t>>& colSets,
                     std::vector<MinorEntry>& out) {
  const std::size_t k = rows.size();
  Int rowScale = 1;
  for (std::size_t r : rows) rowScale *= im.scale[r];

  std::vector<Int> block(k * im.cols);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < im.cols; ++c) block[i * im.cols + c] = im.a[rows[i] * im.cols + c];
  const bool fullRank = bareiss(block.data(), k, im.cols) == k;

  std::vector<Int> square(k * k);
  for (const auto& cols : colSets) {
    MinorEntry e{rows, cols, Rat(0)};
    if (fullRank) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) square[i * k + j] = im.a[rows[i] * im.cols + cols[j]];
      Int d;
      bareiss(square.data(), k, k, &d);
      if (sgn(d) != 0) {
        e.value = Rat(d, rowScale);
        e.value.canonicalize();
      }
    }
    out.push_back(std::move(e));
  }
}

}  // namespace

void for_each_minor(const QMatrix& m, std::size_t k,
                    const std::function<void(const MinorEntry&)>& sink) {
  if (k > std::min(m.rows(), m.cols()))
    throw Error(ErrorKind::KTooLarge, "minor size exceeds matrix dimensions");
  if (k == 0) {
    sink(MinorEntry{{}, {}, Rat(1)});
    return;
  }
  const IntMatrix im = to_integer_rows(m);
  const auto rowSets = combinations(m.rows(), k);
  const auto colSets = combinations(m.cols(), k);

  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t blockSize = 64 * workers;
  std::vector<std::vector<MinorEntry>> results(blockSize);
  for (std::size_t start = 0; start < rowSets.size(); start += blockSize) {
    const std::size_t count = std::min(blockSize, rowSets.size() - start);
    auto work = [&](std::size_t w) {
      for (std::size_t i = w; i < count; i += workers) {
        results[i].clear();
        minors_for_rows(im, rowSets[start + i], colSets, results[i]);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (std::size_t i = 0; i < count; ++i)
      for (const auto& e : results[i]) sink(e);
  }
}

std::vector<MinorEntry> all_minors(const QMatrix& m, std::size_t k) {
  std::vector<MinorEntry> out;
  for_each_minor(m, k, [&](const MinorEntry& e) { out.push_back(e); });
  return out;
}

Rat det3(std::span<const Rat> a, std::span<const Rat> b, std::span<const Rat> c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) +
         c[0] * (a[1] * b[2] - a[2] * b[1]);
}

QVector cross(std::span<const Rat> a, std::span<const Rat> b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_vector(std::span<const Rat> v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& q) { return sgn(q) == 0; });
}

}  // namespace plift

#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "altnet/field.hpp"

namespace altnet {

namespace detail {

/// Reduced row echelon form, in place, over GF(p). Row-major data.
/// Pivoting takes the first nonzero entry in column order, so the result
/// is deterministic and reproducible. Returns the rank; if
/// pivot_row_of_col is given (size cols) it receives the pivot row of
/// each column, -1 where the column has none.
inline int rref_in_place(std::int64_t* a, int rows, int cols, std::int64_t p,
                         int* pivot_row_of_col = nullptr) {
  if (pivot_row_of_col)
    for (int c = 0; c < cols; ++c) pivot_row_of_col[c] = -1;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[r * cols + c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = c; j < cols; ++j)
        std::swap(a[pivot * cols + j], a[rank * cols + j]);
    }
    std::int64_t scale = gf::inv(a[rank * cols + c], p);
    if (scale != 1) {
      for (int j = c; j < cols; ++j)
        a[rank * cols + j] = gf::mul(a[rank * cols + j], scale, p);
    }
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      std::int64_t f = a[r * cols + c];
      if (f == 0) continue;
      for (int j = c; j < cols; ++j)
        a[r * cols + j] =
            gf::sub(a[r * cols + j], gf::mul(f, a[rank * cols + j], p), p);
    }
    if (pivot_row_of_col) pivot_row_of_col[c] = rank;
    ++rank;
  }
  return rank;
}

/// After rref_in_place: the unit vector e_i lies in the row space iff
/// column i has a pivot row that is exactly e_i on the first `cols`
/// columns. `stride` is the physical row length (>= cols, e.g. when the
/// matrix is augmented).
inline bool unit_vector_in_rowspace(const std::int64_t* a, int cols, int stride,
                                    const int* pivot_row_of_col, int i) {
  int r = pivot_row_of_col[i];
  if (r < 0) return false;
  const std::int64_t* row = a + static_cast<std::size_t>(r) * stride;
  for (int c = 0; c < cols; ++c)
    if (c != i && row[c] != 0) return false;
  return true;
}

}  // namespace detail

/// Dense matrix over one GF(p). Entries are stored as raw residues in
/// [0, p); FieldElement views are available at the boundary.
class Matrix {
 public:
  Matrix(FieldSpec field, int rows, int cols)
      : field_(field), rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0)
      throw std::invalid_argument("Matrix: negative dimensions");
  }

  static Matrix identity(FieldSpec field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static Matrix from_rows(FieldSpec field,
                          const std::vector<std::vector<std::int64_t>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(field, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        throw std::invalid_argument("Matrix: ragged rows");
      for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  std::int64_t at(int r, int c) const { return data_[index(r, c)]; }
  FieldElement elem(int r, int c) const { return FieldElement(field_, at(r, c)); }

  void set(int r, int c, std::int64_t value) {
    std::int64_t p = field_.p();
    data_[index(r, c)] = ((value % p) + p) % p;
  }

  std::span<const std::int64_t> data() const { return data_; }
  std::span<std::int64_t> mutable_data() { return data_; }

  Matrix with_appended_row(std::span<const std::int64_t> v) const {
    if (static_cast<int>(v.size()) != cols_)
      throw std::invalid_argument("Matrix: appended row has wrong length");
    Matrix m(field_, rows_ + 1, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    for (int j = 0; j < cols_; ++j) m.set(rows_, j, v[j]);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (int r = 0; r < m.rows_; ++r) {
      for (int c = 0; c < m.cols_; ++c) {
        if (c) os << ' ';
        os << m.at(r, c);
      }
      os << '\n';
    }
    return os;
  }

 private:
  std::size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("Matrix: index out of range");
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  FieldSpec field_;
  int rows_, cols_;
  std::vector<std::int64_t> data_;
};

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.field(), m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) t.set(c, r, m.at(r, c));
  return t;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field())
    throw std::invalid_argument("multiply: mixed fields");
  if (a.cols() != b.rows())
    throw std::invalid_argument("multiply: dimension mismatch");
  std::int64_t p = a.field().p();
  Matrix out(a.field(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      std::int64_t aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        out.set(i, j, gf::add(out.at(i, j), gf::mul(aik, b.at(k, j), p), p));
    }
  return out;
}

inline std::vector<std::int64_t> multiply_vec(const Matrix& m,
                                              std::span<const std::int64_t> v) {
  if (static_cast<int>(v.size()) != m.cols())
    throw std::invalid_argument("multiply_vec: dimension mismatch");
  std::int64_t p = m.field().p();
  std::vector<std::int64_t> out(m.rows(), 0);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      out[r] = gf::add(out[r], gf::mul(m.at(r, c), v[c], p), p);
  return out;
}

inline int rank(const Matrix& m) {
  std::vector<std::int64_t> work(m.data().begin(), m.data().end());
  return detail::rref_in_place(work.data(), m.rows(), m.cols(), m.field().p());
}

/// Membership of v in the row space of m, decided by the rank test:
/// appending v must not increase the rank.
inline bool in_row_space(const Matrix& m, std::span<const std::int64_t> v) {
  if (static_cast<int>(v.size()) != m.cols())
    throw std::invalid_argument("in_row_space: dimension mismatch");
  return rank(m) == rank(m.with_appended_row(v));
}

/// Raised when a supplied right-hand side is inconsistent with the
/// coefficient matrix (cannot happen for generated data).
class CorruptedInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves y = m * s for the unknowns named in `wanted`. An unknown is
/// reported iff the observations pin it down uniquely (e_i lies in the
/// row space of m); everything else maps to nullopt.
inline std::map<int, std::optional<FieldElement>> solve_for(
    const Matrix& m, std::span<const std::int64_t> y,
    std::span<const int> wanted) {
  if (static_cast<int>(y.size()) != m.rows())
    throw std::invalid_argument("solve_for: y has wrong length");
  int rows = m.rows(), cols = m.cols();
  std::int64_t p = m.field().p();
  int stride = cols + 1;
  std::vector<std::int64_t> aug(static_cast<std::size_t>(rows) * stride);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) aug[r * stride + c] = m.at(r, c);
    std::int64_t v = ((y[r] % p) + p) % p;
    aug[r * stride + cols] = v;
  }
  std::vector<int> pivot(stride, -1);
  int rk = detail::rref_in_place(aug.data(), rows, stride, p, pivot.data());
  (void)rk;
  // A pivot in the augmented column means some combination of equations
  // reads 0 = nonzero.
  if (pivot[cols] >= 0)
    throw CorruptedInputError("solve_for: inconsistent system");
  std::map<int, std::optional<FieldElement>> out;
  for (int i : wanted) {
    if (i < 0 || i >= cols)
      throw std::invalid_argument("solve_for: wanted index out of range");
    if (detail::unit_vector_in_rowspace(aug.data(), cols, stride, pivot.data(), i))
      out[i] = FieldElement(m.field(), aug[pivot[i] * stride + cols]);
    else
      out[i] = std::nullopt;
  }
  return out;
}

}  // namespace altnet

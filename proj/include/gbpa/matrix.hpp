#pragma once

// Dense matrices over an exact field and the elimination kernel: reduced
// row-echelon form, rank, kernels, linear solves, quotient coordinates.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gbpa/field.hpp"

namespace gbpa {

class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <ExactField F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)),
        rows_(rows),
        cols_(cols),
        data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_rows(const F& field,
                          const std::vector<std::vector<value_type>>& rows,
                          std::size_t cols_if_empty = 0) {
    std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
    Matrix m(field, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw dimension_error("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_ints(const F& field,
                          const std::vector<std::vector<std::int64_t>>& rows,
                          std::size_t cols_if_empty = 0) {
    std::vector<std::vector<value_type>> v;
    for (const auto& r : rows) {
      std::vector<value_type> row;
      for (auto x : r) row.push_back(field.from_int(x));
      v.push_back(std::move(row));
    }
    return from_rows(field, v, cols_if_empty);
  }

  /// Matrix whose columns are the given vectors (each of length `rows`).
  static Matrix from_columns(const F& field, std::size_t rows,
                             const std::vector<std::vector<value_type>>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw dimension_error("column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  value_type& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const value_type& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<value_type> column(std::size_t j) const {
    std::vector<value_type> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<value_type> row(std::size_t i) const {
    return std::vector<value_type>(data_.begin() + i * cols_,
                                   data_.begin() + (i + 1) * cols_);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const value_type& x) { return x.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw dimension_error("block");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) {
      throw dimension_error("set_block");
    }
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  std::vector<value_type> apply(const std::vector<value_type>& x) const {
    if (x.size() != cols_) throw dimension_error("matrix-vector shape");
    std::vector<value_type> y(rows_, field_.zero());
    for (std::size_t j = 0; j < cols_; ++j) {
      if (x[j].is_zero()) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const auto& a = (*this)(i, j);
        if (!a.is_zero()) y[i] += a * x[j];
      }
    }
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw dimension_error("matrix product shape " + a.shape() + " * " +
                            b.shape());
    }
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const auto& y = b(k, j);
          if (!y.is_zero()) c(i, j) += x * y;
        }
      }
    }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  Matrix scaled(const value_type& s) const {
    Matrix c = *this;
    for (auto& x : c.data_) x *= s;
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) {
        os << (j ? ", " : "") << field_.format((*this)(i, j));
      }
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw dimension_error("shape mismatch " + shape() + " vs " + b.shape());
    }
  }

  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

/// Block-diagonal / side-by-side assembly helpers.
template <ExactField F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw dimension_error("hstack rows");
  Matrix<F> m(a.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

template <ExactField F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw dimension_error("vstack cols");
  Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

template <ExactField F>
Matrix<F> block_diagonal(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <ExactField F>
struct RowEchelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  Matrix<F> reduced;  // RREF, same shape as the input
};

/// Gauss-Jordan elimination to reduced row-echelon form.
template <ExactField F>
RowEchelon<F> row_reduce(Matrix<F> m) {
  RowEchelon<F> out;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    }
    auto inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) {
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
      }
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return row_reduce(m).rank;
}

/// Columns form a basis of {x : m x = 0}; free variables enumerate the basis.
template <ExactField F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  auto ech = row_reduce(m);
  const F& f = m.field();
  const std::size_t n = m.cols();
  std::vector<char> is_pivot(n, 0);
  for (auto c : ech.pivot_columns) is_pivot[c] = 1;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<F> k(f, n, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = f.one();
    for (std::size_t r = 0; r < ech.rank; ++r) {
      const auto& a = ech.reduced(r, free[j]);
      if (!a.is_zero()) k(ech.pivot_columns[r], j) = -a;
    }
  }
  return k;
}

/// Some x with m x = b when b lies in the image (free variables set to 0).
template <ExactField F>
std::optional<std::vector<typename F::value_type>> solve(
    const Matrix<F>& m, const std::vector<typename F::value_type>& b) {
  if (b.size() != m.rows()) {
    throw dimension_error("solve: right-hand side has length " +
                          std::to_string(b.size()) + ", expected " +
                          std::to_string(m.rows()));
  }
  Matrix<F> aug(m.field(), m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, m.cols()) = b[i];
  auto ech = row_reduce(std::move(aug));
  for (auto c : ech.pivot_columns)
    if (c == m.cols()) return std::nullopt;
  std::vector<typename F::value_type> x(m.cols(), m.field().zero());
  for (std::size_t r = 0; r < ech.rank; ++r) {
    x[ech.pivot_columns[r]] = ech.reduced(r, m.cols());
  }
  return x;
}

/// X with a X = b (column-wise solve, one elimination).
template <ExactField F>
std::optional<Matrix<F>> solve_matrix(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw dimension_error("solve_matrix rows");
  auto ech = row_reduce(hstack(a, b));
  std::size_t n = a.cols();
  Matrix<F> x(a.field(), n, b.cols());
  for (std::size_t r = 0; r < ech.rank; ++r) {
    std::size_t c = ech.pivot_columns[r];
    if (c >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = ech.reduced(r, n + j);
  }
  return x;
}

/// Basis (as columns) of the column space of m.
template <ExactField F>
Matrix<F> image_basis(const Matrix<F>& m) {
  auto ech = row_reduce(m);
  return m.select_columns(ech.pivot_columns);
}

template <ExactField F>
bool is_invertible(const Matrix<F>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

/// Coordinates on V / W for a subspace W of k^n given by spanning columns.
/// The quotient basis is the standard basis at non-pivot coordinates of the
/// row-reduced spanning set.
template <ExactField F>
class QuotientMap {
 public:
  using value_type = typename F::value_type;

  QuotientMap() = default;
  QuotientMap(const F& field, std::size_t ambient, const Matrix<F>& spanning)
      : field_(field), ambient_(ambient) {
    if (spanning.rows() != ambient && spanning.cols() != 0) {
      throw dimension_error("QuotientMap: spanning set has wrong length");
    }
    Matrix<F> rows = spanning.cols() ? spanning.transpose()
                                     : Matrix<F>(field, 0, ambient);
    auto ech = row_reduce(std::move(rows));
    sub_dim_ = ech.rank;
    reduced_ = ech.reduced.block(0, 0, ech.rank, ambient);
    pivots_ = ech.pivot_columns;
    std::vector<char> is_pivot(ambient, 0);
    for (auto c : pivots_) is_pivot[c] = 1;
    for (std::size_t c = 0; c < ambient; ++c)
      if (!is_pivot[c]) free_.push_back(c);
    position_.assign(ambient, npos);
    for (std::size_t j = 0; j < free_.size(); ++j) position_[free_[j]] = j;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t sub_dim() const { return sub_dim_; }
  std::size_t quotient_dim() const { return free_.size(); }
  /// Ambient coordinates that index the quotient basis.
  const std::vector<std::size_t>& complement_coordinates() const {
    return free_;
  }

  std::vector<value_type> project(std::vector<value_type> v) const {
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      auto c = v[pivots_[r]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_; ++j) {
        const auto& a = reduced_(r, j);
        if (!a.is_zero()) v[j] -= c * a;
      }
    }
    std::vector<value_type> q(free_.size(), field_.zero());
    for (std::size_t j = 0; j < free_.size(); ++j) q[j] = v[free_[j]];
    return q;
  }

  /// Projection as a matrix (quotient_dim x ambient).
  Matrix<F> matrix() const {
    Matrix<F> p(field_, free_.size(), ambient_);
    for (std::size_t c = 0; c < ambient_; ++c) {
      std::vector<value_type> e(ambient_, field_.zero());
      e[c] = field_.one();
      auto q = project(std::move(e));
      for (std::size_t i = 0; i < q.size(); ++i) p(i, c) = q[i];
    }
    return p;
  }

  /// Section: quotient basis vector j lifts to the standard basis vector.
  Matrix<F> section() const {
    Matrix<F> s(field_, ambient_, free_.size());
    for (std::size_t j = 0; j < free_.size(); ++j) s(free_[j], j) = field_.one();
    return s;
  }

  bool contains(const std::vector<value_type>& v) const {
    auto q = project(v);
    return std::all_of(q.begin(), q.end(),
                       [](const value_type& x) { return x.is_zero(); });
  }

 private:
  F field_{};
  std::size_t ambient_ = 0;
  std::size_t sub_dim_ = 0;
  Matrix<F> reduced_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> position_;
};

}  // namespace gbpa

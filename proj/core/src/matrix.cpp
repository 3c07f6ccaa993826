#include "degenkit/matrix.hpp"

#include <sstream>
#include <utility>

namespace degenkit {

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
bool Matrix<T>::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

template <class T>
bool Matrix<T>::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

template <class T>
Matrix<T> Matrix<T>::select_rows(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw DimensionError("row range out of bounds");
  Matrix m(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
  return m;
}

template <class T>
Matrix<T> Matrix<T>::select_cols(std::size_t begin, std::size_t end) const {
  if (begin > end || end > cols_) throw DimensionError("column range out of bounds");
  Matrix m(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
  return m;
}

template <class T>
Matrix<T> Matrix<T>::select_rows(std::span<const std::size_t> idx) const {
  Matrix m(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= rows_) throw DimensionError("row index out of bounds");
    for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
  }
  return m;
}

template <class T>
Matrix<T> Matrix<T>::select_cols(std::span<const std::size_t> idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= cols_) throw DimensionError("column index out of bounds");
    for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, idx[k]);
  }
  return m;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template <class T>
void Matrix<T>::add_row_multiple(std::size_t dst, std::size_t src, const T& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

template <class T>
void Matrix<T>::add_col_multiple(std::size_t dst, std::size_t src, const T& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

template <class T>
void Matrix<T>::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

template <class T>
void Matrix<T>::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

template <class T>
Matrix<T>& Matrix<T>::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

template <class T>
Matrix<T>& Matrix<T>::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

template <class T>
Matrix<T>& Matrix<T>::operator*=(const T& s) {
  for (auto& v : data_) v *= s;
  return *this;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

template <class T>
Matrix<T> vstack(std::span<const Matrix<T>> blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw DimensionError("vstack: column counts differ");
    rows += b.rows();
  }
  Matrix<T> m(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return m;
}

template <class T>
Matrix<T> block_diagonal(std::span<const Matrix<T>> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix<T> m(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (const auto& v : m.data())
    if (v.get_den() != 1) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::domain_error("matrix has a non-integral entry");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

namespace {
template <class T>
std::string render(const Matrix<T>& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}
}  // namespace

std::string to_string(const IntMatrix& m) { return render(m); }
std::string to_string(const RatMatrix& m) { return render(m); }

template class Matrix<Integer>;
template class Matrix<Rational>;

template IntMatrix operator*(const IntMatrix&, const IntMatrix&);
template RatMatrix operator*(const RatMatrix&, const RatMatrix&);
template IntMatrix hstack(const IntMatrix&, const IntMatrix&);
template RatMatrix hstack(const RatMatrix&, const RatMatrix&);
template IntMatrix vstack(std::span<const IntMatrix>, std::size_t);
template RatMatrix vstack(std::span<const RatMatrix>, std::size_t);
template IntMatrix block_diagonal(std::span<const IntMatrix>);
template RatMatrix block_diagonal(std::span<const RatMatrix>);

}  // namespace degenkit

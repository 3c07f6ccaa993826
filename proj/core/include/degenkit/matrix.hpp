// Dense exact matrices over Z and Q.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace degenkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Row-major dense matrix. Shapes with zero rows or zero columns are legal
/// and every operation below is total on them.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;

  Matrix select_rows(std::size_t begin, std::size_t end) const;
  Matrix select_cols(std::size_t begin, std::size_t end) const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const T& s);

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);
template <class T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) { return a += b; }
template <class T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) { return a -= b; }
template <class T>
Matrix<T> operator*(const T& s, Matrix<T> a) { return a *= s; }

/// [a | b]; row counts must agree.
template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b);
/// [a ; b]; column counts must agree. An empty list with `cols` given
/// produces a 0 x cols matrix.
template <class T>
Matrix<T> vstack(std::span<const Matrix<T>> blocks, std::size_t cols);
template <class T>
Matrix<T> block_diagonal(std::span<const Matrix<T>> blocks);

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
/// Throws std::domain_error when some entry is not an integer.
IntMatrix to_integer(const RatMatrix& m);
bool is_integral(const RatMatrix& m);

std::string to_string(const IntMatrix& m);
std::string to_string(const RatMatrix& m);

/// A free Z-module of known rank.
struct Lattice {
  std::size_t rank = 0;
  friend bool operator==(const Lattice&, const Lattice&) = default;
};

/// A homomorphism of lattices, stored as a target.rank x source.rank integer
/// matrix acting on column vectors.
using LatticeMap = IntMatrix;

inline Lattice source(const LatticeMap& m) { return {m.cols()}; }
inline Lattice target(const LatticeMap& m) { return {m.rows()}; }

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

extern template class Matrix<Integer>;
extern template class Matrix<Rational>;

}  // namespace degenkit

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace clag {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix of exact scalars.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix scaled(const RatMatrix& a, const Rational& s);

/// Exact inverse by Gauss-Jordan elimination; nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& a);

/// Rank by fraction-free (Bareiss) elimination.
std::size_t bareiss_rank(IntMatrix m);

/// Rational string "p/q", or "p" for integers.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

/// Row space of an integer matrix M (r x c), decided exactly.
///
/// Construction runs Bareiss elimination on [M | I] (fraction-free, big
/// integers), then back-substitutes to the reduced row echelon form R of M
/// together with T such that R = T * M. Membership of v in the row space is
/// read off the pivots of R; the certificate is a coefficient vector c with
/// c^T M = v.
class RowSpace {
 public:
  explicit RowSpace(const IntMatrix& m);

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Reduced echelon basis (rank x cols).
  const RatMatrix& reduced() const noexcept { return reduced_; }

  /// Certificate coefficients (length rows()) when v lies in the row space.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& v) const;

  /// Basis of {w : M w = 0}, each vector scaled to primitive integers.
  std::vector<std::vector<BigInt>> kernel_basis() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> pivots_;
  RatMatrix reduced_;
  RatMatrix transform_;
};

}  // namespace clag

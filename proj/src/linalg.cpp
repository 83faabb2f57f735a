#include "clag/linalg.hpp"

#include <utility>

#include "clag/error.hpp"

namespace clag {

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::LengthMismatch, "matrix product shape mismatch");
  RatMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RatMatrix scaled(const RatMatrix& a, const Rational& s) {
  RatMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
  return out;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m(pivot, c) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(pivot, j));
        std::swap(inv(c, j), inv(pivot, j));
      }
    const Rational scale = 1 / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

namespace {

// Bareiss forward elimination restricted to pivot columns [0, pivot_cols).
// Returns the pivot columns in row order.
std::vector<std::size_t> bareiss_forward(IntMatrix& a, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  BigInt prev = 1;
  std::size_t row = 0;
  for (std::size_t c = 0; c < pivot_cols && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) {
        // Entries still need the uniform scaling a(row,c)/prev.
        for (std::size_t j = c + 1; j < a.cols(); ++j) {
          a(i, j) *= a(row, c);
          mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
        }
        continue;
      }
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        a(i, j) = a(row, c) * a(i, j) - a(i, c) * a(row, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(row, c);
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t bareiss_rank(IntMatrix m) { return bareiss_forward(m, m.cols()).size(); }

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw Error(ErrorCode::InvalidInput, "not a rational: '" + text + "'");
  r.canonicalize();
  return r;
}

RowSpace::RowSpace(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
  IntMatrix aug(rows_, cols_ + rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = m(i, j);
    aug(i, cols_ + i) = 1;
  }
  pivots_ = bareiss_forward(aug, cols_);
  const std::size_t r = pivots_.size();

  // Back-substitution to reduced form over the rationals.
  RatMatrix work(r, cols_ + rows_);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < aug.cols(); ++j) work(i, j) = aug(i, j);
  for (std::size_t i = r; i-- > 0;) {
    const Rational inv = 1 / work(i, pivots_[i]);
    for (std::size_t j = 0; j < work.cols(); ++j)
      if (work(i, j) != 0) work(i, j) *= inv;
    for (std::size_t above = 0; above < i; ++above) {
      const Rational f = work(above, pivots_[i]);
      if (f == 0) continue;
      for (std::size_t j = 0; j < work.cols(); ++j)
        if (work(i, j) != 0) work(above, j) -= f * work(i, j);
    }
  }
  reduced_ = RatMatrix(r, cols_);
  transform_ = RatMatrix(r, rows_);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) reduced_(i, j) = work(i, j);
    for (std::size_t j = 0; j < rows_; ++j) transform_(i, j) = work(i, cols_ + j);
  }
}

std::optional<std::vector<Rational>> RowSpace::solve(const std::vector<Rational>& v) const {
  if (v.size() != cols_)
    throw Error(ErrorCode::LengthMismatch,
                "vector length " + std::to_string(v.size()) + " != " + std::to_string(cols_));
  std::vector<Rational> residual = v;
  for (std::size_t i = 0; i < rank(); ++i) {
    const Rational a = v[pivots_[i]];
    if (a == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      if (reduced_(i, j) != 0) residual[j] -= a * reduced_(i, j);
  }
  for (const auto& e : residual)
    if (e != 0) return std::nullopt;
  std::vector<Rational> cert(rows_);
  for (std::size_t i = 0; i < rank(); ++i) {
    const Rational a = v[pivots_[i]];
    if (a == 0) continue;
    for (std::size_t j = 0; j < rows_; ++j)
      if (transform_(i, j) != 0) cert[j] += a * transform_(i, j);
  }
  return cert;
}

std::vector<std::vector<BigInt>> RowSpace::kernel_basis() const {
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  std::vector<std::vector<BigInt>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> w(cols_);
    w[f] = 1;
    for (std::size_t i = 0; i < rank(); ++i) w[pivots_[i]] = -reduced_(i, f);
    BigInt lcm = 1;
    for (const auto& e : w) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.get_den_mpz_t());
    std::vector<BigInt> iw(cols_);
    BigInt g = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      iw[j] = w[j].get_num() * (lcm / w[j].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iw[j].get_mpz_t());
    }
    if (g > 1)
      for (auto& e : iw) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    basis.push_back(std::move(iw));
  }
  return basis;
}

}  // namespace clag

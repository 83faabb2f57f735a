#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "clag/geometry.hpp"
#include "clag/linalg.hpp"

namespace clag {

/// Configurable caps shared by the exact-linear-algebra layers.
struct SizeGuards {
  /// rows x cols cap for incidence matrices and |X|^2 cap for brute-force
  /// scheme tables. CLAG_SIZE_GUARD overrides the default.
  std::uint64_t matrix_entries = 10'000'000;

  static SizeGuards from_env();
};

struct Membership {
  bool member = false;
  /// Coefficients per point (row) with certificate^T M = v; empty when not a
  /// member.
  std::vector<Rational> certificate;
};

/// Point / k-space incidence matrix. Rows are points (affine first), columns
/// are k-spaces (affine first), in the canonical enumeration order. In
/// projective mode this is the block matrix [[A, 0], [B, P']] with A the
/// affine incidence matrix and P' that of the hyperplane at infinity.
class IncidenceMatrix {
 public:
  /// Requires 1 <= k <= n-1; throws DimensionOutOfRange or SizeGuard.
  IncidenceMatrix(AmbientSpace space, int k, SizeGuards guards = SizeGuards::from_env());

  const AmbientSpace& space() const noexcept { return space_; }
  int k() const noexcept { return k_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool entry(std::size_t point, std::size_t kspace) const;
  /// Point indices (rows) on column j.
  std::span<const std::uint32_t> column(std::size_t j) const { return space_.points_of(k_, j); }

  IntMatrix to_int_matrix() const;

  std::size_t rank() const;
  std::vector<std::vector<BigInt>> kernel_basis() const;

  /// Exact decision whether v is a rational combination of the rows.
  Membership row_space_membership(const std::vector<Rational>& v) const;
  Membership row_space_membership(const std::vector<std::uint8_t>& chi) const;

  /// Membership decided by orthogonality to the cached kernel basis.
  bool in_row_space_by_kernel(const std::vector<std::uint8_t>& chi) const;

  /// certificate^T M == v exactly.
  bool verify_certificate(const std::vector<Rational>& certificate, const std::vector<Rational>& v) const;

 private:
  const RowSpace& row_space() const;
  const std::vector<std::vector<std::int64_t>>& small_kernel() const;

  AmbientSpace space_;
  int k_;
  std::size_t rows_;
  std::size_t cols_;
  mutable std::once_flag row_space_once_;
  mutable std::unique_ptr<RowSpace> row_space_;
  mutable std::once_flag kernel_once_;
  mutable std::vector<std::vector<BigInt>> kernel_;
  mutable std::vector<std::vector<std::int64_t>> small_kernel_;
  mutable bool kernel_fits_int64_ = false;
};

/// Shared incidence matrix per (space, k), built once and reused.
std::shared_ptr<const IncidenceMatrix> incidence_for(const AmbientSpace& space, int k);

}  // namespace clag

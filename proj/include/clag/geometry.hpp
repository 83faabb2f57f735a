#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "clag/galois.hpp"
#include "clag/linalg.hpp"

namespace clag {

/// Number of (b-1)-spaces of PG(a-1, q); zero when b > a.
BigInt gaussian_binomial(int a, int b, std::uint64_t q);

BigInt ipow(std::uint64_t base, unsigned exp);

/// A projective subspace of PG(n, q), stored as the unique reduced row
/// echelon basis of its row space (pivots normalised to 1, rows ordered by
/// pivot column). The empty subspace has dimension -1 and no rows.
///
/// The hyperplane at infinity is x_0 = 0, so a subspace is affine exactly
/// when its first pivot sits in column 0.
class Subspace {
 public:
  Subspace() = default;

  /// Canonicalises an arbitrary spanning set (rows of length n+1).
  static Subspace from_rows(const FiniteField& field, int n, std::vector<Elem> rows);

  /// Accepts a basis that must already be canonical; throws NotCanonical
  /// otherwise.
  static Subspace from_canonical(const FiniteField& field, int n, std::vector<Elem> rows);

  static Subspace empty(int n) {
    Subspace s;
    s.n_ = n;
    return s;
  }

  int ambient_dim() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(rows_.size() / (n_ + 1)) - 1; }
  bool is_empty() const noexcept { return rows_.empty(); }
  bool is_affine() const noexcept { return !rows_.empty() && rows_[0] != 0; }

  std::span<const Elem> row(int i) const {
    return {rows_.data() + static_cast<std::size_t>(i) * (n_ + 1), static_cast<std::size_t>(n_ + 1)};
  }
  const std::vector<Elem>& data() const noexcept { return rows_; }

  std::vector<std::vector<Elem>> row_list() const;
  std::string key() const;

  bool operator==(const Subspace&) const = default;

 private:
  int n_ = 0;
  std::vector<Elem> rows_;
};

/// Canonical enumeration order: affine subspaces first, then those inside the
/// hyperplane at infinity, each block lexicographic on the RREF matrices.
bool canonical_less(const Subspace& a, const Subspace& b);

/// In-place reduced row echelon form over GF(q); returns the rank. Nonzero
/// rows come first.
std::size_t rref(const FiniteField& field, std::vector<Elem>& m, std::size_t rows, std::size_t cols);

struct SubspaceList {
  std::vector<Subspace> items;
  std::size_t affine_count = 0;
  std::vector<std::vector<std::uint32_t>> points;  // point indices of each item
  std::unordered_map<std::string, std::size_t> lookup;

  std::optional<std::size_t> find(const Subspace& s) const;
  std::size_t index_of(const Subspace& s) const;
};

enum class Mode { Projective, Affine };

std::string mode_name(Mode mode);
Mode parse_mode(const std::string& text);

/// PG(n, q) together with the fixed hyperplane at infinity x_0 = 0.
/// Enumerations are computed lazily and cached; the object is otherwise
/// immutable and safe to share.
class ProjectiveSpace {
 public:
  ProjectiveSpace(std::shared_ptr<const FiniteField> field, int n);

  const FiniteField& field() const noexcept { return *field_; }
  std::shared_ptr<const FiniteField> field_ptr() const noexcept { return field_; }
  int n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return field_->q(); }

  /// All k-spaces in canonical order (affine block first).
  const SubspaceList& subspaces(int k) const;
  const SubspaceList& points() const { return subspaces(0); }

  std::size_t point_index(std::span<const Elem> normalized) const;

  Subspace span(const Subspace& a, const Subspace& b) const;
  Subspace meet(const Subspace& a, const Subspace& b) const;
  bool contains(const Subspace& big, const Subspace& small) const;
  bool contains_point(const Subspace& s, std::span<const Elem> point) const;

  /// Canonical point vectors of s (leading coordinate 1).
  std::vector<std::vector<Elem>> point_vectors(const Subspace& s) const;
  std::vector<std::uint32_t> point_indices(const Subspace& s) const;

  Subspace hyperplane_at_infinity() const;
  /// K intersected with the hyperplane at infinity.
  Subspace infinite_part(const Subspace& k) const;

  Subspace make(std::vector<Elem> rows) const { return Subspace::from_rows(*field_, n_, std::move(rows)); }
  Subspace point(std::vector<Elem> coords) const { return make(std::move(coords)); }

  /// Image of a local subspace of PG(m, q) under the frame rows (m+1 rows of
  /// length n+1, canonical basis of an m-space of this space).
  Subspace lift(const Subspace& local, const Subspace& frame) const;
  /// Coordinates of s (contained in frame) relative to the frame's basis.
  Subspace localize(const Subspace& s, const Subspace& frame) const;

  /// Enumeration guard on the number of items (default 2,000,000).
  static std::uint64_t enumeration_cap();

 private:
  void check(const Subspace& s) const;

  std::shared_ptr<const FiniteField> field_;
  int n_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<int, std::unique_ptr<SubspaceList>> cache_;
};

/// Shared PG(n, q); repeated calls return the same instance.
std::shared_ptr<const ProjectiveSpace> projective_space(std::uint32_t q, int n);

/// PG(n, q) or AG(n, q) = PG(n, q) minus the hyperplane at infinity. Affine
/// objects are represented by their projective closures.
struct AmbientSpace {
  std::shared_ptr<const ProjectiveSpace> pg;
  Mode mode = Mode::Projective;

  static AmbientSpace projective(std::uint32_t q, int n) { return {projective_space(q, n), Mode::Projective}; }
  static AmbientSpace affine(std::uint32_t q, int n) { return {projective_space(q, n), Mode::Affine}; }

  int n() const { return pg->n(); }
  std::uint32_t q() const { return pg->q(); }
  bool is_affine() const { return mode == Mode::Affine; }

  std::size_t point_count() const;
  /// k-spaces of this space: all of them (projective) or the affine block.
  std::span<const Subspace> k_spaces(int k) const;
  std::size_t k_space_count(int k) const { return k_spaces(k).size(); }
  /// Point indices restricted to this space's points for the k-space at idx.
  std::span<const std::uint32_t> points_of(int k, std::size_t idx) const;

  bool operator==(const AmbientSpace& o) const { return pg == o.pg && mode == o.mode; }
  std::string describe() const;
};

/// Enumerate the k-spaces of the space (checks the range of k).
std::span<const Subspace> enumerate_subspaces(const AmbientSpace& space, int k);

}  // namespace clag

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clag/geometry.hpp"
#include "clag/incidence.hpp"
#include "clag/spreads.hpp"

namespace clag {

/// A set of k-spaces of AG(n,q) or PG(n,q), stored as a 0/1 vector over
/// space.k_spaces(k).
class KSet {
 public:
  KSet(AmbientSpace space, int k);
  KSet(AmbientSpace space, int k, std::vector<std::uint8_t> chi);

  static KSet from_members(AmbientSpace space, int k, const std::vector<Subspace>& members);
  static KSet from_indices(AmbientSpace space, int k, const std::vector<std::size_t>& indices);

  const AmbientSpace& space() const noexcept { return space_; }
  int k() const noexcept { return k_; }
  const std::vector<std::uint8_t>& chi() const noexcept { return chi_; }
  bool contains(std::size_t idx) const { return chi_.at(idx) != 0; }
  bool contains(const Subspace& s) const;

  std::size_t size() const noexcept { return size_; }
  std::vector<std::size_t> indices() const;
  std::vector<Subspace> members() const;

  /// |L| / gauss(n, k)_q.
  Rational x() const;

  bool operator==(const KSet& o) const { return space_ == o.space_ && k_ == o.k_ && chi_ == o.chi_; }

 private:
  AmbientSpace space_;
  int k_;
  std::vector<std::uint8_t> chi_;
  std::size_t size_ = 0;
};

struct CLVerdict {
  bool cameron_liebler = false;
  bool integral = true;      // parameter integrality (affine only)
  Rational x;
  std::vector<Rational> certificate;  // point weights when cameron_liebler
  std::string reason;
};

/// chi in the row space of the point / k-space incidence matrix. Affine sets
/// with non-integral x are rejected without linear algebra.
CLVerdict is_cameron_liebler(const KSet& l);

/// All k-spaces through p (affine point in affine mode).
KSet point_pencil(const AmbientSpace& space, const Subspace& p, int k);
/// All k-spaces inside the hyperplane h (projective mode only).
KSet pg_hyperplane_set(const AmbientSpace& space, const Subspace& h, int k);

KSet complement(const KSet& l);
/// Requires disjoint sets (NotDisjoint).
KSet set_union(const KSet& a, const KSet& b);
/// Requires b contained in a (NotContained).
KSet set_difference(const KSet& a, const KSet& b);

enum class CheckStatus { Pass, Fail, NotApplicable };
std::string check_status_name(CheckStatus s);

struct SpreadIntersectionReport {
  std::vector<std::size_t> counts;
  Rational x;
  CheckStatus status = CheckStatus::Pass;
  std::optional<std::size_t> first_failure;
};

/// |L n S| for each spread; Fail on any count != x. When every count equals x
/// but n < 2k+1 the result is NotApplicable, since constant intersection is
/// then not known to characterise CL sets.
SpreadIntersectionReport check_spread_intersections(const KSet& l, const std::vector<Spread>& spreads);

std::size_t intersection_count(const KSet& l, const std::vector<Subspace>& items);
bool check_switching_invariance(const KSet& l, const std::vector<Subspace>& r, const std::vector<Subspace>& r_prime);

/// Members sharing no affine point with the affine line ell (k = 1).
std::size_t affine_disjoint_count(const KSet& l, const Subspace& ell);
/// (q^2 gauss(n-2, 1)_q + 1)(x - chi(ell)).
Rational expected_affine_disjoint(const KSet& l, const Subspace& ell);
/// Members through the point p at infinity.
std::size_t count_through_point(const KSet& l, const Subspace& p);

struct LineCountReport {
  CheckStatus status = CheckStatus::Pass;
  std::size_t lines_checked = 0;
  std::size_t infinite_points_checked = 0;
  std::string failure;
};
/// Disjointness counts against the formula for every affine line, and x
/// lines through every point at infinity.
LineCountReport check_line_counts(const KSet& l);

/// Members disjoint from the k-space K (projective mode).
std::size_t pg_disjoint_count(const KSet& l, const Subspace& kspace);
/// (x - chi(K)) gauss(n-k-1, k)_q q^(k^2+k).
Rational expected_pg_disjoint(const KSet& l, const Subspace& kspace);
LineCountReport check_pg_disjoint_counts(const KSet& l);

/// Affine set read as a set of PG(n,q) (same parameter).
KSet embed_to_pg(const KSet& l);

struct Restriction {
  KSet set;
  bool parameter_preserved;  // false when L had members at infinity
  std::size_t dropped;
};
Restriction restrict_from_pg(const KSet& l);

/// Affine L together with every k-space at infinity, as a set of PG(n,q).
KSet extend_with_infinity(const KSet& l);
/// (q^(n-k) - 1) / (q^(k+1) - 1).
Rational infinity_parameter(int n, int k, std::uint32_t q);

/// Members containing the i-space I at infinity.
std::size_t count_through_infinite_subspace(const KSet& l, const Subspace& i_space);
/// gauss(n-i-1, k-i-1)_q x.
Rational expected_through_infinite_subspace(const KSet& l, const Subspace& i_space);

/// Default complement of an i-space I at infinity: the span of the unit
/// vectors on I's non-pivot coordinates (affine, skew to I).
Subspace default_complement(const ProjectiveSpace& pg, const Subspace& i_space);

/// {K n pi : K in L, I subset K} as a (k-i-1)-set of AG(n-i-1, q) in pi's
/// canonical frame.
KSet project_through_infinite_subspace(const KSet& l, const Subspace& i_space, const Subspace& pi);

/// x(x-1)/2 = 0 mod (q+1).
bool modular_condition(const BigInt& x, std::uint32_t q);
/// For (n-2)-sets; throws WrongCodimension otherwise.
bool modular_check(const KSet& l);

}  // namespace clag

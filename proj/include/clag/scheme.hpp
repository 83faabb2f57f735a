#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clag/clsets.hpp"
#include "clag/geometry.hpp"
#include "clag/incidence.hpp"
#include "clag/linalg.hpp"

namespace clag {

/// Lines of AG(n,q) (3 classes) or hyperplanes of AG(n,q) (2 classes).
enum class SchemeKind { Lines, Hyperplanes };

std::string scheme_kind_name(SchemeKind kind);

/// 0 equal, 1 affine meet, 2 meet at infinity, 3 skew.
int classify_line_pair(const ProjectiveSpace& pg, const Subspace& a, const Subspace& b);
/// 0 equal, 1 no common affine point (parallel), 2 common affine point.
int classify_hyperplane_pair(const ProjectiveSpace& pg, const Subspace& a, const Subspace& b);

/// p_{ij}^k stored as intersection[i](k, j).
using IntersectionMatrices = std::vector<RatMatrix>;

struct SchemeTables {
  SchemeKind kind = SchemeKind::Lines;
  int n = 0;
  std::uint32_t q = 0;
  int classes = 0;
  BigInt set_size;
  IntersectionMatrices intersection;  // empty when not known in closed form
  RatMatrix P;
  RatMatrix Q;
};

/// Closed forms for the line scheme (n >= 3).
IntersectionMatrices line_intersection_closed(int n, std::uint32_t q);
RatMatrix line_P_closed(int n, std::uint32_t q);
RatMatrix line_Q_closed(int n, std::uint32_t q);
SchemeTables line_scheme_closed(int n, std::uint32_t q);

/// The hyperplane-scheme matrices in their reference closed form
/// (P is internally inconsistent; see hyperplane_P_adjudicated).
RatMatrix hyperplane_P_printed(int n, std::uint32_t q);
RatMatrix hyperplane_Q_printed(int n, std::uint32_t q);
/// P with entries (0,2) = (q^(n+1) - q^2)/(q-1) and (1,2) = -q, the values
/// the brute-force tables produce at every checked (n, q).
RatMatrix hyperplane_P_adjudicated(int n, std::uint32_t q);
BigInt scheme_set_size(SchemeKind kind, int n, std::uint32_t q);

/// Pairwise relation table over the affine lines or hyperplanes.
class RelationTable {
 public:
  RelationTable(SchemeKind kind, const AmbientSpace& affine, SizeGuards guards = SizeGuards::from_env());

  SchemeKind kind() const noexcept { return kind_; }
  const AmbientSpace& space() const noexcept { return space_; }
  int k() const noexcept { return k_; }
  int classes() const noexcept { return classes_; }
  std::size_t size() const noexcept { return size_; }
  int operator()(std::size_t a, std::size_t b) const { return rel_[a * size_ + b]; }

 private:
  SchemeKind kind_;
  AmbientSpace space_;
  int k_;
  int classes_;
  std::size_t size_;
  std::vector<std::uint8_t> rel_;
};

struct AxiomReport {
  bool identity = true;     // R_0 is the diagonal
  bool symmetric = true;
  bool constant = true;     // p_ij^k independent of the pair in R_k
  bool exhaustive = false;  // every pair checked, or one reference pair per relation
  std::uint64_t pairs_checked = 0;
  std::string failure;
  bool ok() const { return identity && symmetric && constant; }
};

struct BruteScheme {
  IntersectionMatrices intersection;
  std::vector<BigInt> valencies;
  AxiomReport axioms;
  RatMatrix P;  // rows aligned to the closed form when one is given
  RatMatrix Q;
};

/// Intersection numbers by counting; exhaustive axiom check when requested.
BruteScheme brute_force_scheme(const RelationTable& rel, bool exhaustive, const RatMatrix* reference_P = nullptr);

/// Common normalised left eigenvectors of the intersection matrices, one per
/// row. Throws InvalidInput when the eigenvalues are not integers.
RatMatrix eigenmatrix_from_intersection(const IntersectionMatrices& mats);
/// Row permutation of `found` agreeing with `reference` in the most entries.
RatMatrix align_rows(const RatMatrix& found, const RatMatrix& reference);
/// Q = |X| P^{-1}.
RatMatrix dual_from_eigenmatrix(const RatMatrix& P, const BigInt& set_size);

/// Scaled idempotents F_j = D |X| E_j with integer entries D Q_{rel(x,y), j}.
class Idempotents {
 public:
  Idempotents(const RelationTable& rel, const RatMatrix& Q, SizeGuards guards = SizeGuards::from_env());

  std::size_t count() const noexcept { return f_.size(); }
  /// D |X|
  const BigInt& scale() const noexcept { return scale_; }
  std::int64_t entry(std::size_t j, std::size_t a, std::size_t b) const { return f_[j][a * n_ + b]; }
  Rational trace(std::size_t j) const;

  /// E_j chi == 0, computed exactly.
  bool annihilates(std::size_t j, const std::vector<std::uint8_t>& chi) const;
  /// E_j chi scaled by D |X|.
  std::vector<BigInt> apply_scaled(std::size_t j, const std::vector<std::uint8_t>& chi) const;

  struct Check {
    bool orthogonal = true;  // E_i E_j = delta_ij E_i
    bool sum_identity = true;
    bool expansion = true;   // B_j = sum_i P_ij E_i
    std::string failure;
    bool ok() const { return orthogonal && sum_identity && expansion; }
  };
  Check verify(const RatMatrix& P) const;

 private:
  const RelationTable* rel_;
  std::size_t n_;
  BigInt denom_;
  BigInt scale_;
  std::vector<std::vector<std::int64_t>> f_;
};

/// u_i = |R_i n (L x L)| / |L|, streamed over member pairs.
std::vector<Rational> inner_distribution(SchemeKind kind, const KSet& l);
std::vector<Rational> times_Q(const std::vector<Rational>& u, const RatMatrix& Q);
/// Indices j with (u Q)_j != 0.
std::vector<int> eigenspace_profile(const std::vector<Rational>& uq);

/// Adjudication of the printed hyperplane P against brute force.
struct EntryDiff {
  std::size_t row, col;
  Rational printed, computed;
};
struct HyperplaneAdjudication {
  int n;
  std::uint32_t q;
  BigInt set_size;
  RatMatrix printed_P, printed_Q, brute_P, brute_Q;
  std::vector<EntryDiff> diffs;
  bool printed_row_sum_ok, printed_PQ_ok;
  bool adopted_row_sum_ok, adopted_PQ_ok;
  bool printed_Q_matches;        // brute Q equals the printed Q
  bool adjudicated_formula_matches;  // brute P equals hyperplane_P_adjudicated
  AxiomReport axioms;
};
HyperplaneAdjudication adjudicate_hyperplane_scheme(int n, std::uint32_t q);

/// Entry-wise comparison helper: empty when equal.
std::vector<EntryDiff> diff_matrices(const RatMatrix& expected, const RatMatrix& got);
bool is_scaled_identity(const RatMatrix& m, const Rational& s);
/// Row sum of row 0 equals |X|.
bool valency_row_sum_ok(const RatMatrix& P, const BigInt& set_size);

}  // namespace clag

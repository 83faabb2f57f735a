#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clag/clsets.hpp"
#include "clag/geometry.hpp"

namespace clag {

struct SearchOptions {
  /// Column cap; 0 picks 130 for lines and 256 otherwise.
  std::size_t max_columns = 0;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  /// Count solutions without storing them.
  bool count_only = false;
  /// Run is_cameron_liebler on stored solutions (on a seeded sample of at
  /// most `verify_sample` solutions in count-only mode).
  bool verify = true;
  std::size_t verify_sample = 64;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t group_prunes = 0;   // a group got more or fewer than x members
  std::uint64_t forced_prunes = 0;  // a forced coordinate left {0, 1}
  std::uint64_t tasks = 0;
  bool operator==(const SearchStats&) const = default;
};

/// Complete list (or count) of CL k-sets of AG(n,q) with parameter x.
struct SearchCertificate {
  int n = 0;
  std::uint32_t q = 0;
  int k = 0;
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  bool count_only = false;
  bool complemented = false;  // searched q^(n-k) - x and complemented
  std::vector<KSet> solutions;
  SearchStats stats;
  std::vector<std::string> rules;
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  std::size_t verified = 0;  // solutions passed through is_cameron_liebler
  bool verification_ok = true;
  double wall_seconds = 0;
};

/// Backtracking over the pivot coordinates of the reduced row space of the
/// point / k-space incidence matrix, columns grouped by their (k-1)-space at
/// infinity, exactly x chosen per group.
SearchCertificate search_cl_sets(const AmbientSpace& affine, int k, std::uint64_t x, const SearchOptions& opt = {});
inline SearchCertificate search_cl_line_classes(int n, std::uint32_t q, std::uint64_t x, const SearchOptions& opt = {}) {
  return search_cl_sets(AmbientSpace::affine(q, n), 1, x, opt);
}

/// Re-checks a certificate from scratch: every listed set is CL with
/// parameter x, no duplicates, count matches.
bool verify_search_certificate(const SearchCertificate& cert, std::string* why = nullptr);

/// Every known set with parameter x appears among the solutions.
bool rediscovers(const SearchCertificate& cert, const std::vector<KSet>& known);

/// Group index of every k-space: the canonical index of its infinite part.
std::vector<std::size_t> infinity_groups(const AmbientSpace& affine, int k);

struct HyperplaneCount {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  BigInt expected;       // C(q,x)^((q^n-1)/(q-1))
  bool structure_ok = false;  // every solution picks x per group, all distinct
  bool count_only = false;
};
struct HyperplaneClassification {
  int n = 0;
  std::uint32_t q = 0;
  std::vector<HyperplaneCount> per_x;
  bool ok() const;
};
/// All x in 0..q; sets larger than `materialize_limit` are counted only.
HyperplaneClassification classify_hyperplane_cl(int n, std::uint32_t q, const SearchOptions& opt = {},
                                                std::uint64_t materialize_limit = 100'000);

struct SpreadClassification {
  std::size_t spreads = 0;
  std::size_t type_ii = 0;
  bool ok() const { return spreads == type_ii; }
};
/// Every (n-1)-spread of AG(n,q) is a parallel class.
SpreadClassification verify_hyperplane_spread_classification(int n, std::uint32_t q);

struct ProjectionCheck {
  std::size_t sets = 0;
  std::size_t projections = 0;
  std::size_t failures = 0;
  std::vector<std::uint64_t> x_values;  // parameters that had solutions
  std::string first_failure;
  bool ok() const { return failures == 0; }
};
/// Projects every CL k-set of AG(n,q) (all x) through every (k-2)-space at
/// infinity and checks the image is a CL line class with the same x.
ProjectionCheck cross_check_projection(int n, std::uint32_t q, int k, const SearchOptions& opt = {});

}  // namespace clag

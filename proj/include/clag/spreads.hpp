#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clag/geometry.hpp"

namespace clag {

enum class SpreadType { I, II, III, IIIplus, Untyped };

std::string spread_type_name(SpreadType t);
SpreadType parse_spread_type(const std::string& text);

/// Data a spread was built from. Unused fields stay empty.
struct SpreadConstruction {
  std::string method;               // "field-reduction", "parallel-class", ...
  std::optional<Subspace> base;     // K for type II, the (n-2)-space axis for type III
  std::vector<Subspace> hyperplanes;  // type III: the q affine hyperplanes through the axis
  std::vector<Subspace> choices;      // type III: tau_i inside the axis, one per hyperplane
};

/// A k-spread of AG(n,q) (affine members only) or PG(n,q). Elements are kept
/// sorted in canonical order.
struct Spread {
  AmbientSpace space;
  int k = 0;
  std::vector<Subspace> elements;
  SpreadType type = SpreadType::Untyped;
  SpreadConstruction construction;

  /// Column indices of the elements in space.k_spaces(k).
  std::vector<std::size_t> indices() const;
  std::vector<std::uint8_t> characteristic() const;
};

struct CheckResult {
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

/// Pairwise disjoint (in the points of the space) and covering every point.
CheckResult check_spread(const AmbientSpace& space, int k, const std::vector<Subspace>& elements);
inline bool is_spread(const AmbientSpace& space, int k, const std::vector<Subspace>& elements) {
  return check_spread(space, k, elements).ok;
}

/// R and R' disjoint partial spreads covering the same point set.
CheckResult verify_switching_pair(const AmbientSpace& space, int k, const std::vector<Subspace>& r,
                                  const std::vector<Subspace>& r_prime);

/// Desarguesian k-spread of PG(n,q) by field reduction from GF(q^(k+1)).
/// Requires (k+1) | (n+1).
Spread spread_type_I(std::uint32_t q, int n, int k);

/// Members of a projective spread that are affine, as a spread of AG(n,q).
Spread restrict_to_affine(const Spread& projective);

/// All affine k-spaces through the (k-1)-space K at infinity.
Spread spread_type_II(const AmbientSpace& affine, const Subspace& at_infinity);

/// Affine hyperplanes of PG(n,q) through an (n-2)-space at infinity, in
/// canonical order.
std::vector<Subspace> hyperplanes_through_axis(const ProjectiveSpace& pg, const Subspace& axis);

/// Type III: choices[i] is a (k-1)-space in the axis for the i-th hyperplane
/// of hyperplanes_through_axis(axis).
Spread spread_type_III(const AmbientSpace& affine, const Subspace& axis, const std::vector<Subspace>& choices);

/// Type III line spread whose chosen infinite points are pairwise distinct.
bool is_plus(const Spread& s);

std::vector<Spread> all_type_II(const AmbientSpace& affine, int k);
/// Every type III line spread (all axes, all admissible point choices).
std::vector<Spread> all_type_III_lines(const AmbientSpace& affine);

/// Every k-spread of the space by exact cover; throws SizeGuard above
/// `limit` results.
std::vector<Spread> enumerate_spreads(const AmbientSpace& space, int k, std::size_t limit = 1'000'000);

/// Spread of AG(n,q) with members <I, N>: I an i-space at infinity, pi an
/// affine (n-i-1)-space skew to I, local a (k-i-1)-spread of pi given in the
/// coordinates of pi's canonical frame.
Spread extend_through_infinite_subspace(const AmbientSpace& affine, const Subspace& i_space, const Subspace& pi,
                                        const Spread& local);

/// S u E: S a k-spread of the affine subspace tau (global coordinates), E the
/// affine k-spaces through the (k-1)-space I (inside tau, at infinity) that
/// are not contained in tau.
Spread extend_from_subspace(const AmbientSpace& affine, const Subspace& tau, const std::vector<Subspace>& inner,
                            const Subspace& i_space);

/// Image of every element under x -> x * g (g invertible, (n+1)x(n+1)).
std::vector<Subspace> transform(const ProjectiveSpace& pg, const std::vector<Subspace>& items,
                                const std::vector<Elem>& g);

}  // namespace clag

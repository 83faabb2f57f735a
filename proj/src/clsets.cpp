#include "clag/clsets.hpp"

#include <algorithm>

#include "clag/error.hpp"

namespace clag {

namespace {

bool shares_point(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

bool includes(std::span<const std::uint32_t> big, std::span<const std::uint32_t> small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void require_same(const KSet& a, const KSet& b) {
  if (!(a.space() == b.space()) || a.k() != b.k())
    throw Error(ErrorCode::AmbientMismatch, "k-sets live in different spaces");
}

// Projective point indices of an arbitrary subspace.
std::vector<std::uint32_t> projective_points(const ProjectiveSpace& pg, const Subspace& s) {
  const auto& list = pg.subspaces(s.dim());
  if (auto idx = list.find(s)) return list.points[*idx];
  return pg.point_indices(s);
}

}  // namespace

KSet::KSet(AmbientSpace space, int k) : space_(std::move(space)), k_(k) {
  if (k < 0 || k > space_.n()) throw Error(ErrorCode::DimensionOutOfRange, "k outside 0..n");
  chi_.assign(space_.k_space_count(k), 0);
}

KSet::KSet(AmbientSpace space, int k, std::vector<std::uint8_t> chi) : KSet(std::move(space), k) {
  if (chi.size() != chi_.size())
    throw Error(ErrorCode::LengthMismatch, "characteristic vector has length " + std::to_string(chi.size()) +
                                               ", expected " + std::to_string(chi_.size()));
  for (auto& c : chi) {
    if (c > 1) throw Error(ErrorCode::InvalidInput, "characteristic vector must be 0/1");
    size_ += c;
  }
  chi_ = std::move(chi);
}

KSet KSet::from_members(AmbientSpace space, int k, const std::vector<Subspace>& members) {
  std::vector<std::size_t> idx;
  const auto& list = space.pg->subspaces(k);
  for (const auto& m : members) idx.push_back(list.index_of(m));
  return from_indices(std::move(space), k, idx);
}

KSet KSet::from_indices(AmbientSpace space, int k, const std::vector<std::size_t>& indices) {
  KSet s(std::move(space), k);
  for (auto i : indices) {
    if (i >= s.chi_.size()) throw Error(ErrorCode::AmbientMismatch, "member outside the space");
    if (!s.chi_[i]) ++s.size_;
    s.chi_[i] = 1;
  }
  return s;
}

bool KSet::contains(const Subspace& s) const {
  auto idx = space_.pg->subspaces(k_).find(s);
  return idx && *idx < chi_.size() && chi_[*idx];
}

std::vector<std::size_t> KSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < chi_.size(); ++i)
    if (chi_[i]) out.push_back(i);
  return out;
}

std::vector<Subspace> KSet::members() const {
  const auto all = space_.k_spaces(k_);
  std::vector<Subspace> out;
  for (auto i : indices()) out.push_back(all[i]);
  return out;
}

Rational KSet::x() const {
  Rational r(BigInt(static_cast<unsigned long>(size_)), gaussian_binomial(space_.n(), k_, space_.q()));
  r.canonicalize();
  return r;
}

CLVerdict is_cameron_liebler(const KSet& l) {
  CLVerdict v;
  v.x = l.x();
  v.integral = v.x.get_den() == 1;
  if (l.space().is_affine() && !v.integral) {
    v.reason = "parameter " + to_string(v.x) + " is not an integer";
    return v;
  }
  const auto m = incidence_for(l.space(), l.k());
  auto res = m->row_space_membership(l.chi());
  v.cameron_liebler = res.member;
  v.certificate = std::move(res.certificate);
  if (!v.cameron_liebler) v.reason = "characteristic vector is not in the row space of the incidence matrix";
  return v;
}

KSet point_pencil(const AmbientSpace& space, const Subspace& p, int k) {
  if (p.dim() != 0) throw Error(ErrorCode::WrongDimension, "pencil vertex must be a point");
  if (space.is_affine() && !p.is_affine()) throw Error(ErrorCode::GeometryMismatch, "pencil vertex must be affine");
  const auto vertex = static_cast<std::uint32_t>(space.pg->points().index_of(p));
  KSet out(space, k);
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < space.k_space_count(k); ++j) {
    auto pts = space.points_of(k, j);
    if (std::binary_search(pts.begin(), pts.end(), vertex)) idx.push_back(j);
  }
  return KSet::from_indices(space, k, idx);
}

KSet pg_hyperplane_set(const AmbientSpace& space, const Subspace& h, int k) {
  if (space.is_affine()) throw Error(ErrorCode::GeometryMismatch, "hyperplane sets are defined in projective mode");
  if (h.dim() != space.n() - 1) throw Error(ErrorCode::WrongDimension, "H must be a hyperplane");
  const auto hp = projective_points(*space.pg, h);
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < space.k_space_count(k); ++j)
    if (includes(hp, space.points_of(k, j))) idx.push_back(j);
  return KSet::from_indices(space, k, idx);
}

KSet complement(const KSet& l) {
  auto chi = l.chi();
  for (auto& c : chi) c ^= 1;
  return KSet(l.space(), l.k(), std::move(chi));
}

KSet set_union(const KSet& a, const KSet& b) {
  require_same(a, b);
  auto chi = a.chi();
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (chi[i] && b.chi()[i]) throw Error(ErrorCode::NotDisjoint, "union needs disjoint k-sets");
    chi[i] |= b.chi()[i];
  }
  return KSet(a.space(), a.k(), std::move(chi));
}

KSet set_difference(const KSet& a, const KSet& b) {
  require_same(a, b);
  auto chi = a.chi();
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (b.chi()[i] && !chi[i]) throw Error(ErrorCode::NotContained, "difference needs b contained in a");
    chi[i] &= static_cast<std::uint8_t>(!b.chi()[i]);
  }
  return KSet(a.space(), a.k(), std::move(chi));
}

std::string check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "fail";
}

std::size_t intersection_count(const KSet& l, const std::vector<Subspace>& items) {
  const auto& list = l.space().pg->subspaces(l.k());
  std::size_t c = 0;
  for (const auto& s : items) {
    auto idx = list.find(s);
    if (idx && *idx < l.chi().size() && l.chi()[*idx]) ++c;
  }
  return c;
}

SpreadIntersectionReport check_spread_intersections(const KSet& l, const std::vector<Spread>& spreads) {
  SpreadIntersectionReport r;
  r.x = l.x();
  for (std::size_t s = 0; s < spreads.size(); ++s) {
    if (!(spreads[s].space == l.space()) || spreads[s].k != l.k())
      throw Error(ErrorCode::AmbientMismatch, "spread and k-set live in different spaces");
    std::size_t c = 0;
    for (auto i : spreads[s].indices()) c += l.chi()[i];
    r.counts.push_back(c);
    if (Rational(static_cast<unsigned long>(c)) != r.x && !r.first_failure) r.first_failure = s;
  }
  if (r.first_failure)
    r.status = CheckStatus::Fail;
  else if (l.space().n() < 2 * l.k() + 1)
    r.status = CheckStatus::NotApplicable;
  return r;
}

bool check_switching_invariance(const KSet& l, const std::vector<Subspace>& r, const std::vector<Subspace>& r_prime) {
  return intersection_count(l, r) == intersection_count(l, r_prime);
}

std::size_t affine_disjoint_count(const KSet& l, const Subspace& ell) {
  if (l.k() != 1 || ell.dim() != 1) throw Error(ErrorCode::NotLines, "disjointness counts need line sets");
  if (!l.space().is_affine() || !ell.is_affine())
    throw Error(ErrorCode::GeometryMismatch, "affine disjointness needs an affine line set and line");
  const auto& pts = l.space().pg->points();
  auto lp = projective_points(*l.space().pg, ell);
  std::erase_if(lp, [&](std::uint32_t p) { return p >= pts.affine_count; });
  std::size_t c = 0;
  for (auto j : l.indices())
    if (!shares_point(l.space().points_of(1, j), lp)) ++c;
  return c;
}

Rational expected_affine_disjoint(const KSet& l, const Subspace& ell) {
  const std::uint32_t q = l.space().q();
  const BigInt factor = BigInt(q) * q * gaussian_binomial(l.space().n() - 2, 1, q) + 1;
  return Rational(factor) * (l.x() - (l.contains(ell) ? 1 : 0));
}

std::size_t count_through_point(const KSet& l, const Subspace& p) {
  const auto vertex = static_cast<std::uint32_t>(l.space().pg->points().index_of(p));
  const auto& full = l.space().pg->subspaces(l.k()).points;
  std::size_t c = 0;
  for (auto j : l.indices())
    if (std::binary_search(full[j].begin(), full[j].end(), vertex)) ++c;
  return c;
}

LineCountReport check_line_counts(const KSet& l) {
  LineCountReport r;
  const auto lines = l.space().k_spaces(1);
  for (const auto& ell : lines) {
    ++r.lines_checked;
    const auto got = affine_disjoint_count(l, ell);
    const auto want = expected_affine_disjoint(l, ell);
    if (Rational(static_cast<unsigned long>(got)) != want) {
      r.status = CheckStatus::Fail;
      r.failure = "line disjoint count " + std::to_string(got) + " != " + to_string(want);
      return r;
    }
  }
  const auto& pts = l.space().pg->points();
  for (std::size_t p = pts.affine_count; p < pts.items.size(); ++p) {
    ++r.infinite_points_checked;
    const auto got = count_through_point(l, pts.items[p]);
    if (Rational(static_cast<unsigned long>(got)) != l.x()) {
      r.status = CheckStatus::Fail;
      r.failure = std::to_string(got) + " lines through an infinite point, expected " + to_string(l.x());
      return r;
    }
  }
  if (l.space().n() < 3) r.status = CheckStatus::NotApplicable;
  return r;
}

std::size_t pg_disjoint_count(const KSet& l, const Subspace& kspace) {
  if (l.space().is_affine()) throw Error(ErrorCode::GeometryMismatch, "projective disjointness needs projective mode");
  const auto kp = projective_points(*l.space().pg, kspace);
  std::size_t c = 0;
  for (auto j : l.indices())
    if (!shares_point(l.space().points_of(l.k(), j), kp)) ++c;
  return c;
}

Rational expected_pg_disjoint(const KSet& l, const Subspace& kspace) {
  const int n = l.space().n(), k = l.k();
  const std::uint32_t q = l.space().q();
  const BigInt factor = gaussian_binomial(n - k - 1, k, q) * ipow(q, static_cast<unsigned>(k * k + k));
  return Rational(factor) * (l.x() - (l.contains(kspace) ? 1 : 0));
}

LineCountReport check_pg_disjoint_counts(const KSet& l) {
  LineCountReport r;
  if (l.space().n() < 2 * l.k() + 1) {
    r.status = CheckStatus::NotApplicable;
    return r;
  }
  for (const auto& kspace : l.space().k_spaces(l.k())) {
    ++r.lines_checked;
    const auto got = pg_disjoint_count(l, kspace);
    const auto want = expected_pg_disjoint(l, kspace);
    if (Rational(static_cast<unsigned long>(got)) != want) {
      r.status = CheckStatus::Fail;
      r.failure = "disjoint count " + std::to_string(got) + " != " + to_string(want);
      return r;
    }
  }
  return r;
}

KSet embed_to_pg(const KSet& l) {
  if (!l.space().is_affine()) throw Error(ErrorCode::GeometryMismatch, "embedding needs an affine k-set");
  AmbientSpace pg{l.space().pg, Mode::Projective};
  auto chi = l.chi();
  chi.resize(pg.k_space_count(l.k()), 0);
  return KSet(pg, l.k(), std::move(chi));
}

Restriction restrict_from_pg(const KSet& l) {
  if (l.space().is_affine()) throw Error(ErrorCode::GeometryMismatch, "restriction needs a projective k-set");
  AmbientSpace ag{l.space().pg, Mode::Affine};
  const std::size_t affine = ag.k_space_count(l.k());
  std::vector<std::uint8_t> chi(l.chi().begin(), l.chi().begin() + static_cast<std::ptrdiff_t>(affine));
  const std::size_t dropped = static_cast<std::size_t>(
      std::count(l.chi().begin() + static_cast<std::ptrdiff_t>(affine), l.chi().end(), std::uint8_t{1}));
  return {KSet(ag, l.k(), std::move(chi)), dropped == 0, dropped};
}

KSet extend_with_infinity(const KSet& l) {
  KSet e = embed_to_pg(l);
  auto chi = e.chi();
  std::fill(chi.begin() + static_cast<std::ptrdiff_t>(l.chi().size()), chi.end(), std::uint8_t{1});
  return KSet(e.space(), l.k(), std::move(chi));
}

Rational infinity_parameter(int n, int k, std::uint32_t q) {
  Rational r(ipow(q, static_cast<unsigned>(n - k)) - 1, ipow(q, static_cast<unsigned>(k + 1)) - 1);
  r.canonicalize();
  return r;
}

std::size_t count_through_infinite_subspace(const KSet& l, const Subspace& i_space) {
  if (i_space.is_affine()) throw Error(ErrorCode::NotAtInfinity, "I must lie at infinity");
  const auto ip = projective_points(*l.space().pg, i_space);
  const auto& full = l.space().pg->subspaces(l.k()).points;
  std::size_t c = 0;
  for (auto j : l.indices())
    if (includes(full[j], ip)) ++c;
  return c;
}

Rational expected_through_infinite_subspace(const KSet& l, const Subspace& i_space) {
  const int n = l.space().n(), k = l.k(), i = i_space.dim();
  return Rational(gaussian_binomial(n - i - 1, k - i - 1, l.space().q())) * l.x();
}

Subspace default_complement(const ProjectiveSpace& pg, const Subspace& i_space) {
  const std::size_t cols = static_cast<std::size_t>(pg.n()) + 1;
  std::vector<bool> pivot(cols, false);
  for (int r = 0; r <= i_space.dim(); ++r) {
    auto row = i_space.row(r);
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    pivot[c] = true;
  }
  std::vector<Elem> rows;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot[c]) continue;
    std::vector<Elem> e(cols, 0);
    e[c] = 1;
    rows.insert(rows.end(), e.begin(), e.end());
  }
  return pg.make(std::move(rows));
}

KSet project_through_infinite_subspace(const KSet& l, const Subspace& i_space, const Subspace& pi) {
  const auto& space = l.space();
  const auto& pg = *space.pg;
  const int n = space.n(), k = l.k(), i = i_space.dim();
  if (!space.is_affine()) throw Error(ErrorCode::GeometryMismatch, "projection works on affine k-sets");
  if (i_space.is_affine()) throw Error(ErrorCode::NotAtInfinity, "I must lie at infinity");
  if (i < 0 || i > k - 2) throw Error(ErrorCode::DimensionViolation, "need 0 <= i <= k-2");
  if (n < k + 2) throw Error(ErrorCode::DimensionViolation, "need n >= k+2");
  if (pi.dim() != n - i - 1 || !pi.is_affine())
    throw Error(ErrorCode::DimensionViolation, "pi must be an affine (n-i-1)-space");
  if (!pg.meet(pi, i_space).is_empty()) throw Error(ErrorCode::NotSkew, "pi meets I");

  AmbientSpace target = AmbientSpace::affine(space.q(), n - i - 1);
  std::vector<Subspace> images;
  const auto ip = projective_points(pg, i_space);
  const auto& full = pg.subspaces(k).points;
  const auto all = space.k_spaces(k);
  for (auto j : l.indices()) {
    if (!includes(full[j], ip)) continue;
    images.push_back(pg.localize(pg.meet(all[j], pi), pi));
  }
  return KSet::from_members(target, k - i - 1, images);
}

bool modular_condition(const BigInt& x, std::uint32_t q) {
  const BigInt t = x * (x - 1) / 2;
  return t % (q + 1) == 0;
}

bool modular_check(const KSet& l) {
  if (l.k() != l.space().n() - 2) throw Error(ErrorCode::WrongCodimension, "modular condition needs k = n-2");
  const Rational x = l.x();
  if (x.get_den() != 1) return false;
  return modular_condition(x.get_num(), l.space().q());
}

}  // namespace clag

#include "clag/spreads.hpp"

#include <algorithm>
#include <set>

#include "clag/error.hpp"

namespace clag {

std::string spread_type_name(SpreadType t) {
  switch (t) {
    case SpreadType::I: return "I";
    case SpreadType::II: return "II";
    case SpreadType::III: return "III";
    case SpreadType::IIIplus: return "III+";
    case SpreadType::Untyped: return "untyped";
  }
  return "untyped";
}

SpreadType parse_spread_type(const std::string& text) {
  if (text == "I" || text == "1") return SpreadType::I;
  if (text == "II" || text == "2") return SpreadType::II;
  if (text == "III" || text == "3") return SpreadType::III;
  if (text == "III+" || text == "IIIplus") return SpreadType::IIIplus;
  if (text == "untyped") return SpreadType::Untyped;
  throw Error(ErrorCode::InvalidInput, "unknown spread type '" + text + "'");
}

namespace {

// Point indices of s restricted to the points of the space.
std::vector<std::uint32_t> points_in(const AmbientSpace& space, const Subspace& s) {
  const auto& list = space.pg->subspaces(s.dim());
  std::vector<std::uint32_t> pts;
  if (auto idx = list.find(s))
    pts = list.points[*idx];
  else
    pts = space.pg->point_indices(s);
  if (space.is_affine()) {
    const auto affine = static_cast<std::uint32_t>(space.pg->points().affine_count);
    pts.erase(std::lower_bound(pts.begin(), pts.end(), affine), pts.end());
  }
  return pts;
}

void sort_canonical(std::vector<Subspace>& items) { std::sort(items.begin(), items.end(), canonical_less); }

// Covers the affine points with the spaces <base, p>; used by type II/III.
std::vector<Subspace> affine_spans_through(const ProjectiveSpace& pg, const Subspace& base,
                                           const std::vector<std::uint32_t>& affine_points) {
  std::vector<Subspace> out;
  std::set<std::uint32_t> covered;
  const auto& pts = pg.points();
  for (auto p : affine_points) {
    if (covered.count(p)) continue;
    Subspace s = pg.span(base, pts.items[p]);
    for (auto c : pg.point_indices(s)) covered.insert(c);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::uint32_t> all_affine_points(const ProjectiveSpace& pg) {
  std::vector<std::uint32_t> out(pg.points().affine_count);
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

void require_at_infinity(const Subspace& s, const char* what) {
  if (s.is_affine()) throw Error(ErrorCode::NotAtInfinity, std::string(what) + " must lie in the hyperplane at infinity");
}

void require_affine_space(const AmbientSpace& space) {
  if (!space.is_affine()) throw Error(ErrorCode::GeometryMismatch, "construction needs an affine space");
}

// Polynomials over GF(q) as coefficient vectors, lowest degree first.
using Poly = std::vector<Elem>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_rem(const FiniteField& f, Poly a, const Poly& b) {
  trim(a);
  const Elem lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const Elem c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    trim(a);
  }
  return a;
}

bool irreducible(const FiniteField& f, const Poly& p) {
  const int d = static_cast<int>(p.size()) - 1;
  for (int deg = 1; deg <= d / 2; ++deg) {
    Poly g(deg + 1, 0);
    g[deg] = 1;
    while (true) {
      if (poly_rem(f, p, g).empty()) return false;
      int i = 0;
      while (i < deg && ++g[i] == f.q()) g[i++] = 0;
      if (i == deg) break;
    }
  }
  return true;
}

// Least monic irreducible polynomial of degree d, ordered by lower coefficients.
Poly least_irreducible(const FiniteField& f, int d) {
  Poly p(d + 1, 0);
  p[d] = 1;
  while (true) {
    if (p[0] != 0 && irreducible(f, p)) return p;
    int i = 0;
    while (i < d && ++p[i] == f.q()) p[i++] = 0;
    if (i == d) throw Error(ErrorCode::InvalidInput, "no irreducible polynomial found");
  }
}

}  // namespace

std::vector<std::size_t> Spread::indices() const {
  const auto& list = space.pg->subspaces(k);
  std::vector<std::size_t> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(list.index_of(e));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> Spread::characteristic() const {
  std::vector<std::uint8_t> chi(space.k_space_count(k), 0);
  for (auto i : indices()) {
    if (i >= chi.size()) throw Error(ErrorCode::GeometryMismatch, "spread element outside the space");
    chi[i] = 1;
  }
  return chi;
}

CheckResult check_spread(const AmbientSpace& space, int k, const std::vector<Subspace>& elements) {
  std::vector<std::uint8_t> covered(space.point_count(), 0);
  std::size_t total = 0;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto& s = elements[e];
    if (s.ambient_dim() != space.n()) return CheckResult::fail("element " + std::to_string(e) + " has wrong ambient");
    if (s.dim() != k) return CheckResult::fail("element " + std::to_string(e) + " is not a " + std::to_string(k) + "-space");
    if (space.is_affine() && !s.is_affine())
      return CheckResult::fail("element " + std::to_string(e) + " lies at infinity");
    for (auto p : points_in(space, s)) {
      if (covered[p]) return CheckResult::fail("element " + std::to_string(e) + " meets an earlier element");
      covered[p] = 1;
      ++total;
    }
  }
  if (total != covered.size())
    return CheckResult::fail("covers " + std::to_string(total) + " of " + std::to_string(covered.size()) + " points");
  return {};
}

CheckResult verify_switching_pair(const AmbientSpace& space, int k, const std::vector<Subspace>& r,
                                  const std::vector<Subspace>& r_prime) {
  std::set<std::string> keys;
  for (const auto& s : r) keys.insert(s.key());
  for (const auto& s : r_prime)
    if (keys.count(s.key())) return CheckResult::fail("R and R' share an element");
  auto cover = [&](const std::vector<Subspace>& part, const char* name, std::vector<std::uint8_t>& covered) {
    covered.assign(space.point_count(), 0);
    for (const auto& s : part) {
      if (s.dim() != k) return CheckResult::fail(std::string(name) + " has an element of wrong dimension");
      if (space.is_affine() && !s.is_affine()) return CheckResult::fail(std::string(name) + " has an element at infinity");
      for (auto p : points_in(space, s)) {
        if (covered[p]) return CheckResult::fail(std::string(name) + " is not a partial spread");
        covered[p] = 1;
      }
    }
    return CheckResult{};
  };
  std::vector<std::uint8_t> a, b;
  if (auto res = cover(r, "R", a); !res) return res;
  if (auto res = cover(r_prime, "R'", b); !res) return res;
  if (a != b) return CheckResult::fail("R and R' cover different point sets");
  return {};
}

Spread spread_type_I(std::uint32_t q, int n, int k) {
  if (k < 0 || k > n) throw Error(ErrorCode::DimensionOutOfRange, "k outside 0..n");
  if ((n + 1) % (k + 1) != 0)
    throw Error(ErrorCode::DivisibilityViolated,
                "field reduction needs (k+1) | (n+1), got k=" + std::to_string(k) + ", n=" + std::to_string(n));
  auto pg = projective_space(q, n);
  const auto& f = pg->field();
  const int d = k + 1;
  const Poly mod = least_irreducible(f, d);
  const std::size_t cols = static_cast<std::size_t>(n) + 1;
  const std::size_t blocks = cols / d;

  // Multiply every GF(q^d) block of v by x.
  auto times_x = [&](std::vector<Elem> v) {
    for (std::size_t b = 0; b < blocks; ++b) {
      Elem* c = v.data() + b * d;
      const Elem top = c[d - 1];
      for (int i = d - 1; i > 0; --i) c[i] = c[i - 1];
      c[0] = 0;
      if (top != 0)
        for (int i = 0; i < d; ++i) c[i] = f.sub(c[i], f.mul(top, mod[i]));
    }
    return v;
  };

  Spread s{AmbientSpace::projective(q, n), k, {}, SpreadType::I, {"field-reduction", std::nullopt, {}, {}}};
  const auto& pts = pg->points();
  std::vector<std::uint8_t> covered(pts.items.size(), 0);
  for (std::size_t p = 0; p < pts.items.size(); ++p) {
    if (covered[p]) continue;
    std::vector<Elem> rows;
    std::vector<Elem> v = pts.items[p].data();
    for (int j = 0; j < d; ++j) {
      rows.insert(rows.end(), v.begin(), v.end());
      v = times_x(std::move(v));
    }
    Subspace member = pg->make(std::move(rows));
    for (auto c : pg->point_indices(member)) covered[c] = 1;
    s.elements.push_back(std::move(member));
  }
  sort_canonical(s.elements);
  return s;
}

Spread restrict_to_affine(const Spread& projective) {
  if (projective.space.is_affine()) throw Error(ErrorCode::GeometryMismatch, "spread is already affine");
  Spread s = projective;
  s.space = AmbientSpace{projective.space.pg, Mode::Affine};
  std::erase_if(s.elements, [](const Subspace& e) { return !e.is_affine(); });
  return s;
}

Spread spread_type_II(const AmbientSpace& affine, const Subspace& at_infinity) {
  require_affine_space(affine);
  require_at_infinity(at_infinity, "K");
  const int k = at_infinity.dim() + 1;
  if (k < 1 || k > affine.n() - 1)
    throw Error(ErrorCode::WrongDimension, "K must have dimension k-1 for some 1 <= k <= n-1");
  const auto& pg = *affine.pg;
  Spread s{affine, k, affine_spans_through(pg, at_infinity, all_affine_points(pg)), SpreadType::II,
           {"parallel-class", at_infinity, {}, {}}};
  sort_canonical(s.elements);
  return s;
}

std::vector<Subspace> hyperplanes_through_axis(const ProjectiveSpace& pg, const Subspace& axis) {
  require_at_infinity(axis, "axis");
  if (axis.dim() != pg.n() - 2) throw Error(ErrorCode::WrongDimension, "axis must be an (n-2)-space");
  auto out = affine_spans_through(pg, axis, all_affine_points(pg));
  sort_canonical(out);
  return out;
}

Spread spread_type_III(const AmbientSpace& affine, const Subspace& axis, const std::vector<Subspace>& choices) {
  require_affine_space(affine);
  const auto& pg = *affine.pg;
  const auto hyperplanes = hyperplanes_through_axis(pg, axis);
  if (choices.size() != hyperplanes.size())
    throw Error(ErrorCode::BadChoices, "need one choice per hyperplane through the axis (" +
                                           std::to_string(hyperplanes.size()) + ")");
  const int k = choices.front().dim() + 1;
  if (k < 1 || k > affine.n() - 1) throw Error(ErrorCode::WrongDimension, "choices must be (k-1)-spaces, 1 <= k <= n-1");
  for (const auto& t : choices) {
    if (t.dim() != k - 1) throw Error(ErrorCode::WrongDimension, "choices differ in dimension");
    if (!pg.contains(axis, t)) throw Error(ErrorCode::BadChoices, "a choice is not contained in the axis");
  }
  if (std::all_of(choices.begin(), choices.end(), [&](const Subspace& t) { return t == choices.front(); }))
    throw Error(ErrorCode::AllEqual, "all choices equal: this is a type II spread");

  Spread s{affine, k, {}, SpreadType::III, {"mixed", axis, hyperplanes, choices}};
  const auto& pts = pg.points();
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    std::vector<std::uint32_t> affine_pts;
    for (auto p : pg.point_indices(hyperplanes[i]))
      if (p < pts.affine_count) affine_pts.push_back(p);
    auto part = affine_spans_through(pg, choices[i], affine_pts);
    s.elements.insert(s.elements.end(), part.begin(), part.end());
  }
  sort_canonical(s.elements);
  if (auto res = check_spread(affine, k, s.elements); !res)
    throw Error(ErrorCode::BadChoices, "type III construction failed: " + res.reason);
  if (k == 1 && is_plus(s)) s.type = SpreadType::IIIplus;
  return s;
}

bool is_plus(const Spread& s) {
  if (s.type != SpreadType::III && s.type != SpreadType::IIIplus)
    throw Error(ErrorCode::WrongType, "III+ is only defined for type III spreads");
  if (s.k != 1) throw Error(ErrorCode::WrongType, "III+ is only defined for line spreads");
  std::set<std::string> seen;
  for (const auto& t : s.construction.choices)
    if (!seen.insert(t.key()).second) return false;
  return true;
}

std::vector<Spread> all_type_II(const AmbientSpace& affine, int k) {
  require_affine_space(affine);
  std::vector<Spread> out;
  const auto& list = affine.pg->subspaces(k - 1);
  for (std::size_t i = list.affine_count; i < list.items.size(); ++i) out.push_back(spread_type_II(affine, list.items[i]));
  return out;
}

std::vector<Spread> all_type_III_lines(const AmbientSpace& affine) {
  require_affine_space(affine);
  const auto& pg = *affine.pg;
  std::vector<Spread> out;
  const auto& axes = pg.subspaces(pg.n() - 2);
  const auto& pts = pg.points();
  const std::size_t q = pg.q();
  for (std::size_t a = axes.affine_count; a < axes.items.size(); ++a) {
    const auto& axis = axes.items[a];
    const auto& on_axis = axes.points[a];
    std::vector<std::size_t> pick(q, 0);
    while (true) {
      bool all_equal = std::all_of(pick.begin(), pick.end(), [&](std::size_t v) { return v == pick[0]; });
      if (!all_equal) {
        std::vector<Subspace> choices;
        for (auto c : pick) choices.push_back(pts.items[on_axis[c]]);
        out.push_back(spread_type_III(affine, axis, choices));
      }
      std::size_t i = 0;
      while (i < q && ++pick[i] == on_axis.size()) pick[i++] = 0;
      if (i == q) break;
    }
  }
  return out;
}

std::vector<Spread> enumerate_spreads(const AmbientSpace& space, int k, std::size_t limit) {
  const auto all = space.k_spaces(k);
  const std::size_t npts = space.point_count();
  std::vector<std::vector<std::size_t>> through(npts);
  for (std::size_t j = 0; j < all.size(); ++j)
    for (auto p : space.points_of(k, j)) through[p].push_back(j);

  std::vector<Spread> out;
  std::vector<std::uint8_t> covered(npts, 0);
  std::vector<std::size_t> chosen;
  auto recurse = [&](auto&& self, std::size_t from) -> void {
    while (from < npts && covered[from]) ++from;
    if (from == npts) {
      if (out.size() >= limit) throw Error(ErrorCode::SizeGuard, "spread enumeration exceeded its limit");
      Spread s{space, k, {}, SpreadType::Untyped, {"exact-cover", std::nullopt, {}, {}}};
      for (auto j : chosen) s.elements.push_back(all[j]);
      out.push_back(std::move(s));
      return;
    }
    for (auto j : through[from]) {
      const auto pts = space.points_of(k, j);
      if (std::any_of(pts.begin(), pts.end(), [&](std::uint32_t p) { return covered[p] != 0; })) continue;
      for (auto p : pts) covered[p] = 1;
      chosen.push_back(j);
      self(self, from + 1);
      chosen.pop_back();
      for (auto p : pts) covered[p] = 0;
    }
  };
  recurse(recurse, 0);
  return out;
}

Spread extend_through_infinite_subspace(const AmbientSpace& affine, const Subspace& i_space, const Subspace& pi,
                                        const Spread& local) {
  require_affine_space(affine);
  require_at_infinity(i_space, "I");
  const auto& pg = *affine.pg;
  if (!pi.is_affine()) throw Error(ErrorCode::GeometryMismatch, "pi must be affine");
  if (pi.dim() != affine.n() - i_space.dim() - 1 || !pg.meet(pi, i_space).is_empty())
    throw Error(ErrorCode::GeometryMismatch, "pi must be an (n-i-1)-space skew to I");
  if (!local.space.is_affine() || local.space.n() != pi.dim() || local.space.q() != affine.q())
    throw Error(ErrorCode::GeometryMismatch, "local spread must live in AG(dim pi, q)");
  const int k = i_space.dim() + local.k + 1;
  Spread s{affine, k, {}, SpreadType::Untyped, {"through-infinite-subspace", i_space, {pi}, {}}};
  for (const auto& n : local.elements) s.elements.push_back(pg.span(i_space, pg.lift(n, pi)));
  sort_canonical(s.elements);
  if (auto res = check_spread(affine, k, s.elements); !res)
    throw Error(ErrorCode::GeometryMismatch, "extension is not a spread: " + res.reason);
  return s;
}

Spread extend_from_subspace(const AmbientSpace& affine, const Subspace& tau, const std::vector<Subspace>& inner,
                            const Subspace& i_space) {
  require_affine_space(affine);
  require_at_infinity(i_space, "I");
  const auto& pg = *affine.pg;
  if (!tau.is_affine()) throw Error(ErrorCode::GeometryMismatch, "tau must be affine");
  if (!pg.contains(tau, i_space)) throw Error(ErrorCode::GeometryMismatch, "I must lie in tau");
  const int k = i_space.dim() + 1;
  for (const auto& e : inner)
    if (e.dim() != k || !pg.contains(tau, e))
      throw Error(ErrorCode::GeometryMismatch, "inner spread elements must be k-spaces of tau");
  Spread s{affine, k, inner, SpreadType::Untyped, {"subspace-extension", i_space, {tau}, {}}};
  for (auto& e : spread_type_II(affine, i_space).elements)
    if (!pg.contains(tau, e)) s.elements.push_back(std::move(e));
  sort_canonical(s.elements);
  if (auto res = check_spread(affine, k, s.elements); !res)
    throw Error(ErrorCode::GeometryMismatch, "extension is not a spread: " + res.reason);
  return s;
}

std::vector<Subspace> transform(const ProjectiveSpace& pg, const std::vector<Subspace>& items,
                                const std::vector<Elem>& g) {
  const std::size_t cols = static_cast<std::size_t>(pg.n()) + 1;
  if (g.size() != cols * cols) throw Error(ErrorCode::LengthMismatch, "transform must be (n+1)x(n+1)");
  const auto& f = pg.field();
  std::vector<Subspace> out;
  for (const auto& s : items) {
    std::vector<Elem> rows;
    for (int i = 0; i <= s.dim(); ++i) {
      auto r = s.row(i);
      for (std::size_t j = 0; j < cols; ++j) {
        Elem acc = 0;
        for (std::size_t t = 0; t < cols; ++t) acc = f.add(acc, f.mul(r[t], g[t * cols + j]));
        rows.push_back(acc);
      }
    }
    Subspace img = pg.make(std::move(rows));
    if (img.dim() != s.dim()) throw Error(ErrorCode::InvalidInput, "transform is singular");
    out.push_back(std::move(img));
  }
  return out;
}

}  // namespace clag

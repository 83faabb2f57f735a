#include "doctest.h"

#include <random>
#include <set>

#include "clag/clsets.hpp"
#include "clag/error.hpp"

using namespace clag;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidInput;
}

KSet random_kset(const AmbientSpace& space, int k, std::mt19937& rng, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::uint8_t> chi(space.k_space_count(k));
  for (auto& c : chi) c = coin(rng);
  return KSet(space, k, std::move(chi));
}

std::vector<Spread> type_ii_and_iii(const AmbientSpace& ag) {
  auto s = all_type_II(ag, 1);
  auto t = all_type_III_lines(ag);
  s.insert(s.end(), t.begin(), t.end());
  return s;
}

}  // namespace

TEST_CASE("definitional test on small examples") {
  auto ag = AmbientSpace::affine(2, 3);
  KSet empty(ag, 1);
  auto v0 = is_cameron_liebler(empty);
  CHECK(v0.cameron_liebler);
  CHECK(v0.x == 0);

  auto pencil = point_pencil(ag, ag.pg->point({1, 0, 1, 1}), 1);
  CHECK(pencil.size() == 7);
  auto vp = is_cameron_liebler(pencil);
  CHECK(vp.cameron_liebler);
  CHECK(vp.x == 1);
  std::vector<Rational> chi(pencil.chi().begin(), pencil.chi().end());
  CHECK(incidence_for(ag, 1)->verify_certificate(vp.certificate, chi));

  // An affine plane of AG(3,2) has 4 points, hence 6 lines. No nonempty
  // subset of them is CL, and the row-space route agrees without the
  // integrality shortcut.
  const auto plane = ag.pg->make({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0});
  std::vector<std::size_t> in_plane;
  for (std::size_t j = 0; j < ag.k_space_count(1); ++j)
    if (ag.pg->contains(plane, ag.k_spaces(1)[j])) in_plane.push_back(j);
  REQUIRE(in_plane.size() == 6);
  CHECK(KSet::from_indices(ag, 1, in_plane).x() == Rational(6, 7));
  for (unsigned mask = 1; mask < (1u << in_plane.size()); ++mask) {
    std::vector<std::size_t> pick;
    for (std::size_t b = 0; b < in_plane.size(); ++b)
      if (mask >> b & 1) pick.push_back(in_plane[b]);
    auto sub = KSet::from_indices(ag, 1, pick);
    CHECK_FALSE(is_cameron_liebler(sub).cameron_liebler);
    CHECK_FALSE(incidence_for(ag, 1)->row_space_membership(sub.chi()).member);
  }

  // A single line is rejected by integrality.
  auto one = KSet::from_indices(ag, 1, {0});
  auto v1 = is_cameron_liebler(one);
  CHECK_FALSE(v1.integral);
  CHECK_FALSE(v1.cameron_liebler);
  CHECK(v1.x == Rational(1, 7));
}

TEST_CASE("projective hyperplane sets") {
  auto pg = AmbientSpace::projective(2, 3);
  const auto h = pg.pg->make({0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
  auto s = pg_hyperplane_set(pg, h, 1);
  CHECK(s.size() == 7);
  CHECK(s.x() == 1);
  CHECK(is_cameron_liebler(s).cameron_liebler);

  // PG(4,2), H a solid: x = 7/3 and still in the row space.
  auto pg4 = AmbientSpace::projective(2, 4);
  auto s4 = pg_hyperplane_set(pg4, pg4.pg->hyperplane_at_infinity(), 1);
  CHECK(s4.size() == 35);
  CHECK(s4.x() == Rational(7, 3));
  CHECK(s4.x() == infinity_parameter(4, 1, 2));
  auto v = is_cameron_liebler(s4);
  CHECK_FALSE(v.integral);
  CHECK(v.cameron_liebler);

  CHECK(code_of([&] { pg_hyperplane_set(AmbientSpace::affine(2, 3), h, 1); }) == ErrorCode::GeometryMismatch);
}

TEST_CASE("closure operations") {
  auto ag = AmbientSpace::affine(2, 3);
  KSet empty(ag, 1);
  auto all = complement(empty);
  CHECK(all.size() == 28);
  CHECK(all.x() == 4);
  CHECK(is_cameron_liebler(all).cameron_liebler);

  auto a = point_pencil(ag, ag.pg->point({1, 0, 0, 0}), 1);
  auto b = point_pencil(ag, ag.pg->point({1, 1, 1, 0}), 1);
  CHECK(code_of([&] { set_union(a, b); }) == ErrorCode::NotDisjoint);
  CHECK(set_difference(a, a) == empty);
  CHECK(code_of([&] { set_difference(a, b); }) == ErrorCode::NotContained);
  auto ca = complement(a);
  CHECK(ca.x() == 3);
  CHECK(is_cameron_liebler(ca).cameron_liebler);
  CHECK(set_union(a, ca) == all);
}

TEST_CASE("spread intersections") {
  auto ag = AmbientSpace::affine(2, 3);
  auto pencil = point_pencil(ag, ag.pg->point({1, 1, 0, 0}), 1);
  auto r2 = check_spread_intersections(pencil, all_type_II(ag, 1));
  CHECK(r2.status == CheckStatus::Pass);
  CHECK(r2.counts.size() == 7);
  for (auto c : r2.counts) CHECK(c == 1);
  auto r3 = check_spread_intersections(pencil, all_type_III_lines(ag));
  CHECK(r3.status == CheckStatus::Pass);
  for (auto c : r3.counts) CHECK(c == 1);

  const auto ell = ag.k_spaces(1)[0];
  auto one = KSet::from_members(ag, 1, {ell});
  auto through = spread_type_II(ag, ag.pg->infinite_part(ell));
  auto other = spread_type_II(ag, ag.pg->point({0, 1, 1, 1}) == ag.pg->infinite_part(ell) ? ag.pg->point({0, 1, 0, 0})
                                                                                       : ag.pg->point({0, 1, 1, 1}));
  auto r = check_spread_intersections(one, {through, other});
  CHECK(r.counts == std::vector<std::size_t>{1, 0});
  CHECK(r.status == CheckStatus::Fail);

  // planes of AG(4,2): n < 2k+1, constant counts are not decisive
  auto ag4 = AmbientSpace::affine(2, 4);
  auto pp = point_pencil(ag4, ag4.pg->point({1, 0, 0, 0, 0}), 2);
  CHECK(check_spread_intersections(pp, all_type_II(ag4, 2)).status == CheckStatus::NotApplicable);
}

TEST_CASE("CL sets meet every type II and type III spread in x elements") {
  for (std::uint32_t q : {2u, 3u}) {
    auto ag = AmbientSpace::affine(q, 3);
    const auto spreads = type_ii_and_iii(ag);
    std::vector<KSet> cl;
    cl.push_back(KSet(ag, 1));
    for (const auto& p : ag.pg->points().items)
      if (p.is_affine()) cl.push_back(point_pencil(ag, p, 1));
    cl.push_back(complement(cl[1]));
    for (const auto& l : cl) {
      REQUIRE(is_cameron_liebler(l).cameron_liebler);
      CHECK(check_spread_intersections(l, spreads).status == CheckStatus::Pass);
    }
  }
}

TEST_CASE("switching invariance") {
  auto ag = AmbientSpace::affine(2, 3);
  auto pencil = point_pencil(ag, ag.pg->point({1, 0, 0, 1}), 1);
  auto spreads = enumerate_spreads(ag, 1);
  CHECK(check_switching_invariance(pencil, spreads[0].elements, spreads[0].elements));
  for (std::size_t i = 1; i < spreads.size(); i += 7) {
    std::vector<Subspace> r, rp;
    for (const auto& e : spreads[0].elements)
      if (std::find(spreads[i].elements.begin(), spreads[i].elements.end(), e) == spreads[i].elements.end()) r.push_back(e);
    for (const auto& e : spreads[i].elements)
      if (std::find(spreads[0].elements.begin(), spreads[0].elements.end(), e) == spreads[0].elements.end()) rp.push_back(e);
    REQUIRE(verify_switching_pair(ag, 1, r, rp));
    CHECK(check_switching_invariance(pencil, r, rp));
  }
  // a line in R but not in R'
  const auto& s0 = spreads[0].elements;
  std::size_t j = 1;
  while (std::find(spreads[j].elements.begin(), spreads[j].elements.end(), s0[0]) != spreads[j].elements.end()) ++j;
  auto single = KSet::from_members(ag, 1, {s0[0]});
  std::vector<Subspace> r, rp;
  for (const auto& e : s0)
    if (std::find(spreads[j].elements.begin(), spreads[j].elements.end(), e) == spreads[j].elements.end()) r.push_back(e);
  for (const auto& e : spreads[j].elements)
    if (std::find(s0.begin(), s0.end(), e) == s0.end()) rp.push_back(e);
  CHECK_FALSE(check_switching_invariance(single, r, rp));
}

TEST_CASE("affine disjointness counts") {
  auto ag = AmbientSpace::affine(2, 3);
  const auto vertex = ag.pg->point({1, 0, 0, 0});
  auto pencil = point_pencil(ag, vertex, 1);
  const auto in = pencil.members()[0];
  CHECK(affine_disjoint_count(pencil, in) == 0);
  CHECK(expected_affine_disjoint(pencil, in) == 0);
  // a line through another point, missing the vertex
  const auto out = ag.pg->make({1, 1, 0, 0, 0, 0, 1, 0});
  REQUIRE_FALSE(pencil.contains(out));
  CHECK(affine_disjoint_count(pencil, out) == 5);
  CHECK(expected_affine_disjoint(pencil, out) == 5);
  CHECK(check_line_counts(pencil).status == CheckStatus::Pass);
  KSet empty(ag, 1);
  for (const auto& l : ag.k_spaces(1)) CHECK(affine_disjoint_count(empty, l) == 0);
  CHECK(check_line_counts(empty).status == CheckStatus::Pass);
  CHECK(check_line_counts(KSet::from_indices(ag, 1, {3})).status == CheckStatus::Fail);

  auto ag33 = AmbientSpace::affine(3, 3);
  auto p33 = point_pencil(ag33, ag33.pg->point({1, 2, 0, 1}), 1);
  CHECK(check_line_counts(p33).status == CheckStatus::Pass);
  CHECK(check_line_counts(complement(p33)).status == CheckStatus::Pass);
  CHECK(code_of([&] { affine_disjoint_count(KSet(ag, 2), out); }) == ErrorCode::NotLines);
}

TEST_CASE("projective disjointness counts") {
  auto pg = AmbientSpace::projective(2, 3);
  const auto vertex = pg.pg->point({0, 1, 0, 0});
  auto pencil = point_pencil(pg, vertex, 1);
  CHECK(pencil.size() == 7);
  CHECK(is_cameron_liebler(pencil).cameron_liebler);
  const auto k_in = pencil.members()[2];
  CHECK(pg_disjoint_count(pencil, k_in) == 0);
  CHECK(expected_pg_disjoint(pencil, k_in) == 0);
  // K not through the vertex: 7 pencil lines minus the 3 meeting K
  const auto k_out = pg.pg->make({1, 0, 0, 0, 0, 0, 1, 0});
  CHECK(pg_disjoint_count(pencil, k_out) == 4);
  CHECK(expected_pg_disjoint(pencil, k_out) == 4);
  CHECK(check_pg_disjoint_counts(pencil).status == CheckStatus::Pass);
  KSet empty(pg, 1);
  CHECK(check_pg_disjoint_counts(empty).status == CheckStatus::Pass);

  auto pg33 = AmbientSpace::projective(3, 3);
  CHECK(check_pg_disjoint_counts(point_pencil(pg33, pg33.pg->point({1, 0, 2, 0}), 1)).status == CheckStatus::Pass);
  CHECK(check_pg_disjoint_counts(pg_hyperplane_set(pg33, pg33.pg->hyperplane_at_infinity(), 1)).status ==
        CheckStatus::Pass);
  std::mt19937 rng(9);
  CHECK(check_pg_disjoint_counts(random_kset(pg, 1, rng, 0.4)).status == CheckStatus::Fail);
  CHECK(check_pg_disjoint_counts(KSet(AmbientSpace::projective(2, 4), 2)).status == CheckStatus::NotApplicable);
}

TEST_CASE("transfers between AG and PG") {
  auto ag = AmbientSpace::affine(2, 3);
  auto pencil = point_pencil(ag, ag.pg->point({1, 1, 0, 1}), 1);
  auto e = embed_to_pg(pencil);
  CHECK_FALSE(e.space().is_affine());
  CHECK(e.x() == 1);
  CHECK(is_cameron_liebler(e).cameron_liebler);

  auto ext = extend_with_infinity(pencil);
  CHECK(ext.size() == 7 + 7);
  CHECK(ext.x() == 2);
  CHECK(ext.x() == pencil.x() + infinity_parameter(3, 1, 2));
  CHECK(is_cameron_liebler(ext).cameron_liebler);

  auto back = restrict_from_pg(e);
  CHECK(back.parameter_preserved);
  CHECK(back.set == pencil);
  auto flagged = restrict_from_pg(point_pencil(AmbientSpace::projective(2, 3), ag.pg->point({0, 1, 0, 0}), 1));
  CHECK_FALSE(flagged.parameter_preserved);
  CHECK(flagged.dropped == 3);

  // padding with zeros preserves the definitional test
  std::mt19937 rng(21);
  for (int t = 0; t < 200; ++t) {
    auto l = random_kset(ag, 1, rng, 0.25);
    auto a = incidence_for(ag, 1)->row_space_membership(l.chi()).member;
    auto p = incidence_for(e.space(), 1)->row_space_membership(embed_to_pg(l).chi()).member;
    CHECK(a == p);
  }
}

TEST_CASE("counts through infinite subspaces") {
  auto ag4 = AmbientSpace::affine(2, 4);
  auto pencil = point_pencil(ag4, ag4.pg->point({1, 0, 1, 0, 0}), 2);
  REQUIRE(is_cameron_liebler(pencil).cameron_liebler);
  for (std::size_t p = ag4.pg->points().affine_count; p < ag4.pg->points().items.size(); ++p) {
    const auto& i_pt = ag4.pg->points().items[p];
    CHECK(count_through_infinite_subspace(pencil, i_pt) == 7);
    CHECK(expected_through_infinite_subspace(pencil, i_pt) == 7);
  }
  CHECK(count_through_infinite_subspace(KSet(ag4, 2), ag4.pg->point({0, 1, 0, 0, 0})) == 0);
  // i = k-1: type II spread count
  auto ag = AmbientSpace::affine(3, 3);
  auto lp = point_pencil(ag, ag.pg->point({1, 0, 0, 0}), 1);
  const auto inf = ag.pg->point({0, 1, 2, 2});
  CHECK(count_through_infinite_subspace(lp, inf) == 1);
  CHECK(expected_through_infinite_subspace(lp, inf) == 1);
}

TEST_CASE("projection through an infinite point") {
  auto ag4 = AmbientSpace::affine(2, 4);
  auto pencil = point_pencil(ag4, ag4.pg->point({1, 1, 0, 0, 0}), 2);
  const auto i_pt = ag4.pg->point({0, 0, 0, 1, 0});
  const auto pi = default_complement(*ag4.pg, i_pt);
  CHECK(pi.dim() == 3);
  CHECK(pi.is_affine());
  auto img = project_through_infinite_subspace(pencil, i_pt, pi);
  CHECK(img.k() == 1);
  CHECK(img.space().describe() == "AG(3,2)");
  CHECK(img.x() == 1);
  CHECK(is_cameron_liebler(img).cameron_liebler);

  auto none = project_through_infinite_subspace(KSet(ag4, 2), i_pt, pi);
  CHECK(none.size() == 0);

  CHECK(code_of([&] { project_through_infinite_subspace(pencil, i_pt, ag4.pg->hyperplane_at_infinity()); }) ==
        ErrorCode::DimensionViolation);
  const auto bad_pi = ag4.pg->make({1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0});
  CHECK(code_of([&] { project_through_infinite_subspace(pencil, i_pt, bad_pi); }) == ErrorCode::NotSkew);
  auto lines = point_pencil(ag4, ag4.pg->point({1, 0, 0, 0, 0}), 1);
  CHECK(code_of([&] { project_through_infinite_subspace(lines, i_pt, pi); }) == ErrorCode::DimensionViolation);
}

TEST_CASE("restricting CL line sets to a hyperplane keeps spread counts constant") {
  // S u E spreads of AG(4,2): |L n S| = x - |L n E| for every spread S of tau.
  auto ag4 = AmbientSpace::affine(2, 4);
  const auto tau = ag4.pg->make({1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0});
  const auto i_pt = ag4.pg->point({0, 1, 0, 0, 0});
  auto local = enumerate_spreads(AmbientSpace::affine(2, 3), 1);
  for (const auto& vertex : {ag4.pg->point({1, 0, 0, 0, 0}), ag4.pg->point({1, 0, 0, 0, 1})}) {
    auto l = point_pencil(ag4, vertex, 1);
    for (const auto& cl : {l, complement(l)}) {
      std::set<std::size_t> seen;
      for (const auto& s : local) {
        std::vector<Subspace> inner;
        for (const auto& e : s.elements) inner.push_back(ag4.pg->lift(e, tau));
        auto big = extend_from_subspace(ag4, tau, inner, i_pt);
        CHECK(Rational(static_cast<unsigned long>(intersection_count(cl, big.elements))) == cl.x());
        seen.insert(intersection_count(cl, inner));
      }
      CHECK(seen.size() == 1);
    }
  }
}

TEST_CASE("modular condition") {
  CHECK(modular_condition(0, 2));
  CHECK(modular_condition(1, 5));
  CHECK_FALSE(modular_condition(2, 2));
  CHECK(modular_condition(8, 3));
  auto ag = AmbientSpace::affine(2, 3);
  CHECK(modular_check(point_pencil(ag, ag.pg->point({1, 0, 0, 0}), 1)));
  CHECK(code_of([&] { modular_check(KSet(ag, 2)); }) == ErrorCode::WrongCodimension);
}

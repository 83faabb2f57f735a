#include "doctest.h"

#include <random>
#include <set>
#include <vector>

#include "clag/error.hpp"
#include "clag/scheme.hpp"
#include "clag/spreads.hpp"

using namespace clag;

namespace {

RatMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<Rational> rats(const std::vector<BigInt>& v) { return {v.begin(), v.end()}; }

std::size_t rank_of(const std::vector<std::vector<std::uint8_t>>& vecs) {
  if (vecs.empty()) return 0;
  IntMatrix m(vecs.size(), vecs[0].size());
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < vecs[i].size(); ++j) m(i, j) = vecs[i][j];
  return bareiss_rank(m);
}

}  // namespace

TEST_CASE("pair classification") {
  auto ag = AmbientSpace::affine(2, 3);
  const auto& pg = *ag.pg;
  const auto a = pg.make({1, 0, 0, 0, 1, 1, 0, 0});
  const auto b = pg.make({1, 0, 1, 0, 1, 0, 1, 1});
  CHECK(classify_line_pair(pg, a, b) == 3);
  CHECK(classify_line_pair(pg, a, a) == 0);
  CHECK(classify_line_pair(pg, a, pg.make({1, 0, 0, 0, 1, 0, 1, 0})) == 1);
  CHECK(classify_line_pair(pg, a, pg.make({1, 0, 0, 1, 1, 1, 0, 1})) == 2);

  const auto h = pg.make({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0});
  CHECK(classify_hyperplane_pair(pg, h, pg.make({1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0})) == 1);
  CHECK(classify_hyperplane_pair(pg, h, pg.make({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1})) == 2);
  CHECK_THROWS_AS(classify_line_pair(pg, a, pg.make({0, 1, 0, 0, 0, 0, 1, 0})), Error);
}

TEST_CASE("line scheme intersection numbers by counting") {
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, int>>{{2, 3}, {3, 3}, {2, 4}}) {
    CAPTURE(q);
    CAPTURE(n);
    RelationTable rel(SchemeKind::Lines, AmbientSpace::affine(q, n));
    CHECK(BigInt(static_cast<unsigned long>(rel.size())) == scheme_set_size(SchemeKind::Lines, n, q));
    const auto closed = line_scheme_closed(n, q);
    const auto brute = brute_force_scheme(rel, true, &closed.P);
    CHECK(brute.axioms.ok());
    CHECK(brute.axioms.pairs_checked == rel.size() * rel.size());
    for (std::size_t i = 0; i < 4; ++i) CHECK(brute.intersection[i] == closed.intersection[i]);
    CHECK(brute.P == closed.P);
    CHECK(brute.Q == closed.Q);
  }
}

TEST_CASE("line scheme eigenmatrices at (3,2)") {
  const auto s = line_scheme_closed(3, 2);
  CHECK(s.set_size == 28);
  CHECK(s.P == int_matrix({{1, 12, 3, 12}, {1, 4, -1, -4}, {1, -2, -1, 2}, {1, -2, 3, -2}}));
  CHECK(s.Q(0, 0) == 1);
  CHECK(s.Q(0, 1) == 7);
  CHECK(s.Q(0, 2) == 14);
  CHECK(s.Q(0, 3) == 6);

  RelationTable rel(SchemeKind::Lines, AmbientSpace::affine(2, 3));
  Idempotents e(rel, s.Q);
  const auto check = e.verify(s.P);
  CHECK(check.ok());
  for (std::size_t j = 0; j < 4; ++j) CHECK(e.trace(j) == s.Q(0, j));
}

TEST_CASE("B_2 E_3 = P_32 E_3") {
  const auto s = line_scheme_closed(3, 2);
  RelationTable rel(SchemeKind::Lines, AmbientSpace::affine(2, 3));
  Idempotents e(rel, s.Q);
  const std::size_t n = rel.size();
  bool ok = true;
  for (std::size_t a = 0; a < n && ok; ++a)
    for (std::size_t b = 0; b < n && ok; ++b) {
      Rational lhs = 0;
      for (std::size_t t = 0; t < n; ++t)
        if (rel(a, t) == 2) lhs += e.entry(3, t, b);
      ok = lhs == s.P(3, 2) * e.entry(3, a, b);
    }
  CHECK(ok);
}

TEST_CASE("PQ = |X| I across parameters") {
  for (int n = 3; n <= 6; ++n)
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u}) {
      CAPTURE(n);
      CAPTURE(q);
      const auto s = line_scheme_closed(n, q);
      CHECK(is_scaled_identity(s.P * s.Q, Rational(s.set_size)));
      CHECK(valency_row_sum_ok(s.P, s.set_size));
      Rational qsum = 0;
      for (std::size_t j = 0; j < 4; ++j) qsum += s.Q(0, j);
      CHECK(qsum == Rational(s.set_size));
      // p^k_ij closed forms are consistent with the valencies
      for (std::size_t i = 1; i < 4; ++i) CHECK(s.intersection[i](0, i) == s.P(0, i));
    }
  CHECK_THROWS_AS(line_P_closed(2, 3), Error);
}

TEST_CASE("inner distributions") {
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, int>>{{2, 3}, {3, 3}, {2, 4}}) {
    CAPTURE(q);
    CAPTURE(n);
    auto ag = AmbientSpace::affine(q, n);
    const auto s = line_scheme_closed(n, q);
    const BigInt qn1 = ipow(q, n - 1), qn2 = ipow(q, n - 2);

    std::vector<Elem> origin(n + 1, 0);
    origin[0] = 1;
    const auto pencil = point_pencil(ag, ag.pg->point(origin), 1);
    const auto u = inner_distribution(SchemeKind::Lines, pencil);
    CHECK(u == rats({1, (ipow(q, n) - q) / (q - 1), 0, 0}));
    CHECK(eigenspace_profile(times_Q(u, s.Q)) == std::vector<int>{0, 1});

    std::vector<Elem> dir(n + 1, 0);
    dir[1] = 1;
    const auto spread = spread_type_II(ag, ag.pg->point(dir));
    const auto v = inner_distribution(SchemeKind::Lines, KSet::from_members(ag, 1, spread.elements));
    CHECK(v == rats({1, 0, qn1 - 1, 0}));
    CHECK(eigenspace_profile(times_Q(v, s.Q)) == std::vector<int>{0, 3});

    for (const auto& sp : all_type_III_lines(ag)) {
      if (!is_plus(sp)) continue;
      const auto w = inner_distribution(SchemeKind::Lines, KSet::from_members(ag, 1, sp.elements));
      CHECK(w == rats({1, 0, qn2 - 1, qn1 - qn2}));
      CHECK(eigenspace_profile(times_Q(w, s.Q)) == std::vector<int>{0, 2, 3});
      break;
    }
  }
  CHECK_THROWS_AS(inner_distribution(SchemeKind::Lines, KSet(AmbientSpace::affine(2, 3), 1)), Error);
}

TEST_CASE("E_1 annihilates spreads, pencils span V_0 + V_1") {
  auto ag = AmbientSpace::affine(2, 3);
  const auto s = line_scheme_closed(3, 2);
  RelationTable rel(SchemeKind::Lines, ag);
  Idempotents e(rel, s.Q);
  std::vector<std::vector<std::uint8_t>> pencils;
  const auto& pts = ag.pg->points();
  for (std::size_t p = 0; p < pts.affine_count; ++p) {
    const auto l = point_pencil(ag, pts.items[p], 1);
    CHECK_FALSE(e.annihilates(1, l.chi()));
    CHECK(e.annihilates(2, l.chi()));
    CHECK(e.annihilates(3, l.chi()));
    pencils.push_back(l.chi());
  }
  CHECK(rank_of(pencils) == 8);

  std::vector<std::vector<std::uint8_t>> plus;
  for (const auto& sp : all_type_III_lines(ag)) {
    const auto chi = KSet::from_members(ag, 1, sp.elements).chi();
    CHECK(e.annihilates(1, chi));
    if (is_plus(sp)) plus.push_back(chi);
  }
  for (const auto& sp : all_type_II(ag, 1)) CHECK(e.annihilates(1, KSet::from_members(ag, 1, sp.elements).chi()));
  CHECK(rank_of(plus) == 21);  // 1 + Q_02 + Q_03
}

TEST_CASE("spread spans") {
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, int>>{{2, 3}, {3, 3}}) {
    CAPTURE(q);
    auto ag = AmbientSpace::affine(q, n);
    const auto s = line_scheme_closed(n, q);
    RelationTable rel(SchemeKind::Lines, ag);
    Idempotents e(rel, s.Q);

    std::vector<std::vector<std::uint8_t>> type_ii;
    for (const auto& sp : all_type_II(ag, 1)) {
      const auto chi = KSet::from_members(ag, 1, sp.elements).chi();
      CHECK(e.annihilates(1, chi));
      CHECK(e.annihilates(2, chi));
      type_ii.push_back(chi);
    }
    CHECK(BigInt(static_cast<unsigned long>(type_ii.size())) == (ipow(q, n) - 1) / (q - 1));
    CHECK(rank_of(type_ii) == type_ii.size());

    std::vector<std::vector<std::uint8_t>> plus;
    for (const auto& sp : all_type_III_lines(ag))
      if (is_plus(sp)) plus.push_back(KSet::from_members(ag, 1, sp.elements).chi());
    const Rational target = 1 + s.Q(0, 2) + s.Q(0, 3);
    CHECK(Rational(static_cast<unsigned long>(rank_of(plus))) == target);
  }
}

TEST_CASE("spread characterisation agrees with the eigenspace and row-space tests") {
  auto ag = AmbientSpace::affine(2, 3);
  const auto s = line_scheme_closed(3, 2);
  RelationTable rel(SchemeKind::Lines, ag);
  Idempotents e(rel, s.Q);
  const auto spreads = enumerate_spreads(ag, 1);
  REQUIRE(spreads.size() == 105);
  std::vector<std::vector<std::size_t>> idx;
  for (const auto& sp : spreads) idx.push_back(sp.indices());

  std::mt19937 rng(7);
  std::bernoulli_distribution coin(0.5);
  const auto& pts = ag.pg->points();
  int positives = 0;
  for (int t = 0; t < 300; ++t) {
    std::vector<std::uint8_t> chi(rel.size(), 0);
    if (t % 3 == 0) {
      for (std::size_t i = 0; i < chi.size(); ++i) chi[i] = coin(rng);
    } else {
      // pencils, unions of two pencils, complements, one-line perturbations
      std::vector<std::size_t> chosen;
      for (std::size_t p = 0; p < pts.affine_count; ++p)
        if (coin(rng) && chosen.size() < 2) chosen.push_back(p);
      for (auto p : chosen) {
        const auto l = point_pencil(ag, pts.items[p], 1);
        for (std::size_t i = 0; i < chi.size(); ++i) chi[i] = chi[i] || l.chi()[i];
      }
      if (t % 3 == 2) chi[std::uniform_int_distribution<std::size_t>(0, chi.size() - 1)(rng)] ^= 1;
      if (coin(rng))
        for (auto& c : chi) c ^= 1;
    }
    std::set<std::size_t> counts;
    for (const auto& sp : idx) {
      std::size_t c = 0;
      for (auto i : sp) c += chi[i];
      counts.insert(c);
    }
    const bool constant = counts.size() == 1;
    const bool eigen = e.annihilates(2, chi) && e.annihilates(3, chi);
    const bool cl = is_cameron_liebler(KSet(ag, 1, chi)).cameron_liebler;
    CHECK(constant == eigen);
    CHECK(eigen == cl);
    positives += cl;
  }
  CHECK(positives > 0);
}

TEST_CASE("hyperplane scheme adjudication") {
  const auto a = adjudicate_hyperplane_scheme(3, 2);
  CHECK(a.set_size == 14);
  CHECK(a.axioms.ok());
  CHECK_FALSE(a.printed_row_sum_ok);
  CHECK_FALSE(a.printed_PQ_ok);
  CHECK(a.adopted_row_sum_ok);
  CHECK(a.adopted_PQ_ok);
  CHECK(a.printed_Q_matches);
  CHECK(a.adjudicated_formula_matches);
  REQUIRE(a.diffs.size() == 2);
  CHECK(a.diffs[0].row == 0);
  CHECK(a.diffs[0].col == 2);
  CHECK(a.diffs[1].row == 1);
  CHECK(a.diffs[1].col == 2);
  CHECK(a.brute_P == int_matrix({{1, 1, 12}, {1, 1, -2}, {1, -1, 0}}));

  for (auto [q, n] : std::vector<std::pair<std::uint32_t, int>>{{3, 3}, {2, 4}, {4, 3}, {5, 2}}) {
    CAPTURE(q);
    CAPTURE(n);
    const auto b = adjudicate_hyperplane_scheme(n, q);
    CHECK(b.axioms.ok());
    CHECK(b.adjudicated_formula_matches);
    CHECK(b.printed_Q_matches);
    CHECK(b.adopted_PQ_ok);
  }

  // parallel class and point star
  auto ag = AmbientSpace::affine(3, 3);
  const auto p = hyperplane_P_adjudicated(3, 3);
  const auto q = dual_from_eigenmatrix(p, scheme_set_size(SchemeKind::Hyperplanes, 3, 3));
  std::vector<std::size_t> parallel, star;
  const auto& hs = ag.k_spaces(2);
  const auto x0 = ag.pg->make({0, 1, 0, 0, 0, 0, 1, 0});
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (ag.pg->infinite_part(hs[i]) == x0) parallel.push_back(i);
    if (ag.pg->contains_point(hs[i], std::vector<Elem>{1, 0, 0, 0})) star.push_back(i);
  }
  const auto v = inner_distribution(SchemeKind::Hyperplanes, KSet::from_indices(ag, 2, parallel));
  CHECK(v == std::vector<Rational>{1, 2, 0});
  const auto w = inner_distribution(SchemeKind::Hyperplanes, KSet::from_indices(ag, 2, star));
  CHECK(w == std::vector<Rational>{1, 0, 12});
  CHECK(eigenspace_profile(times_Q(v, q)) == std::vector<int>{0, 1});
  CHECK(eigenspace_profile(times_Q(w, q)) == std::vector<int>{0, 2});
}

#include "doctest.h"

#include <functional>

#include "clag/error.hpp"
#include "clag/io.hpp"

using namespace clag;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("subspace round trip") {
  const auto pg = projective_space(4, 3);
  const auto s = pg->make({1, 2, 3, 0, 0, 1, 1, 1});
  const auto j = io::to_json(s);
  CHECK(io::subspace_from_json(*pg, j) == s);
  CHECK(code_of([&] { io::subspace_from_json(*pg, io::Json::parse("[[2,0,0,0]]")); }) == ErrorCode::NotCanonical);
  CHECK(code_of([&] { io::subspace_from_json(*pg, io::Json::parse("[[1,0,0,4]]")); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { io::subspace_from_json(*pg, io::Json::parse("[[1,0,0]]")); }) == ErrorCode::InvalidInput);
}

TEST_CASE("points as text") {
  CHECK(io::point_key(std::vector<Elem>{0, 0, 0, 1}) == "0:0:0:1");
  CHECK(io::parse_point("0:0:0:1", 3, 2) == std::vector<Elem>{0, 0, 0, 1});
  CHECK_THROWS_AS(io::parse_point("0:0:1", 3, 2), Error);
  CHECK_THROWS_AS(io::parse_point("0:0:0:2", 3, 2), Error);
  CHECK_THROWS_AS(io::parse_point("0:0:0:0", 3, 2), Error);
  CHECK_THROWS_AS(io::parse_point("0:a:0:1", 3, 2), Error);
}

TEST_CASE("k-set and certificate round trip") {
  const auto ag = AmbientSpace::affine(3, 3);
  const auto l = point_pencil(ag, ag.pg->point({1, 1, 2, 0}), 1);
  const auto j = io::to_json(l);
  CHECK(j["size"] == 13);
  CHECK(io::kset_from_json(j) == l);
  CHECK(io::kset_from_json(io::Json::parse(j.dump())) == l);

  const auto v = is_cameron_liebler(l);
  const auto vj = io::to_json(v, ag);
  CHECK(vj["x"] == "1");
  const auto w = io::certificate_from_json(ag, vj["certificate"]);
  CHECK(w == v.certificate);

  auto broken = j;
  broken["members"][3][1][2] = 7;
  try {
    io::kset_from_json(broken);
    FAIL("accepted a bad entry");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("$.members[3][1][2]") != std::string::npos);
  }
  broken = j;
  broken["members"].push_back(j["members"][0]);
  CHECK_THROWS_AS(io::kset_from_json(broken), Error);
  broken = j;
  broken["members"][0] = io::Json::parse("[[0,1,0,0],[0,0,1,0]]");
  CHECK_THROWS_AS(io::kset_from_json(broken), Error);
  broken = j;
  broken.erase("mode");
  CHECK_THROWS_AS(io::kset_from_json(broken), Error);
}

TEST_CASE("spread round trip") {
  const auto ag = AmbientSpace::affine(2, 3);
  const auto axis = ag.pg->make({0, 1, 0, 0, 0, 0, 1, 0});
  const auto s = spread_type_III(ag, axis, {ag.pg->point({0, 1, 0, 0}), ag.pg->point({0, 0, 1, 0})});
  const auto back = io::spread_from_json(io::to_json(s));
  CHECK(back.elements == s.elements);
  CHECK(back.type == s.type);
  CHECK(back.construction.hyperplanes == s.construction.hyperplanes);
  CHECK(back.construction.choices == s.construction.choices);
  CHECK(back.construction.base == s.construction.base);
}

TEST_CASE("search certificate round trip") {
  const auto c = search_cl_line_classes(3, 2, 1);
  const auto j = io::to_json(c);
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(io::to_json(c, true).contains("wall_seconds"));
  const auto back = io::search_certificate_from_json(io::Json::parse(j.dump()));
  CHECK(back.count == 8);
  CHECK(back.stats == c.stats);
  CHECK(verify_search_certificate(back));
  CHECK(io::to_json(back).dump() == j.dump());
}

TEST_CASE("matrices as rational strings") {
  RatMatrix m(1, 2);
  m(0, 0) = Rational(-3, 4);
  m(0, 1) = 5;
  const auto j = io::matrix_json(m);
  CHECK(j.dump() == R"([["-3/4","5"]])");
  CHECK(io::matrix_from_json(j) == m);
}

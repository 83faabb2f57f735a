#include "clag/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "clag/error.hpp"

namespace clag::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidInput, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

template <typename T>
T number(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<T>();
}

Json subspace_list(const std::vector<Subspace>& items) {
  Json a = Json::array();
  for (const auto& s : items) a.push_back(to_json(s));
  return a;
}

std::vector<Subspace> subspaces_from(const ProjectiveSpace& pg, const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of subspaces");
  std::vector<Subspace> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(subspace_from_json(pg, j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Json to_json(const Subspace& s) { return s.row_list(); }

Subspace subspace_from_json(const ProjectiveSpace& pg, const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad(where, "expected a nonempty array of rows");
  const int n = pg.n();
  std::vector<Elem> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string at = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != static_cast<std::size_t>(n + 1))
      bad(at, "expected a row of length " + std::to_string(n + 1));
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      const auto v = number<long long>(j[r][c], at + "[" + std::to_string(c) + "]");
      if (v < 0 || v >= static_cast<long long>(pg.q()))
        bad(at + "[" + std::to_string(c) + "]", "field element outside 0.." + std::to_string(pg.q() - 1));
      rows.push_back(static_cast<Elem>(v));
    }
  }
  try {
    return Subspace::from_canonical(pg.field(), n, rows);
  } catch (const Error& e) {
    throw Error(e.code(), where + ": " + e.what());
  }
}

std::string point_key(std::span<const Elem> coords) {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ':';
    out += std::to_string(coords[i]);
  }
  return out;
}

std::vector<Elem> parse_point(const std::string& text, int n, std::uint32_t q) {
  std::vector<Elem> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(part, &used);
      if (used != part.size() || v < 0 || v >= static_cast<long>(q)) throw std::invalid_argument(part);
      out.push_back(static_cast<Elem>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad coordinate '" + part + "' in point '" + text + "'");
    }
  }
  if (out.size() != static_cast<std::size_t>(n + 1))
    throw Error(ErrorCode::InvalidInput, "point '" + text + "' needs " + std::to_string(n + 1) + " coordinates");
  if (std::all_of(out.begin(), out.end(), [](Elem e) { return e == 0; }))
    throw Error(ErrorCode::InvalidInput, "the zero vector is not a point");
  return out;
}

Json header(const AmbientSpace& space, int k) {
  return {{"n", space.n()}, {"q", space.q()}, {"k", k}, {"mode", mode_name(space.mode)}};
}

AmbientSpace space_from_header(const Json& j, int* k) {
  const int n = number<int>(field(j, "n", "$"), "$.n");
  const auto q = number<std::uint32_t>(field(j, "q", "$"), "$.q");
  const auto& m = field(j, "mode", "$");
  if (!m.is_string()) bad("$.mode", "expected \"affine\" or \"projective\"");
  Mode mode;
  try {
    mode = parse_mode(m.get<std::string>());
  } catch (const Error& e) {
    bad("$.mode", e.what());
  }
  if (n < 1) bad("$.n", "n must be positive");
  if (k) {
    *k = number<int>(field(j, "k", "$"), "$.k");
    if (*k < 0 || *k > n) bad("$.k", "k outside 0..n");
  }
  return {projective_space(q, n), mode};
}

Json to_json(const KSet& l) {
  Json j = header(l.space(), l.k());
  j["size"] = l.size();
  j["members"] = subspace_list(l.members());
  return j;
}

KSet kset_from_json(const Json& j) {
  int k = 0;
  const auto space = space_from_header(j, &k);
  const auto members = subspaces_from(*space.pg, field(j, "members", "$"), "$.members");
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string at = "$.members[" + std::to_string(i) + "]";
    if (members[i].dim() != k) bad(at, "not a " + std::to_string(k) + "-space");
    if (space.is_affine() && !members[i].is_affine()) bad(at, "lies at infinity in an affine space");
  }
  KSet l = KSet::from_members(space, k, members);
  if (l.size() != members.size()) bad("$.members", "repeated member");
  return l;
}

Json to_json(const Spread& s) {
  Json j = header(s.space, s.k);
  j["type"] = spread_type_name(s.type);
  Json c = {{"method", s.construction.method}};
  if (s.construction.base) c["base"] = to_json(*s.construction.base);
  if (!s.construction.hyperplanes.empty()) c["hyperplanes"] = subspace_list(s.construction.hyperplanes);
  if (!s.construction.choices.empty()) c["choices"] = subspace_list(s.construction.choices);
  j["construction"] = c;
  j["elements"] = subspace_list(s.elements);
  return j;
}

Spread spread_from_json(const Json& j) {
  Spread s;
  s.space = space_from_header(j, &s.k);
  const auto& pg = *s.space.pg;
  const auto& t = field(j, "type", "$");
  if (!t.is_string()) bad("$.type", "expected a type name");
  try {
    s.type = parse_spread_type(t.get<std::string>());
  } catch (const Error& e) {
    bad("$.type", e.what());
  }
  s.elements = subspaces_from(pg, field(j, "elements", "$"), "$.elements");
  if (auto it = j.find("construction"); it != j.end()) {
    const auto& c = *it;
    if (auto m = c.find("method"); m != c.end() && m->is_string()) s.construction.method = m->get<std::string>();
    if (auto b = c.find("base"); b != c.end()) s.construction.base = subspace_from_json(pg, *b, "$.construction.base");
    if (auto h = c.find("hyperplanes"); h != c.end())
      s.construction.hyperplanes = subspaces_from(pg, *h, "$.construction.hyperplanes");
    if (auto ch = c.find("choices"); ch != c.end())
      s.construction.choices = subspaces_from(pg, *ch, "$.construction.choices");
  }
  return s;
}

Json certificate_json(const AmbientSpace& space, const std::vector<Rational>& weights) {
  Json j = Json::object();
  const auto& pts = space.pg->points();
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] != 0) j[point_key(pts.items[i].row(0))] = to_string(weights[i]);
  return j;
}

std::vector<Rational> certificate_from_json(const AmbientSpace& space, const Json& j) {
  if (!j.is_object()) bad("$.certificate", "expected an object keyed by point coordinates");
  std::vector<Rational> w(space.point_count(), 0);
  const auto& pg = *space.pg;
  for (const auto& [key, value] : j.items()) {
    const std::string at = "$.certificate[\"" + key + "\"]";
    const auto coords = parse_point(key, pg.n(), pg.q());
    const auto idx = pg.points().find(pg.point(coords));
    if (!idx || *idx >= w.size()) bad(at, "point outside the space");
    if (!value.is_string()) bad(at, "expected a rational string");
    try {
      w[*idx] = parse_rational(value.get<std::string>());
    } catch (const Error& e) {
      bad(at, e.what());
    }
  }
  return w;
}

Json to_json(const CLVerdict& v, const AmbientSpace& space) {
  Json j = {{"cameron_liebler", v.cameron_liebler}, {"integral", v.integral}, {"x", to_string(v.x)}};
  if (v.cameron_liebler) j["certificate"] = certificate_json(space, v.certificate);
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

Json matrix_json(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(i, c)));
    a.push_back(row);
  }
  return a;
}

RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("$", "expected a matrix of rational strings");
  RatMatrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != m.cols()) bad("$[" + std::to_string(i) + "]", "ragged matrix");
    for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = parse_rational(j[i][c].get<std::string>());
  }
  return m;
}

Json diff_json(const std::vector<EntryDiff>& diffs) {
  Json a = Json::array();
  for (const auto& d : diffs)
    a.push_back({{"row", d.row}, {"col", d.col}, {"printed", to_string(d.printed)}, {"computed", to_string(d.computed)}});
  return a;
}

Json to_json(const SearchCertificate& c, bool timing) {
  Json j = {{"problem", {{"n", c.n}, {"q", c.q}, {"k", c.k}, {"x", c.x}, {"mode", "affine"}}},
            {"seed", c.seed},
            {"count", c.count},
            {"count_only", c.count_only},
            {"complemented", c.complemented}};
  if (!c.count_only) {
    Json sols = Json::array();
    for (const auto& s : c.solutions) sols.push_back(subspace_list(s.members()));
    j["solutions"] = sols;
  }
  j["log"] = {{"rank", c.rank},
              {"nodes", c.stats.nodes},
              {"group_prunes", c.stats.group_prunes},
              {"forced_prunes", c.stats.forced_prunes},
              {"tasks", c.stats.tasks},
              {"rules", c.rules},
              {"verified", c.verified},
              {"verification_ok", c.verification_ok}};
  if (timing) j["wall_seconds"] = c.wall_seconds;
  return j;
}

SearchCertificate search_certificate_from_json(const Json& j) {
  SearchCertificate c;
  const auto& p = field(j, "problem", "$");
  c.n = number<int>(field(p, "n", "$.problem"), "$.problem.n");
  c.q = number<std::uint32_t>(field(p, "q", "$.problem"), "$.problem.q");
  c.k = number<int>(field(p, "k", "$.problem"), "$.problem.k");
  c.x = number<std::uint64_t>(field(p, "x", "$.problem"), "$.problem.x");
  c.seed = number<std::uint64_t>(field(j, "seed", "$"), "$.seed");
  c.count = number<std::uint64_t>(field(j, "count", "$"), "$.count");
  c.count_only = field(j, "count_only", "$").get<bool>();
  c.complemented = field(j, "complemented", "$").get<bool>();
  const auto space = AmbientSpace::affine(c.q, c.n);
  if (!c.count_only) {
    const auto& sols = field(j, "solutions", "$");
    if (!sols.is_array()) bad("$.solutions", "expected an array");
    for (std::size_t i = 0; i < sols.size(); ++i) {
      const std::string at = "$.solutions[" + std::to_string(i) + "]";
      c.solutions.push_back(KSet::from_members(space, c.k, subspaces_from(*space.pg, sols[i], at)));
    }
  }
  if (auto it = j.find("log"); it != j.end()) {
    const auto& log = *it;
    c.rank = log.value("rank", 0);
    c.stats.nodes = log.value("nodes", 0ull);
    c.stats.group_prunes = log.value("group_prunes", 0ull);
    c.stats.forced_prunes = log.value("forced_prunes", 0ull);
    c.stats.tasks = log.value("tasks", 0ull);
    c.rules = log.value("rules", std::vector<std::string>{});
    c.verified = log.value("verified", std::size_t{0});
    c.verification_ok = log.value("verification_ok", true);
  }
  return c;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace clag::io

#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "clag/classify.hpp"
#include "clag/clsets.hpp"
#include "clag/error.hpp"
#include "clag/io.hpp"
#include "clag/scheme.hpp"
#include "clag/spreads.hpp"
#include "commands.hpp"

namespace py = pybind11;
using namespace clag;

namespace {

using Rows = std::vector<std::vector<Elem>>;

Subspace make_subspace(const AmbientSpace& s, const Rows& rows) {
  std::vector<Elem> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return s.pg->make(std::move(flat));
}

std::vector<Rows> rows_of(const std::vector<Subspace>& items) {
  std::vector<Rows> out;
  for (const auto& s : items) out.push_back(s.row_list());
  return out;
}

std::string dump(const io::Json& j) { return j.dump(); }

SchemeKind kind_of(bool hyperplanes) { return hyperplanes ? SchemeKind::Hyperplanes : SchemeKind::Lines; }

std::string scheme_json(int n, std::uint32_t q, bool hyperplanes, bool brute) {
  std::vector<std::string> args = {"scheme", "--n", std::to_string(n), "--q", std::to_string(q), "--allow-diff"};
  if (hyperplanes) args.push_back("--hyperplanes");
  if (brute) args.push_back("--brute-force");
  std::ostringstream out, err;
  if (cli::run(args, out, err) != cli::Pass) throw Error(ErrorCode::InvalidInput, err.str());
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cameron-Liebler sets in AG(n,q) and PG(n,q): exact core";

  static py::exception<Error> error(m, "ClagError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("gaussian_binomial", [](int a, int b, std::uint64_t q) { return gaussian_binomial(a, b, q).get_str(); },
        py::arg("a"), py::arg("b"), py::arg("q"));

  py::class_<AmbientSpace>(m, "Space")
      .def(py::init([](std::uint32_t q, int n, bool affine) {
             return affine ? AmbientSpace::affine(q, n) : AmbientSpace::projective(q, n);
           }),
           py::arg("q"), py::arg("n"), py::arg("affine") = true)
      .def_property_readonly("n", &AmbientSpace::n)
      .def_property_readonly("q", &AmbientSpace::q)
      .def_property_readonly("affine", &AmbientSpace::is_affine)
      .def("point_count", &AmbientSpace::point_count)
      .def("k_space_count", &AmbientSpace::k_space_count, py::arg("k"))
      .def("k_spaces", [](const AmbientSpace& s, int k) {
        const auto span = enumerate_subspaces(s, k);
        return rows_of({span.begin(), span.end()});
      })
      .def("canonical", [](const AmbientSpace& s, const Rows& rows) { return make_subspace(s, rows).row_list(); },
           "Reduced echelon basis of the span of the rows.")
      .def("__repr__", &AmbientSpace::describe);

  py::class_<KSet>(m, "KSet")
      .def(py::init<AmbientSpace, int, std::vector<std::uint8_t>>(), py::arg("space"), py::arg("k"), py::arg("chi"))
      .def_static("from_members",
                  [](const AmbientSpace& s, int k, const std::vector<Rows>& members) {
                    std::vector<Subspace> subs;
                    for (const auto& r : members) subs.push_back(make_subspace(s, r));
                    return KSet::from_members(s, k, subs);
                  })
      .def_static("from_indices", &KSet::from_indices)
      .def_static("from_json", [](const std::string& text) { return io::kset_from_json(io::Json::parse(text)); })
      .def_property_readonly("space", &KSet::space)
      .def_property_readonly("k", &KSet::k)
      .def_property_readonly("chi", &KSet::chi)
      .def("__len__", &KSet::size)
      .def("indices", &KSet::indices)
      .def("members", [](const KSet& l) { return rows_of(l.members()); })
      .def("x", [](const KSet& l) { return to_string(l.x()); })
      .def("to_json", [](const KSet& l) { return dump(io::to_json(l)); })
      .def(py::self == py::self);

  m.def("is_cameron_liebler", [](const KSet& l) { return dump(io::to_json(is_cameron_liebler(l), l.space())); });
  m.def("point_pencil", [](const AmbientSpace& s, const std::vector<Elem>& p, int k) {
    return point_pencil(s, s.pg->point(p), k);
  });
  m.def("complement", &complement);
  m.def("set_union", &set_union);
  m.def("set_difference", &set_difference);
  m.def("embed_to_pg", &embed_to_pg);
  m.def("project", [](const KSet& l, const Rows& centre) {
    const auto& pg = *l.space().pg;
    const auto c = make_subspace(l.space(), centre);
    return project_through_infinite_subspace(l, c, default_complement(pg, c));
  });

  m.def("spread_type_I", [](std::uint32_t q, int n, int k, bool affine) {
    auto s = spread_type_I(q, n, k);
    return dump(io::to_json(affine ? restrict_to_affine(s) : s));
  }, py::arg("q"), py::arg("n"), py::arg("k"), py::arg("affine") = false);
  m.def("spread_type_II", [](const AmbientSpace& s, const Rows& at_infinity) {
    return dump(io::to_json(spread_type_II(s, make_subspace(s, at_infinity))));
  });
  m.def("spread_type_III", [](const AmbientSpace& s, const Rows& axis, const std::vector<Rows>& choices) {
    std::vector<Subspace> c;
    for (const auto& r : choices) c.push_back(make_subspace(s, r));
    return dump(io::to_json(spread_type_III(s, make_subspace(s, axis), c)));
  });
  m.def("spread_count", [](const AmbientSpace& s, int k) { return enumerate_spreads(s, k).size(); });

  m.def("scheme", &scheme_json, py::arg("n"), py::arg("q"), py::arg("hyperplanes") = false,
        py::arg("brute_force") = false);
  m.def("inner_distribution", [](const KSet& l, bool hyperplanes) {
    std::vector<std::string> out;
    for (const auto& u : inner_distribution(kind_of(hyperplanes), l)) out.push_back(to_string(u));
    return out;
  }, py::arg("kset"), py::arg("hyperplanes") = false);
  m.def("eigenspace_profile", [](const KSet& l, bool hyperplanes) {
    const int n = l.space().n();
    const std::uint32_t q = l.space().q();
    const RatMatrix Q = hyperplanes ? dual_from_eigenmatrix(hyperplane_P_adjudicated(n, q),
                                                             scheme_set_size(SchemeKind::Hyperplanes, n, q))
                                    : line_Q_closed(n, q);
    return eigenspace_profile(times_Q(inner_distribution(kind_of(hyperplanes), l), Q));
  }, py::arg("kset"), py::arg("hyperplanes") = false);

  m.def("search", [](int n, std::uint32_t q, int k, std::uint64_t x, bool count_only, unsigned threads,
                     std::uint64_t seed) {
    SearchOptions o;
    o.count_only = count_only;
    o.threads = threads;
    o.seed = seed;
    SearchCertificate c;
    {
      py::gil_scoped_release release;
      c = search_cl_sets(AmbientSpace::affine(q, n), k, x, o);
    }
    return dump(io::to_json(c));
  }, py::arg("n"), py::arg("q"), py::arg("k"), py::arg("x"), py::arg("count_only") = false, py::arg("threads") = 1,
     py::arg("seed") = 1);

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Run a clag command line; returns (exit code, stdout, stderr).");
}

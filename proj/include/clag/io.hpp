#pragma once

#include <string>

#include <json.hpp>

#include "clag/classify.hpp"
#include "clag/clsets.hpp"
#include "clag/geometry.hpp"
#include "clag/scheme.hpp"
#include "clag/spreads.hpp"

namespace clag::io {

using Json = nlohmann::ordered_json;

/// Rows of field encodings.
Json to_json(const Subspace& s);
/// Input must already be the canonical basis; errors name the JSON path.
Subspace subspace_from_json(const ProjectiveSpace& pg, const Json& j, const std::string& where = "$");

/// "a:b:c:d"
std::string point_key(std::span<const Elem> coords);
std::vector<Elem> parse_point(const std::string& text, int n, std::uint32_t q);

Json header(const AmbientSpace& space, int k);
AmbientSpace space_from_header(const Json& j, int* k = nullptr);

Json to_json(const KSet& l);
KSet kset_from_json(const Json& j);

Json to_json(const Spread& s);
Spread spread_from_json(const Json& j);

/// Point weights keyed by point coordinates, values "p/q".
Json certificate_json(const AmbientSpace& space, const std::vector<Rational>& weights);
std::vector<Rational> certificate_from_json(const AmbientSpace& space, const Json& j);

Json to_json(const CLVerdict& v, const AmbientSpace& space);

Json matrix_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);
Json diff_json(const std::vector<EntryDiff>& diffs);

/// Search certificate; wall-clock only when `timing`.
Json to_json(const SearchCertificate& c, bool timing = false);
SearchCertificate search_certificate_from_json(const Json& j);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace clag::io

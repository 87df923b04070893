#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "heis/coding.hpp"
#include "heis/geometry.hpp"
#include "heis/subgroups.hpp"
#include "heis/symdyn.hpp"

namespace heis {

using Json = nlohmann::ordered_json;

/// "[p1,..,pD,q1,..,qD|u2]" with integer entries and u2 = 2u.
LatticeElement parse_lattice(std::string_view text);
std::string format_lattice(const LatticeElement& g);
/// Same syntax with rational entries; the last field is still 2u.
GroupElement parse_group(std::string_view text);
std::string format_group(const GroupElement& g);

/// "1,0,1/2"
RatVec parse_vector(std::string_view text);
/// "1,0;0,1". Empty, "none" and "0" give the empty basis.
std::vector<RatVec> parse_basis(std::string_view text);

Json lattice_json(const LatticeElement& g);
/// Accepts "[..|..]" strings and [p..,q..,u2] arrays.
LatticeElement lattice_from_json(const Json& j, const std::string& path);
std::vector<LatticeElement> cells_from_json(const Json& j, const std::string& path);
Json cells_json(const std::vector<LatticeElement>& cells);

SubshiftSystem system_from_json(const Json& j);
Json system_json(const SubshiftSystem& s);

Json window_json(const Window& window, const std::optional<Integer>& half_width = std::nullopt);
Window window_from_json(const Json& j, int dim, const std::string& path);
/// "h" or "cube:h" gives the normal-form cube; anything else is a cells file/array.
std::optional<Integer> parse_cube_spec(std::string_view text);

Json values_json(const std::vector<Symbol>& values, std::size_t alphabet);
std::vector<Symbol> values_from_json(const Json& j, const std::string& path);

Json coding_verdict_json(const CodingVerdict& v, const CodingQuery& q, const std::optional<Integer>& half_width);
Json classification_json(const SubgroupClass& c, const std::vector<RatVec>& input);
Json expansiveness_json(const ExpansivenessVerdict& v, const SubshiftSystem& system,
                        const std::vector<RatVec>& basis);
ExpansivenessVerdict expansiveness_from_json(const Json& j);

std::string scan_csv(const ScanReport& report, bool with_time = true);
Json scan_summary_json(const ScanReport& report, const std::vector<int>& ks, int height);

}  // namespace heis

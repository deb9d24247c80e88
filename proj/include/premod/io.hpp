#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "premod/condensation.hpp"
#include "premod/surgery.hpp"

namespace premod {

/// Version written into, and required of, every file.
inline constexpr int kFileFormat = 1;

nlohmann::json category_to_json(const PremodularData& p);

/// Throws ParseError for malformed documents or an unsupported "format";
/// structural problems in the fusion data surface as StructuralError.
/// Missing dims come from Perron-Frobenius, a missing S' from balancing.
PremodularData category_from_json(const nlohmann::json& j);

/// The condensed category (first solution) plus a "provenance" block.
nlohmann::json condensed_to_json(const CondensedData& c, const std::string& source_hash);

nlohmann::json plumbing_to_json(const PlumbingGraph& g);
PlumbingGraph plumbing_from_json(const nlohmann::json& j);

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

std::string read_file(const std::string& path);
nlohmann::json parse_json(const std::string& text);

}  // namespace premod

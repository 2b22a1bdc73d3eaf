#pragma once

#include "mbstab/assembly.hpp"
#include "mbstab/class_v.hpp"
#include "mbstab/flow.hpp"
#include "mbstab/stabilizer.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace mbstab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "mbstab.report/1";
inline constexpr const char* kToolVersion = "0.1.0";

struct Provenance {
  std::string input_sha256;
  std::uint64_t seed = 0;
};

std::string sha256_hex(std::string_view bytes);

/// {"schema", "tool", "provenance", "<kind>": body}.
Json envelope(const std::string& kind, Json body, const Provenance& provenance);
/// Envelope with {"error": {"stage", "message"}}.
Json error_report(const std::string& stage, const std::string& message, const Provenance& provenance);
/// Two-space indent plus a trailing newline; key order is insertion order.
std::string dump_report(const Json& report);

Json to_json(const Rational& q);
Json to_json(const Poly2& p);
Json to_json(const PlanarPolyField& f);
Json to_json(const BinaryForm& form);
Json to_json(Vec2 p);

Poly2 poly_from_json(const Json& j);
PlanarPolyField field_from_json(const Json& j);

Json form_json(const BinaryForm& form);
Json surface_json(const SurfaceClass& surface);
Json inventory_json(const CriticalStructure& structure);
Json reeb_json(const ReebGraph& graph, GraphShape shape);
Json analysis_json(const Report& report);

Json trajectory_json(const Trajectory& t);
Json return_map_json(const ReturnMap& map);
Json period_json(const PeriodResult& period);
Json class_v_json(const ClassVReport& report);

/// Glued field data: surface, pieces (window, sign, form, germ coefficients).
Json glued_json(const GluedField& glued);
/// Rebuilds a glued field from glued_json output; the piece layout must match the surface.
GluedField glued_from_json(const Json& j);
Json verify_json(const VerifyReport& report);

}  // namespace mbstab

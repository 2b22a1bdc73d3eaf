#pragma once

#include "mbstab/surface.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace mbstab {

/// A mesh file after validation: mesh, field and the classified surface.
struct MeshData {
  SurfaceMesh mesh;
  Field field;
  SurfaceClass surface;
};

/// Parses the JSON mesh+field format and validates it. Syntax errors report
/// line and column; schema errors name the offending field, e.g. "triangles[3]".
MeshData parse_mesh(std::string_view text);
MeshData load_mesh(const std::filesystem::path& path);

/// Canonical JSON text (two-space indent, windings sorted with nonzero entries only).
std::string dump_mesh(const SurfaceMesh& mesh, const Field& field);
void save_mesh(const std::filesystem::path& path, const SurfaceMesh& mesh, const Field& field);

/// Reads a whole file; throws ValidationError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace mbstab

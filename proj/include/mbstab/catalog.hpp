#pragma once

#include "mbstab/mesh_io.hpp"

#include <string>
#include <vector>

namespace mbstab {

struct CatalogInfo {
  std::string name;
  std::string description;
};

/// Bundled example meshes with their fields, in a fixed order.
const std::vector<CatalogInfo>& catalog();

/// Builds and validates a bundled example. Throws ValidationError for unknown names.
MeshData catalog_mesh(const std::string& name);

}  // namespace mbstab

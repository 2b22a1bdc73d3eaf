#pragma once

#include "mbstab/critical.hpp"
#include "mbstab/mesh_io.hpp"
#include "mbstab/reeb.hpp"

#include <optional>
#include <string>

namespace mbstab {

enum class VerdictKind { Contractible, CircleEquivalent };

const char* to_string(VerdictKind kind);

enum class VerdictReason { SaddleFound, NonOrientable, SaddleFreeOrientable };

const char* to_string(VerdictReason reason);

struct Verdict {
  VerdictKind kind = VerdictKind::CircleEquivalent;
  VerdictReason reason = VerdictReason::SaddleFreeOrientable;
  /// First saddle vertex when reason == SaddleFound.
  std::optional<int> saddle_vertex;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

enum class CatalogItem { Cylinder = 1, Disk = 2, Sphere = 3, TorusReal = 4, TorusCircle = 5 };

const char* to_string(CatalogItem item);

struct CatalogMatch {
  CatalogItem item;
  int circle_count = 0;
};

/// Contractible iff there is a saddle or the surface is non-orientable.
Verdict stabilizer_homotopy_type(const SurfaceClass& surface, const CriticalStructure& structure);

/// The saddle-free orientable list: cylinder, disk, sphere, torus (real-valued)
/// and torus (circle-valued). Returns nothing when there is a saddle.
std::optional<CatalogMatch> catalog_match(const SurfaceClass& surface, const CriticalStructure& structure,
                                          GraphShape shape, FieldMode mode);

struct Report {
  SurfaceClass surface;
  CriticalStructure structure;
  ReebGraph reeb;
  GraphShape shape = GraphShape::Other;
  Verdict verdict;
  std::optional<CatalogMatch> catalog;
  /// Poincare-Hopf sum over isolated points; equals chi on closed surfaces without circles.
  int poincare_hopf = 0;
};

/// Full pipeline. ValidationErrors carry the failing stage
/// ("mesh", "field", "critical", "reeb").
Report analyze(const SurfaceMesh& mesh, const Field& field, std::optional<double> cut = std::nullopt);

}  // namespace mbstab

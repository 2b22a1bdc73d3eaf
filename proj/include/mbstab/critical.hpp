#pragma once

#include "mbstab/binary_forms.hpp"
#include "mbstab/surface.hpp"

#include <vector>

namespace mbstab {

struct IsolatedCritical {
  int vertex = -1;
  double value = 0.0;
  SingularityClass cls;
  /// +1 maximum, -1 minimum, 0 saddle.
  int extremum_sign = 0;
};

enum class Parity { Even, Odd };

const char* to_string(Parity parity);

struct CriticalCircle {
  /// Plateau vertex cycle in declaration order.
  std::vector<int> cycle;
  double value = 0.0;
  Parity parity = Parity::Even;
  /// Sign of f - c on each collar side; a single entry when the collar is one-sided.
  std::vector<int> side_signs;
  bool collar_orientable = true;
};

enum class VertexRole { Regular, BoundaryRegular, Extremum, Saddle, Plateau };

const char* to_string(VertexRole role);

struct VertexClass {
  VertexRole role = VertexRole::Regular;
  /// Sign changes of the lifted differences around the link (cyclic for interior vertices).
  int sign_changes = 0;
  int extremum_sign = 0;

  friend bool operator==(const VertexClass&, const VertexClass&) = default;
};

struct CriticalStructure {
  std::vector<IsolatedCritical> isolated;
  std::vector<CriticalCircle> circles;
  /// One entry per vertex.
  std::vector<VertexClass> roles;
};

/// Cyclic sign changes of lifted_difference(v, w) around the link of an interior vertex.
/// Throws ValidationError for boundary vertices.
int link_profile(const SurfaceMesh& mesh, const Field& field, int v);

/// Classifies one vertex. `plateau_of[v]` is the plateau index of v or -1.
/// Boundary vertices must be regular for the boundary type (constant or covering);
/// otherwise a ValidationError names the vertex.
VertexClass classify_vertex(const SurfaceMesh& mesh, const Field& field, const std::vector<int>& plateau_of,
                            int v);

/// Plateau index per vertex, -1 off plateaus.
std::vector<int> plateau_membership(const SurfaceMesh& mesh, const Field& field);

/// Verifies each declared plateau (simple interior cycle, constant lifted value,
/// uniform side signs) and classifies parity and collar orientability.
std::vector<CriticalCircle> detect_plateaus(const SurfaceMesh& mesh, const Field& field);

/// Full inventory; vertex classification runs on the OpenMP kernel.
CriticalStructure critical_inventory(const SurfaceMesh& mesh, const Field& field);

bool has_saddle(const CriticalStructure& structure);

/// Sum over isolated critical points of (1 - k), k = separatrix_count / 2.
int poincare_hopf_sum(const CriticalStructure& structure);

}  // namespace mbstab

#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mbstab {

using Triangle = std::array<int, 3>;
using EdgeKey = std::pair<int, int>;

/// Ordered one-ring of a vertex: a cycle for interior vertices, a path for boundary ones.
struct VertexLink {
  std::vector<int> ring;
  bool closed = false;
};

/// Triangulated compact surface. Construction only checks index ranges and
/// degenerate triangles; manifoldness is established by validate_mesh.
class SurfaceMesh {
 public:
  SurfaceMesh() = default;
  SurfaceMesh(int vertex_count, std::vector<Triangle> triangles);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  /// Edges with u < v, sorted.
  const std::vector<EdgeKey>& edges() const { return edges_; }

  std::optional<int> edge_index(int u, int v) const;
  const std::vector<int>& edge_triangles(int edge) const { return edge_triangles_[edge]; }
  const std::vector<int>& vertex_triangles(int v) const { return vertex_triangles_[v]; }
  bool is_boundary_edge(int edge) const { return edge_triangles_[edge].size() == 1; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }

  /// Throws ValidationError naming the vertex if its link is not a single path or cycle.
  VertexLink link(int v) const;

  /// Copy with vertex v renamed to perm[v].
  SurfaceMesh relabeled(std::span<const int> perm) const;

 private:
  int vertex_count_ = 0;
  std::vector<Triangle> triangles_;
  std::vector<EdgeKey> edges_;
  std::map<EdgeKey, int> edge_lookup_;
  std::vector<std::vector<int>> edge_triangles_;
  std::vector<std::vector<int>> vertex_triangles_;
  std::vector<bool> boundary_vertex_;
};

struct SurfaceClass {
  bool orientable = true;
  int euler_characteristic = 0;
  int boundary_components = 0;
  /// Each boundary circle as an ordered vertex cycle.
  std::vector<std::vector<int>> boundary_cycles;

  /// sphere, disk, annulus, torus, Mobius band, Klein bottle, genus-g surface, ...
  std::string name() const;
};

/// Checks the manifold and connectivity invariants and classifies the surface.
/// Orientability is decided by propagating an orientation from `start_triangle`.
SurfaceClass validate_mesh(const SurfaceMesh& mesh, int start_triangle = 0);

enum class FieldMode { RealValued, CircleValued };

const char* to_string(FieldMode mode);

/// Vertex field, real-valued or circle-valued. Circle-valued fields store a
/// representative in [0,1) per vertex and an integer winding per edge so the
/// lifted difference along (u,v) is value(v) - value(u) + winding(u,v).
/// Plateaus are declared constant-value vertex cycles (critical circles).
class Field {
 public:
  Field() = default;
  Field(FieldMode mode, std::vector<double> values, std::map<EdgeKey, int> windings = {},
        std::vector<std::vector<int>> plateaus = {});

  FieldMode mode() const { return mode_; }
  const std::vector<double>& values() const { return values_; }
  double value(int v) const { return values_[v]; }
  /// Nonzero windings keyed by (u, v) with u < v.
  const std::map<EdgeKey, int>& windings() const { return windings_; }
  const std::vector<std::vector<int>>& plateaus() const { return plateaus_; }

  /// Antisymmetric: winding(v,u) = -winding(u,v). Zero for real-valued fields.
  int winding(int u, int v) const;
  /// Does not check that (u,v) is an edge; see the free function for that.
  double lifted_difference(int u, int v) const { return values_[v] - values_[u] + winding(u, v); }

  Field relabeled(std::span<const int> perm) const;
  /// Real-valued fields only: values multiplied by a positive factor.
  Field rescaled(double factor) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  FieldMode mode_ = FieldMode::RealValued;
  std::vector<double> values_;
  std::map<EdgeKey, int> windings_;
  std::vector<std::vector<int>> plateaus_;
};

/// Throws ValidationError("unknown edge ...") when (u,v) is not a mesh edge.
double lifted_difference(const SurfaceMesh& mesh, const Field& field, int u, int v);

/// Checks value ranges, the circle-map closedness condition on every triangle,
/// the boundary dichotomy (constant or covering) and general position
/// (no ties across edges outside plateaus and constant boundary circles).
void validate_field(const SurfaceMesh& mesh, const Field& field, const SurfaceClass& surface);

/// Boundary circles on which the field is constant (indices into surface.boundary_cycles).
std::vector<bool> constant_boundaries(const Field& field, const SurfaceClass& surface);

}  // namespace mbstab

#pragma once

#include "mbstab/critical.hpp"
#include "mbstab/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mbstab {

enum class ReebNodeKind {
  /// Leaf containing critical points, critical circles or constant boundary circles.
  Critical,
  /// Regular leaf kept only so a cycle of regular leaves has a node to hang its loop on.
  Marker,
  /// Regular leaf that could not be contracted (degree other than one-in/one-out).
  Regular
};

const char* to_string(ReebNodeKind kind);

struct ReebNode {
  int id = 0;
  ReebNodeKind kind = ReebNodeKind::Critical;
  /// Leaf value; a representative in [0,1) for circle-valued fields.
  double value = 0.0;
  std::vector<int> isolated_vertices;
  std::vector<int> circles;
  std::vector<int> boundaries;
};

/// A cylinder of regular leaves. Values run over the open interval (lo, hi),
/// lifted to the universal cover for circle-valued fields (so hi - lo may exceed 1).
struct ReebEdge {
  int from = 0;
  int to = 0;
  double lo = 0.0;
  double hi = 0.0;
};

struct ReebGraph {
  FieldMode mode = FieldMode::RealValued;
  std::vector<ReebNode> nodes;
  std::vector<ReebEdge> edges;

  int degree(int node) const;
  /// E - V + components.
  int first_betti_number() const;
};

enum class GraphShape { PathGraph, CycleGraph, Other };

const char* to_string(GraphShape shape);

/// Leaf-space graph. Critical leaves become nodes; cylinders of regular leaves
/// become edges. Circle-valued fields are cut along the regular fiber f = cut
/// (default: the critical levels themselves, or 0 when there are none).
ReebGraph reeb_graph(const SurfaceMesh& mesh, const Field& field, const SurfaceClass& surface,
                     const CriticalStructure& inventory, std::optional<double> cut = std::nullopt);

GraphShape graph_shape(const ReebGraph& graph);

/// Static drawing: nodes by leaf value (vertical for real fields, angular for circle fields).
std::string reeb_svg(const ReebGraph& graph);

}  // namespace mbstab

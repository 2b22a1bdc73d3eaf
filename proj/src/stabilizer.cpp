#include "mbstab/stabilizer.hpp"

#include "mbstab/error.hpp"

namespace mbstab {

const char* to_string(VerdictKind kind) {
  return kind == VerdictKind::Contractible ? "Contractible" : "CircleEquivalent";
}

const char* to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::SaddleFound: return "saddle";
    case VerdictReason::NonOrientable: return "non-orientable";
    case VerdictReason::SaddleFreeOrientable: return "saddle-free orientable";
  }
  return "?";
}

const char* to_string(CatalogItem item) {
  switch (item) {
    case CatalogItem::Cylinder: return "cylinder";
    case CatalogItem::Disk: return "disk";
    case CatalogItem::Sphere: return "sphere";
    case CatalogItem::TorusReal: return "torus";
    case CatalogItem::TorusCircle: return "torus-zn";
  }
  return "?";
}

Verdict stabilizer_homotopy_type(const SurfaceClass& surface, const CriticalStructure& structure) {
  for (const auto& c : structure.isolated) {
    if (c.cls.kind == SingularityKind::GeneralizedSaddle) {
      return {VerdictKind::Contractible, VerdictReason::SaddleFound, c.vertex};
    }
  }
  if (!surface.orientable) return {VerdictKind::Contractible, VerdictReason::NonOrientable, std::nullopt};
  return {VerdictKind::CircleEquivalent, VerdictReason::SaddleFreeOrientable, std::nullopt};
}

std::optional<CatalogMatch> catalog_match(const SurfaceClass& surface, const CriticalStructure& structure,
                                          GraphShape shape, FieldMode mode) {
  if (has_saddle(structure) || !surface.orientable) return std::nullopt;
  const int chi = surface.euler_characteristic;
  const int b = surface.boundary_components;
  const int isolated = static_cast<int>(structure.isolated.size());
  const int circles = static_cast<int>(structure.circles.size());
  const bool real = mode == FieldMode::RealValued;
  const bool path = shape == GraphShape::PathGraph;

  if (real && chi == 0 && b == 2 && isolated == 0 && path) return CatalogMatch{CatalogItem::Cylinder, circles};
  if (real && chi == 1 && b == 1 && isolated == 1 && path) return CatalogMatch{CatalogItem::Disk, circles};
  if (real && chi == 2 && b == 0 && isolated == 2 && path) return CatalogMatch{CatalogItem::Sphere, circles};
  // A real-valued torus function without isolated points has only circle leaves,
  // so its leaf space is never a path; the shape is not required for this item.
  if (real && chi == 0 && b == 0 && isolated == 0) return CatalogMatch{CatalogItem::TorusReal, circles};
  if (!real && chi == 0 && b == 0 && isolated == 0 && shape == GraphShape::CycleGraph) {
    return CatalogMatch{CatalogItem::TorusCircle, circles};
  }
  return std::nullopt;
}

Report analyze(const SurfaceMesh& mesh, const Field& field, std::optional<double> cut) {
  auto staged = [](const char* stage, auto&& fn) {
    try {
      return fn();
    } catch (const ValidationError& e) {
      if (!e.stage().empty()) throw;
      throw ValidationError(stage, e.what());
    }
  };
  Report r;
  r.surface = staged("mesh", [&] { return validate_mesh(mesh); });
  staged("field", [&] {
    validate_field(mesh, field, r.surface);
    return 0;
  });
  r.structure = staged("critical", [&] { return critical_inventory(mesh, field); });
  r.reeb = staged("reeb", [&] { return reeb_graph(mesh, field, r.surface, r.structure, cut); });
  r.shape = graph_shape(r.reeb);
  r.verdict = stabilizer_homotopy_type(r.surface, r.structure);
  r.catalog = catalog_match(r.surface, r.structure, r.shape, field.mode());
  r.poincare_hopf = poincare_hopf_sum(r.structure);
  return r;
}

}  // namespace mbstab

#pragma once

#include "mbstab/critical.hpp"
#include "mbstab/integrator.hpp"
#include "mbstab/surface.hpp"

#include <vector>

namespace mbstab {

class GluedField;

// Each kernel has a serial reference and an OpenMP variant with identical
// results. When several indices fail, the error of the smallest index is rethrown.

std::vector<VertexClass> classify_vertices_serial(const SurfaceMesh& mesh, const Field& field,
                                                  const std::vector<int>& plateau_of);
std::vector<VertexClass> classify_vertices_parallel(const SurfaceMesh& mesh, const Field& field,
                                                    const std::vector<int>& plateau_of);

/// End points only (record = false).
std::vector<Trajectory> integrate_batch_serial(const FlowField& field, const std::vector<Vec2>& starts, double T,
                                               double tol);
std::vector<Trajectory> integrate_batch_parallel(const FlowField& field, const std::vector<Vec2>& starts, double T,
                                                 double tol);

std::vector<Vec2> sample_glued_serial(const GluedField& glued, int chart, const std::vector<Vec2>& points);
std::vector<Vec2> sample_glued_parallel(const GluedField& glued, int chart, const std::vector<Vec2>& points);

}  // namespace mbstab

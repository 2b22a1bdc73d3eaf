#include "mbstab/kernels.hpp"

#include "mbstab/assembly.hpp"

#include <exception>

namespace mbstab {

namespace {

template <class T, class Fn>
std::vector<T> run_serial(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

template <class T, class Fn>
std::vector<T> run_parallel(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = fn(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

std::vector<VertexClass> classify_vertices_serial(const SurfaceMesh& mesh, const Field& field,
                                                  const std::vector<int>& plateau_of) {
  return run_serial<VertexClass>(static_cast<std::size_t>(mesh.vertex_count()), [&](std::size_t v) {
    return classify_vertex(mesh, field, plateau_of, static_cast<int>(v));
  });
}

std::vector<VertexClass> classify_vertices_parallel(const SurfaceMesh& mesh, const Field& field,
                                                    const std::vector<int>& plateau_of) {
  return run_parallel<VertexClass>(static_cast<std::size_t>(mesh.vertex_count()), [&](std::size_t v) {
    return classify_vertex(mesh, field, plateau_of, static_cast<int>(v));
  });
}

std::vector<Trajectory> integrate_batch_serial(const FlowField& field, const std::vector<Vec2>& starts, double T,
                                               double tol) {
  return run_serial<Trajectory>(starts.size(), [&](std::size_t i) { return integrate(field, starts[i], T, tol, false); });
}

std::vector<Trajectory> integrate_batch_parallel(const FlowField& field, const std::vector<Vec2>& starts, double T,
                                                 double tol) {
  return run_parallel<Trajectory>(starts.size(),
                                  [&](std::size_t i) { return integrate(field, starts[i], T, tol, false); });
}

std::vector<Vec2> sample_glued_serial(const GluedField& glued, int chart, const std::vector<Vec2>& points) {
  return run_serial<Vec2>(points.size(), [&](std::size_t i) { return glued(chart, points[i]); });
}

std::vector<Vec2> sample_glued_parallel(const GluedField& glued, int chart, const std::vector<Vec2>& points) {
  return run_parallel<Vec2>(points.size(), [&](std::size_t i) { return glued(chart, points[i]); });
}

}  // namespace mbstab

#include "mbstab/surface.hpp"

#include "mbstab/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

namespace mbstab {

namespace {

std::string edge_name(int u, int v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

EdgeKey key(int u, int v) { return u < v ? EdgeKey{u, v} : EdgeKey{v, u}; }

/// +1 if the triangle traverses u -> v, -1 if v -> u.
int direction_in(const Triangle& t, int u, int v) {
  for (int k = 0; k < 3; ++k) {
    if (t[k] == u && t[(k + 1) % 3] == v) return 1;
    if (t[k] == v && t[(k + 1) % 3] == u) return -1;
  }
  return 0;
}

}  // namespace

SurfaceMesh::SurfaceMesh(int vertex_count, std::vector<Triangle> triangles)
    : vertex_count_(vertex_count), triangles_(std::move(triangles)) {
  if (vertex_count_ <= 0) throw ValidationError("mesh needs at least one vertex");
  vertex_triangles_.assign(static_cast<std::size_t>(vertex_count_), {});
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= vertex_count_) {
        throw ValidationError("triangle " + std::to_string(t) + " references vertex " + std::to_string(v) +
                              " outside [0," + std::to_string(vertex_count_) + ")");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw ValidationError("triangle " + std::to_string(t) + " is degenerate");
    }
    for (int k = 0; k < 3; ++k) {
      vertex_triangles_[tri[k]].push_back(static_cast<int>(t));
      edge_lookup_.emplace(key(tri[k], tri[(k + 1) % 3]), 0);
    }
  }
  edges_.reserve(edge_lookup_.size());
  for (auto& [k, idx] : edge_lookup_) {
    idx = static_cast<int>(edges_.size());
    edges_.push_back(k);
  }
  edge_triangles_.assign(edges_.size(), {});
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      edge_triangles_[edge_lookup_.at(key(tri[k], tri[(k + 1) % 3]))].push_back(static_cast<int>(t));
    }
  }
  boundary_vertex_.assign(static_cast<std::size_t>(vertex_count_), false);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edge_triangles_[e].size() == 1) {
      boundary_vertex_[edges_[e].first] = true;
      boundary_vertex_[edges_[e].second] = true;
    }
  }
}

std::optional<int> SurfaceMesh::edge_index(int u, int v) const {
  auto it = edge_lookup_.find(key(u, v));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

VertexLink SurfaceMesh::link(int v) const {
  const std::string where = "non-manifold vertex " + std::to_string(v);
  std::map<int, std::vector<int>> adjacency;
  for (int t : vertex_triangles_[v]) {
    const auto& tri = triangles_[t];
    int others[2];
    int n = 0;
    for (int w : tri) {
      if (w != v) others[n++] = w;
    }
    adjacency[others[0]].push_back(others[1]);
    adjacency[others[1]].push_back(others[0]);
  }
  if (adjacency.empty()) throw ValidationError("vertex " + std::to_string(v) + " is in no triangle");
  std::vector<int> endpoints;
  for (auto& [w, nbrs] : adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    if (nbrs.size() > 2 || (nbrs.size() == 2 && nbrs[0] == nbrs[1])) throw ValidationError(where);
    if (nbrs.size() == 1) endpoints.push_back(w);
  }
  if (!endpoints.empty() && endpoints.size() != 2) throw ValidationError(where);

  VertexLink out;
  out.closed = endpoints.empty();
  int start = out.closed ? adjacency.begin()->first : endpoints.front();
  int previous = -1;
  int current = start;
  while (true) {
    out.ring.push_back(current);
    const auto& nbrs = adjacency.at(current);
    int next = -1;
    for (int w : nbrs) {
      if (w != previous) {
        next = w;
        break;
      }
    }
    if (next == -1 || next == start) break;
    previous = current;
    current = next;
    if (out.ring.size() > adjacency.size()) throw ValidationError(where);
  }
  if (out.ring.size() != adjacency.size()) throw ValidationError(where + " (link is disconnected)");
  return out;
}

SurfaceMesh SurfaceMesh::relabeled(std::span<const int> perm) const {
  std::vector<Triangle> tris = triangles_;
  for (auto& t : tris) {
    for (int& v : t) v = perm[v];
  }
  return SurfaceMesh(vertex_count_, std::move(tris));
}

std::string SurfaceClass::name() const {
  const int b = boundary_components;
  if (orientable) {
    const int genus = (2 - euler_characteristic - b) / 2;
    if (genus == 0 && b == 0) return "sphere";
    if (genus == 0 && b == 1) return "disk";
    if (genus == 0 && b == 2) return "annulus";
    if (genus == 1 && b == 0) return "torus";
    std::string s = "genus-" + std::to_string(genus) + " surface";
    if (b > 0) s += " with " + std::to_string(b) + " boundary components";
    return s;
  }
  const int crosscaps = 2 - euler_characteristic - b;
  if (crosscaps == 1 && b == 0) return "projective plane";
  if (crosscaps == 1 && b == 1) return "Mobius band";
  if (crosscaps == 2 && b == 0) return "Klein bottle";
  std::string s = "non-orientable genus-" + std::to_string(crosscaps) + " surface";
  if (b > 0) s += " with " + std::to_string(b) + " boundary components";
  return s;
}

SurfaceClass validate_mesh(const SurfaceMesh& mesh, int start_triangle) {
  if (mesh.triangle_count() == 0) throw ValidationError("mesh has no triangles");
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const auto n = mesh.edge_triangles(e).size();
    if (n > 2) {
      const auto [u, v] = mesh.edges()[e];
      throw ValidationError("non-manifold edge " + edge_name(u, v) + " lies in " + std::to_string(n) + " triangles");
    }
  }
  for (int v = 0; v < mesh.vertex_count(); ++v) (void)mesh.link(v);

  // Connectivity over triangles sharing an edge.
  const int nt = mesh.triangle_count();
  std::vector<int> orientation(static_cast<std::size_t>(nt), 0);
  if (start_triangle < 0 || start_triangle >= nt) start_triangle = 0;
  bool orientable = true;
  std::deque<int> queue{start_triangle};
  orientation[start_triangle] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop_front();
    const auto& tri = mesh.triangles()[t];
    for (int k = 0; k < 3; ++k) {
      const int u = tri[k];
      const int v = tri[(k + 1) % 3];
      const int e = *mesh.edge_index(u, v);
      for (int t2 : mesh.edge_triangles(e)) {
        if (t2 == t) continue;
        const int want = -orientation[t] * direction_in(tri, u, v) * direction_in(mesh.triangles()[t2], u, v);
        if (orientation[t2] == 0) {
          orientation[t2] = want;
          ++reached;
          queue.push_back(t2);
        } else if (orientation[t2] != want) {
          orientable = false;
        }
      }
    }
  }
  if (reached != nt) throw ValidationError("surface is disconnected");

  SurfaceClass out;
  out.orientable = orientable;
  out.euler_characteristic = mesh.vertex_count() - mesh.edge_count() + nt;

  std::map<int, std::vector<int>> boundary_adjacency;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    const auto [u, v] = mesh.edges()[e];
    boundary_adjacency[u].push_back(v);
    boundary_adjacency[v].push_back(u);
  }
  std::set<int> visited;
  for (auto& [start, nbrs] : boundary_adjacency) {
    if (visited.count(start)) continue;
    std::vector<int> cycle;
    int previous = -1;
    int current = start;
    while (!visited.count(current)) {
      visited.insert(current);
      cycle.push_back(current);
      const auto& n = boundary_adjacency.at(current);
      int next = previous == -1 ? std::min(n[0], n[1]) : (n[0] == previous ? n[1] : n[0]);
      previous = current;
      current = next;
    }
    out.boundary_cycles.push_back(std::move(cycle));
  }
  out.boundary_components = static_cast<int>(out.boundary_cycles.size());
  return out;
}

const char* to_string(FieldMode mode) { return mode == FieldMode::RealValued ? "real" : "circle"; }

Field::Field(FieldMode mode, std::vector<double> values, std::map<EdgeKey, int> windings,
             std::vector<std::vector<int>> plateaus)
    : mode_(mode), values_(std::move(values)), plateaus_(std::move(plateaus)) {
  if (mode_ == FieldMode::RealValued && !windings.empty()) {
    for (const auto& [k, w] : windings) {
      if (w != 0) throw ValidationError("real-valued field cannot carry edge windings");
    }
  }
  for (const auto& [k, w] : windings) {
    if (k.first == k.second) throw ValidationError("winding on a loop edge");
    if (w == 0) continue;
    const EdgeKey canonical = key(k.first, k.second);
    const int signed_w = k.first < k.second ? w : -w;
    auto [it, inserted] = windings_.emplace(canonical, signed_w);
    if (!inserted && it->second != signed_w) {
      throw ValidationError("winding antisymmetry violated on edge " + edge_name(k.first, k.second));
    }
  }
}

int Field::winding(int u, int v) const {
  if (windings_.empty()) return 0;
  auto it = windings_.find(key(u, v));
  if (it == windings_.end()) return 0;
  return u < v ? it->second : -it->second;
}

Field Field::relabeled(std::span<const int> perm) const {
  std::vector<double> values(values_.size());
  for (std::size_t v = 0; v < values_.size(); ++v) values[perm[v]] = values_[v];
  std::map<EdgeKey, int> windings;
  for (const auto& [k, w] : windings_) windings[{perm[k.first], perm[k.second]}] = w;
  auto plateaus = plateaus_;
  for (auto& p : plateaus) {
    for (int& v : p) v = perm[v];
  }
  return Field(mode_, std::move(values), std::move(windings), std::move(plateaus));
}

Field Field::rescaled(double factor) const {
  if (mode_ != FieldMode::RealValued || !(factor > 0)) {
    throw ValidationError("only real-valued fields can be rescaled, by a positive factor");
  }
  auto values = values_;
  for (double& x : values) x *= factor;
  return Field(mode_, std::move(values), {}, plateaus_);
}

double lifted_difference(const SurfaceMesh& mesh, const Field& field, int u, int v) {
  if (!mesh.edge_index(u, v)) throw ValidationError("unknown edge " + edge_name(u, v));
  return field.lifted_difference(u, v);
}

std::vector<bool> constant_boundaries(const Field& field, const SurfaceClass& surface) {
  std::vector<bool> out;
  for (const auto& cycle : surface.boundary_cycles) {
    bool constant = true;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (field.lifted_difference(cycle[i], cycle[(i + 1) % cycle.size()]) != 0.0) constant = false;
    }
    out.push_back(constant);
  }
  return out;
}

void validate_field(const SurfaceMesh& mesh, const Field& field, const SurfaceClass& surface) {
  if (static_cast<int>(field.values().size()) != mesh.vertex_count()) {
    throw ValidationError("field has " + std::to_string(field.values().size()) + " values for " +
                          std::to_string(mesh.vertex_count()) + " vertices");
  }
  for (std::size_t v = 0; v < field.values().size(); ++v) {
    const double x = field.values()[v];
    if (!std::isfinite(x)) throw ValidationError("value of vertex " + std::to_string(v) + " is not finite");
    if (field.mode() == FieldMode::CircleValued && (x < 0.0 || x >= 1.0)) {
      throw ValidationError("circle-valued representative of vertex " + std::to_string(v) + " is outside [0,1)");
    }
  }
  for (const auto& [k, w] : field.windings()) {
    if (!mesh.edge_index(k.first, k.second)) throw ValidationError("winding on unknown edge " + edge_name(k.first, k.second));
  }
  if (field.mode() == FieldMode::CircleValued) {
    for (std::size_t t = 0; t < mesh.triangles().size(); ++t) {
      const auto& tri = mesh.triangles()[t];
      const int sum = field.winding(tri[0], tri[1]) + field.winding(tri[1], tri[2]) + field.winding(tri[2], tri[0]);
      if (sum != 0) {
        throw ValidationError("not a circle map: windings around triangle " + std::to_string(t) + " sum to " +
                              std::to_string(sum));
      }
    }
  }

  std::vector<int> plateau_of(static_cast<std::size_t>(mesh.vertex_count()), -1);
  for (std::size_t p = 0; p < field.plateaus().size(); ++p) {
    for (int v : field.plateaus()[p]) {
      if (v < 0 || v >= mesh.vertex_count()) throw ValidationError("plateau " + std::to_string(p) + " references unknown vertex");
      if (plateau_of[v] != -1) throw ValidationError("vertex " + std::to_string(v) + " belongs to two plateaus");
      plateau_of[v] = static_cast<int>(p);
    }
  }

  const auto constant = constant_boundaries(field, surface);
  std::vector<int> boundary_of(static_cast<std::size_t>(mesh.vertex_count()), -1);
  for (std::size_t b = 0; b < surface.boundary_cycles.size(); ++b) {
    const auto& cycle = surface.boundary_cycles[b];
    for (int v : cycle) boundary_of[v] = static_cast<int>(b);
    if (constant[b]) continue;
    int first_sign = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const double d = field.lifted_difference(cycle[i], cycle[(i + 1) % cycle.size()]);
      const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
      if (s == 0 || (first_sign != 0 && s != first_sign)) {
        throw ValidationError("boundary component " + std::to_string(b) +
                              " is neither constant nor a covering map");
      }
      first_sign = s;
    }
  }

  for (int e = 0; e < mesh.edge_count(); ++e) {
    const auto [u, v] = mesh.edges()[e];
    if (field.lifted_difference(u, v) != 0.0) continue;
    const bool same_plateau = plateau_of[u] != -1 && plateau_of[u] == plateau_of[v];
    const bool along_constant_boundary = mesh.is_boundary_edge(e) && boundary_of[u] == boundary_of[v] &&
                                         constant[static_cast<std::size_t>(boundary_of[u])];
    if (!same_plateau && !along_constant_boundary) {
      throw ValidationError("general position violated: equal values across edge " + edge_name(u, v));
    }
  }
}

}  // namespace mbstab

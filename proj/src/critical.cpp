#include "mbstab/critical.hpp"

#include "mbstab/error.hpp"
#include "mbstab/kernels.hpp"

#include <algorithm>
#include <set>

namespace mbstab {

namespace {

int sign_of(double d) { return d > 0 ? 1 : (d < 0 ? -1 : 0); }

std::string vertex_name(int v) { return "vertex " + std::to_string(v); }

/// Position of w in ring, or -1.
int ring_position(const std::vector<int>& ring, int w) {
  auto it = std::find(ring.begin(), ring.end(), w);
  return it == ring.end() ? -1 : static_cast<int>(it - ring.begin());
}

}  // namespace

const char* to_string(Parity parity) { return parity == Parity::Even ? "Even" : "Odd"; }

const char* to_string(VertexRole role) {
  switch (role) {
    case VertexRole::Regular: return "regular";
    case VertexRole::BoundaryRegular: return "boundary";
    case VertexRole::Extremum: return "extremum";
    case VertexRole::Saddle: return "saddle";
    case VertexRole::Plateau: return "plateau";
  }
  return "?";
}

int link_profile(const SurfaceMesh& mesh, const Field& field, int v) {
  const VertexLink link = mesh.link(v);
  if (!link.closed) throw ValidationError(vertex_name(v) + " is on the boundary; use the boundary classification");
  const auto& ring = link.ring;
  std::vector<int> signs;
  signs.reserve(ring.size());
  for (int w : ring) {
    const int s = sign_of(field.lifted_difference(v, w));
    if (s == 0) throw ValidationError(vertex_name(v) + " ties with neighbour " + std::to_string(w) + " off a plateau");
    signs.push_back(s);
  }
  int changes = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
  }
  return changes;
}

VertexClass classify_vertex(const SurfaceMesh& mesh, const Field& field, const std::vector<int>& plateau_of,
                            int v) {
  VertexClass out;
  if (plateau_of[v] != -1) {
    out.role = VertexRole::Plateau;
    return out;
  }
  if (!mesh.is_boundary_vertex(v)) {
    out.sign_changes = link_profile(mesh, field, v);
    if (out.sign_changes == 2) {
      out.role = VertexRole::Regular;
    } else if (out.sign_changes == 0) {
      out.role = VertexRole::Extremum;
      out.extremum_sign = field.lifted_difference(v, mesh.link(v).ring.front()) < 0 ? 1 : -1;
    } else {
      out.role = VertexRole::Saddle;
    }
    return out;
  }

  const auto ring = mesh.link(v).ring;
  std::vector<int> signs;
  for (int w : ring) signs.push_back(sign_of(field.lifted_difference(v, w)));
  const bool constant_side = signs.front() == 0 && signs.back() == 0;
  int changes = 0;
  if (constant_side) {
    for (std::size_t i = 1; i + 1 < signs.size(); ++i) {
      if (signs[i] == 0) throw ValidationError(vertex_name(v) + " ties with an interior neighbour");
      if (i > 1 && signs[i] != signs[i - 1]) ++changes;
    }
  } else {
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] == 0) throw ValidationError(vertex_name(v) + " ties with neighbour " + std::to_string(ring[i]));
      if (i > 0 && signs[i] != signs[i - 1]) ++changes;
    }
  }
  const int expected = constant_side ? 0 : 1;
  if (changes != expected) {
    throw ValidationError("boundary " + vertex_name(v) + " is critical (" + std::to_string(changes) +
                          " sign changes along its link); singular points must be interior");
  }
  out.role = VertexRole::BoundaryRegular;
  out.sign_changes = changes;
  return out;
}

std::vector<int> plateau_membership(const SurfaceMesh& mesh, const Field& field) {
  std::vector<int> out(static_cast<std::size_t>(mesh.vertex_count()), -1);
  for (std::size_t p = 0; p < field.plateaus().size(); ++p) {
    for (int v : field.plateaus()[p]) {
      if (v < 0 || v >= mesh.vertex_count()) throw ValidationError("plateau " + std::to_string(p) + " has an unknown vertex");
      if (out[v] != -1) throw ValidationError(vertex_name(v) + " belongs to two plateaus");
      out[v] = static_cast<int>(p);
    }
  }
  return out;
}

std::vector<CriticalCircle> detect_plateaus(const SurfaceMesh& mesh, const Field& field) {
  const auto plateau_of = plateau_membership(mesh, field);
  std::vector<CriticalCircle> out;
  for (std::size_t p = 0; p < field.plateaus().size(); ++p) {
    const auto& cycle = field.plateaus()[p];
    const std::string name = "plateau " + std::to_string(p);
    const int n = static_cast<int>(cycle.size());
    if (n < 3) throw ValidationError(name + " is not a cycle (fewer than 3 vertices)");
    if (std::set<int>(cycle.begin(), cycle.end()).size() != cycle.size()) {
      throw ValidationError(name + " is not a simple cycle (repeated vertex)");
    }
    for (int i = 0; i < n; ++i) {
      const int u = cycle[i];
      const int w = cycle[(i + 1) % n];
      if (!mesh.edge_index(u, w)) {
        throw ValidationError(name + " is not a cycle: " + std::to_string(u) + " and " + std::to_string(w) +
                              " are not adjacent");
      }
      if (field.lifted_difference(u, w) != 0.0) throw ValidationError(name + " is not constant along its cycle");
      if (mesh.is_boundary_vertex(u)) throw ValidationError(name + " touches the boundary at " + vertex_name(u));
    }

    // Split each ring at prev/next into two arcs and carry the arc labels around the cycle.
    struct Split {
      std::vector<int> ring;
      int prev_pos;
      int next_pos;
    };
    std::vector<Split> splits;
    for (int i = 0; i < n; ++i) {
      const int v = cycle[i];
      const int prev = cycle[(i + n - 1) % n];
      const int next = cycle[(i + 1) % n];
      Split s{mesh.link(v).ring, 0, 0};
      s.prev_pos = ring_position(s.ring, prev);
      s.next_pos = ring_position(s.ring, next);
      for (int w : s.ring) {
        if (plateau_of[w] == static_cast<int>(p) && w != prev && w != next) {
          throw ValidationError(name + " is not a simple cycle: chord " + std::to_string(v) + "-" + std::to_string(w));
        }
      }
      const int m = static_cast<int>(s.ring.size());
      const int gap = (s.next_pos - s.prev_pos + m) % m;
      if (gap <= 1 || gap >= m - 1) {
        throw ValidationError(name + " does not separate its collar at " + vertex_name(v));
      }
      splits.push_back(std::move(s));
    }
    // Arc 0 runs from prev to next in ring order, arc 1 from next back to prev.
    auto arc_of = [](const Split& s, int w) {
      const int m = static_cast<int>(s.ring.size());
      const int pos = ring_position(s.ring, w);
      const int from_prev = (pos - s.prev_pos + m) % m;
      const int to_next = (s.next_pos - s.prev_pos + m) % m;
      return from_prev < to_next ? 0 : 1;
    };

    // relative[i] = 1 when vertex i's arc labels are swapped with respect to vertex 0.
    std::vector<int> relative(static_cast<std::size_t>(n), 0);
    bool mobius = false;
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      const Split& a = splits[i];
      const int m = static_cast<int>(a.ring.size());
      // Third vertex of a triangle on the edge (cycle[i], cycle[j]); it lies on one side of both.
      const int witness = a.ring[(a.next_pos + m - 1) % m];
      const int flip = arc_of(a, witness) != arc_of(splits[j], witness) ? 1 : 0;
      if (j == 0) {
        mobius = (relative[i] ^ flip) == 1;
      } else {
        relative[j] = relative[i] ^ flip;
      }
    }

    int side_sign[2] = {0, 0};
    for (int i = 0; i < n; ++i) {
      const Split& s = splits[i];
      for (int w : s.ring) {
        if (w == cycle[(i + n - 1) % n] || w == cycle[(i + 1) % n]) continue;
        const int sg = sign_of(field.lifted_difference(cycle[i], w));
        if (sg == 0) throw ValidationError(name + " ties with off-plateau vertex " + std::to_string(w));
        const int side = mobius ? 0 : (arc_of(s, w) ^ relative[i]);
        if (side_sign[side] == 0) side_sign[side] = sg;
        if (side_sign[side] != sg) {
          throw ValidationError(name + " is not a critical circle: f - c changes sign on one collar side near " +
                                vertex_name(cycle[i]));
        }
      }
    }

    CriticalCircle c;
    c.cycle = cycle;
    c.value = field.value(cycle.front());
    c.collar_orientable = !mobius;
    if (mobius) {
      c.side_signs = {side_sign[0]};
      c.parity = Parity::Even;
    } else {
      c.side_signs = {side_sign[0], side_sign[1]};
      c.parity = side_sign[0] == side_sign[1] ? Parity::Even : Parity::Odd;
    }
    out.push_back(std::move(c));
  }
  return out;
}

CriticalStructure critical_inventory(const SurfaceMesh& mesh, const Field& field) {
  CriticalStructure out;
  out.circles = detect_plateaus(mesh, field);
  const auto plateau_of = plateau_membership(mesh, field);
  out.roles = classify_vertices_parallel(mesh, field, plateau_of);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const VertexClass& c = out.roles[v];
    if (c.role == VertexRole::Extremum) {
      out.isolated.push_back({v, field.value(v), {SingularityKind::LocalExtremum, 0}, c.extremum_sign});
    } else if (c.role == VertexRole::Saddle) {
      out.isolated.push_back({v, field.value(v), {SingularityKind::GeneralizedSaddle, c.sign_changes}, 0});
    }
  }
  return out;
}

bool has_saddle(const CriticalStructure& structure) {
  return std::any_of(structure.isolated.begin(), structure.isolated.end(),
                     [](const IsolatedCritical& c) { return c.cls.kind == SingularityKind::GeneralizedSaddle; });
}

int poincare_hopf_sum(const CriticalStructure& structure) {
  int sum = 0;
  for (const auto& c : structure.isolated) sum += 1 - c.cls.separatrix_count / 2;
  return sum;
}

}  // namespace mbstab

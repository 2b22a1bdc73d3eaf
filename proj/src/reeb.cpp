#include "mbstab/reeb.hpp"

#include "mbstab/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mbstab {

namespace {

/// k + r, compared lexicographically; r lies in [0,1) for circle-valued fields
/// so the comparison is exact without forming the floating-point sum.
struct Lifted {
  long k = 0;
  double r = 0.0;

  double total() const { return static_cast<double>(k) + r; }
  friend bool operator<(Lifted a, Lifted b) { return a.k != b.k ? a.k < b.k : a.r < b.r; }
  friend bool operator<=(Lifted a, Lifted b) { return !(b < a); }
};

Lifted lifted_from(double x) {
  const double k = std::floor(x);
  double r = x - k;
  if (r >= 1.0) r = std::nextafter(1.0, 0.0);
  return {static_cast<long>(k), r};
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;  // smallest id is the root, which keeps component order deterministic
  }

 private:
  std::vector<int> parent_;
};

/// Every vertex, edge and triangle with a frame based at its smallest vertex.
struct SimplexTable {
  std::vector<std::vector<int>> verts;
  std::vector<int> base;
  std::vector<Lifted> lo;
  std::vector<Lifted> hi;
  /// (face, coface, frame shift) incidences.
  std::vector<std::array<int, 3>> faces;
  int vertex_count = 0;
  int edge_offset = 0;
  int triangle_offset = 0;
};

SimplexTable build_table(const SurfaceMesh& mesh, const Field& field) {
  SimplexTable t;
  t.vertex_count = mesh.vertex_count();
  t.edge_offset = mesh.vertex_count();
  t.triangle_offset = t.edge_offset + mesh.edge_count();
  const bool circle = field.mode() == FieldMode::CircleValued;
  auto frame_value = [&](int base, int w) {
    return circle ? Lifted{field.winding(base, w), field.value(w)} : Lifted{0, field.value(w)};
  };
  auto add = [&](std::vector<int> vs) {
    const int b = *std::min_element(vs.begin(), vs.end());
    Lifted lo = frame_value(b, vs[0]);
    Lifted hi = lo;
    for (int w : vs) {
      const Lifted x = frame_value(b, w);
      if (x < lo) lo = x;
      if (hi < x) hi = x;
    }
    t.verts.push_back(std::move(vs));
    t.base.push_back(b);
    t.lo.push_back(lo);
    t.hi.push_back(hi);
  };
  for (int v = 0; v < mesh.vertex_count(); ++v) add({v});
  for (const auto& [u, v] : mesh.edges()) add({u, v});
  for (const auto& tri : mesh.triangles()) add({tri[0], tri[1], tri[2]});

  auto shift = [&](int coface, int face) { return circle ? field.winding(t.base[coface], t.base[face]) : 0; };
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const int s = t.edge_offset + e;
    for (int w : t.verts[s]) t.faces.push_back({w, s, shift(s, w)});
  }
  for (int tri = 0; tri < mesh.triangle_count(); ++tri) {
    const int s = t.triangle_offset + tri;
    const auto& vs = t.verts[s];
    for (int k = 0; k < 3; ++k) {
      const int e = t.edge_offset + *mesh.edge_index(vs[k], vs[(k + 1) % 3]);
      t.faces.push_back({e, s, shift(s, e)});
    }
  }
  return t;
}

/// Pieces of f^{-1}([a, b]) (mod 1 for circle-valued fields): one convex piece per
/// simplex and deck index n, joined along faces.
class Window {
 public:
  Window(const SimplexTable& t, bool circle, Lifted a, Lifted b) : uf_(0) {
    const std::size_t n = t.verts.size();
    offset_.resize(n);
    n_lo_.resize(n);
    count_.resize(n);
    int total = 0;
    for (std::size_t s = 0; s < n; ++s) {
      long lo = 0;
      long hi = -1;
      if (circle) {
        lo = (t.lo[s].k - b.k) + (t.lo[s].r > b.r ? 1 : 0);
        hi = (t.hi[s].k - a.k) - (t.hi[s].r < a.r ? 1 : 0);
      } else if (t.lo[s].r <= b.r && a.r <= t.hi[s].r) {
        lo = hi = 0;
      }
      offset_[s] = total;
      n_lo_[s] = static_cast<int>(lo);
      count_[s] = hi >= lo ? static_cast<int>(hi - lo + 1) : 0;
      total += count_[s];
    }
    uf_ = UnionFind(total);
    for (const auto& [face, coface, delta] : t.faces) {
      for (int k = 0; k < count_[face]; ++k) {
        const int n_face = n_lo_[face] + k;
        const int c = id(coface, n_face + delta);
        if (c < 0) throw std::logic_error("reeb: face piece without coface piece");
        uf_.unite(offset_[face] + k, c);
      }
    }
  }

  /// Piece index or -1 when simplex s does not meet the window with deck index n.
  int id(int s, int n) const {
    const int k = n - n_lo_[s];
    return k >= 0 && k < count_[s] ? offset_[s] + k : -1;
  }
  int root(int s, int n) {
    const int i = id(s, n);
    return i < 0 ? -1 : uf_.find(i);
  }
  int root(int piece) { return uf_.find(piece); }
  int simplex_count() const { return static_cast<int>(offset_.size()); }
  int n_lo(int s) const { return n_lo_[s]; }
  int count(int s) const { return count_[s]; }

 private:
  std::vector<int> offset_;
  std::vector<int> n_lo_;
  std::vector<int> count_;
  UnionFind uf_;
};

/// Components of a single-value window: root piece -> dense index, in order of first appearance.
std::map<int, int> components(Window& w) {
  std::map<int, int> out;
  for (int s = 0; s < w.simplex_count(); ++s) {
    for (int k = 0; k < w.count(s); ++k) out.emplace(w.root(s, w.n_lo(s) + k), static_cast<int>(out.size()));
  }
  return out;
}

}  // namespace

const char* to_string(ReebNodeKind kind) {
  switch (kind) {
    case ReebNodeKind::Critical: return "critical";
    case ReebNodeKind::Marker: return "marker";
    case ReebNodeKind::Regular: return "regular";
  }
  return "?";
}

const char* to_string(GraphShape shape) {
  switch (shape) {
    case GraphShape::PathGraph: return "PathGraph";
    case GraphShape::CycleGraph: return "CycleGraph";
    case GraphShape::Other: return "Other";
  }
  return "?";
}

int ReebGraph::degree(int node) const {
  int d = 0;
  for (const auto& e : edges) d += (e.from == node) + (e.to == node);
  return d;
}

int ReebGraph::first_betti_number() const {
  UnionFind uf(static_cast<int>(nodes.size()));
  for (const auto& e : edges) uf.unite(e.from, e.to);
  int comps = 0;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) comps += uf.find(i) == i;
  return static_cast<int>(edges.size()) - static_cast<int>(nodes.size()) + comps;
}

ReebGraph reeb_graph(const SurfaceMesh& mesh, const Field& field, const SurfaceClass& surface,
                     const CriticalStructure& inventory, std::optional<double> cut) {
  const bool circle = field.mode() == FieldMode::CircleValued;
  if (cut && circle && !(*cut >= 0.0 && *cut < 1.0)) throw ValidationError("cut value must lie in [0,1)");
  const SimplexTable table = build_table(mesh, field);
  const auto constant = constant_boundaries(field, surface);

  // Critical elements as (value, vertex, kind, index).
  struct Element {
    double value;
    int vertex;
    int kind;  // 0 isolated, 1 circle, 2 boundary
    int index;
  };
  std::vector<Element> elements;
  for (const auto& c : inventory.isolated) elements.push_back({c.value, c.vertex, 0, c.vertex});
  for (std::size_t i = 0; i < inventory.circles.size(); ++i) {
    elements.push_back({inventory.circles[i].value, inventory.circles[i].cycle.front(), 1, static_cast<int>(i)});
  }
  for (std::size_t b = 0; b < surface.boundary_cycles.size(); ++b) {
    if (!constant[b]) continue;
    const int v = surface.boundary_cycles[b].front();
    elements.push_back({field.value(v), v, 2, static_cast<int>(b)});
  }

  std::vector<double> levels;
  for (const auto& e : elements) levels.push_back(e.value);
  if (circle && (cut || levels.empty())) levels.push_back(cut.value_or(0.0));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.empty()) throw ValidationError("real-valued field without critical levels (is the mesh closed?)");
  const int m = static_cast<int>(levels.size());

  ReebGraph g;
  g.mode = field.mode();

  // Leaves at every level.
  struct LevelLeaves {
    Window window;
    std::map<int, int> node_of_root;
  };
  std::vector<LevelLeaves> leaves;
  leaves.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Lifted c{0, levels[i]};
    Window w(table, circle, c, c);
    auto comps = components(w);
    std::map<int, int> node_of_root;
    for (const auto& [root, local] : comps) {
      (void)local;
      ReebNode node;
      node.id = static_cast<int>(g.nodes.size());
      node.kind = ReebNodeKind::Regular;
      node.value = levels[i];
      node_of_root[root] = node.id;
      g.nodes.push_back(node);
    }
    for (const auto& e : elements) {
      if (e.value != levels[i]) continue;
      const int root = w.root(e.vertex, 0);
      ReebNode& node = g.nodes[node_of_root.at(root)];
      node.kind = ReebNodeKind::Critical;
      if (e.kind == 0) node.isolated_vertices.push_back(e.index);
      if (e.kind == 1) node.circles.push_back(e.index);
      if (e.kind == 2) node.boundaries.push_back(e.index);
    }
    leaves.push_back({std::move(w), std::move(node_of_root)});
  }

  // Maps slab components to the leaf at one end. `shift` is the deck offset of that end.
  auto attach = [&](Window& slab, int level, long shift) {
    std::map<int, int> node_of_slab_root;
    Window& lw = leaves[level].window;
    for (int s = 0; s < lw.simplex_count(); ++s) {
      for (int k = 0; k < lw.count(s); ++k) {
        const int n = lw.n_lo(s) + k;
        const int node = leaves[level].node_of_root.at(lw.root(s, n));
        const int r = slab.root(s, n - static_cast<int>(shift));
        if (r < 0) throw std::logic_error("reeb: leaf piece missing from slab");
        auto [it, inserted] = node_of_slab_root.emplace(r, node);
        if (!inserted && it->second != node) throw std::logic_error("reeb: slab component meets two leaves");
      }
    }
    return node_of_slab_root;
  };

  const int slabs = circle ? m : m - 1;
  for (int i = 0; i < slabs; ++i) {
    const int upper_level = (i + 1) % m;
    const Lifted lo{0, levels[i]};
    const Lifted hi{i + 1 < m ? 0 : 1, levels[upper_level]};
    const Lifted mid = circle ? lifted_from(0.5 * (lo.total() + hi.total())) : Lifted{0, 0.5 * (lo.r + hi.r)};

    Window mid_window(table, circle, mid, mid);
    Window lower(table, circle, lo, mid);
    Window upper(table, circle, mid, hi);
    const auto below = attach(lower, i, 0);
    const auto above = attach(upper, upper_level, hi.k);

    std::map<int, std::pair<int, int>> representative;  // mid root -> (simplex, n)
    for (int s = 0; s < mid_window.simplex_count(); ++s) {
      for (int k = 0; k < mid_window.count(s); ++k) {
        const int n = mid_window.n_lo(s) + k;
        representative.emplace(mid_window.root(s, n), std::make_pair(s, n));
      }
    }
    for (const auto& [root, rep] : representative) {
      (void)root;
      const auto [s, n] = rep;
      const int from = below.at(lower.root(s, n));
      const int to = above.at(upper.root(s, n));
      g.edges.push_back({from, to, lo.total(), hi.total()});
    }
  }

  // Contract regular pass-through leaves.
  std::vector<bool> alive(g.nodes.size(), true);
  std::vector<bool> edge_alive(g.edges.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
      if (!alive[v] || g.nodes[v].kind != ReebNodeKind::Regular) continue;
      std::vector<int> in;
      std::vector<int> out;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (!edge_alive[e]) continue;
        if (g.edges[e].to == static_cast<int>(v)) in.push_back(static_cast<int>(e));
        if (g.edges[e].from == static_cast<int>(v)) out.push_back(static_cast<int>(e));
      }
      if (in.size() != 1 || out.size() != 1) continue;
      if (in[0] == out[0]) {
        g.nodes[v].kind = ReebNodeKind::Marker;
        continue;
      }
      const ReebEdge a = g.edges[in[0]];
      const ReebEdge b = g.edges[out[0]];
      edge_alive[in[0]] = false;
      edge_alive[out[0]] = false;
      alive[v] = false;
      g.edges.push_back({a.from, b.to, a.lo, a.lo + (a.hi - a.lo) + (b.hi - b.lo)});
      edge_alive.push_back(true);
      changed = true;
    }
  }

  ReebGraph out;
  out.mode = g.mode;
  std::vector<int> renumber(g.nodes.size(), -1);
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    if (!alive[v]) continue;
    renumber[v] = static_cast<int>(out.nodes.size());
    ReebNode node = g.nodes[v];
    node.id = renumber[v];
    out.nodes.push_back(std::move(node));
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!edge_alive[e]) continue;
    ReebEdge edge = g.edges[e];
    edge.from = renumber[edge.from];
    edge.to = renumber[edge.to];
    out.edges.push_back(edge);
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const ReebEdge& a, const ReebEdge& b) {
    return std::tie(a.from, a.to, a.lo, a.hi) < std::tie(b.from, b.to, b.lo, b.hi);
  });
  return out;
}

GraphShape graph_shape(const ReebGraph& graph) {
  const int v = static_cast<int>(graph.nodes.size());
  const int e = static_cast<int>(graph.edges.size());
  if (v == 0) return GraphShape::Other;
  UnionFind uf(v);
  for (const auto& edge : graph.edges) uf.unite(edge.from, edge.to);
  for (int i = 0; i < v; ++i) {
    if (uf.find(i) != uf.find(0)) return GraphShape::Other;
  }
  int max_degree = 0;
  bool all_two = true;
  for (int i = 0; i < v; ++i) {
    const int d = graph.degree(i);
    max_degree = std::max(max_degree, d);
    all_two = all_two && d == 2;
  }
  if (e == v - 1 && max_degree <= 2) return GraphShape::PathGraph;
  if (all_two) return GraphShape::CycleGraph;
  return GraphShape::Other;
}

}  // namespace mbstab

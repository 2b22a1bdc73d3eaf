#include "mbstab/catalog.hpp"
#include "mbstab/reeb.hpp"
#include "mbstab/stabilizer.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace mbstab;

namespace {

/// Components of the level set {f = c} (mod 1 for circle-valued fields),
/// counted by joining crossing edges through the triangles that contain them.
int level_components(const SurfaceMesh& mesh, const Field& field, double c) {
  const int ne = mesh.edge_count();
  std::vector<int> parent(static_cast<std::size_t>(ne));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto crosses = [&](int u, int v) {
    const double a = field.value(u);
    const double b = a + field.lifted_difference(u, v);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    if (field.mode() == FieldMode::RealValued) return lo < c && c < hi;
    const double k = std::ceil(lo - c);
    return c + k > lo && c + k < hi;
  };
  std::vector<bool> crossing(static_cast<std::size_t>(ne), false);
  for (int e = 0; e < ne; ++e) crossing[e] = crosses(mesh.edges()[e].first, mesh.edges()[e].second);
  for (const auto& t : mesh.triangles()) {
    std::vector<int> hit;
    for (int k = 0; k < 3; ++k) {
      const int e = *mesh.edge_index(t[k], t[(k + 1) % 3]);
      if (crossing[e]) hit.push_back(e);
    }
    REQUIRE(hit.size() % 2 == 0);
    if (hit.size() == 2) parent[find(hit[0])] = find(hit[1]);
  }
  std::set<int> roots;
  for (int e = 0; e < ne; ++e) {
    if (crossing[e]) roots.insert(find(e));
  }
  return static_cast<int>(roots.size());
}

/// Reeb edges whose open value interval contains c (or a lift of c).
int edges_over(const ReebGraph& g, double c) {
  int n = 0;
  for (const auto& e : g.edges) {
    for (int k = -3; k <= 3; ++k) {
      if (g.mode == FieldMode::RealValued && k != 0) continue;
      if (e.lo < c + k && c + k < e.hi) ++n;
    }
  }
  return n;
}

std::vector<double> regular_levels(const Field& field) {
  std::vector<double> v = field.values();
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) out.push_back(0.5 * (v[i] + v[i + 1]));
  if (field.mode() == FieldMode::CircleValued) {
    const double wrap = 0.5 * (v.back() + v.front() + 1.0);
    out.push_back(wrap >= 1.0 ? wrap - 1.0 : wrap);
  }
  return out;
}

ReebGraph graph_of(const MeshData& m, std::optional<double> cut = std::nullopt) {
  return reeb_graph(m.mesh, m.field, m.surface, critical_inventory(m.mesh, m.field), cut);
}

/// Circle-valued torus: f = x + sin(2 pi x)/(2 pi) with the column x = 1/2 as an odd critical circle.
MeshData inflection_torus() {
  const int nx = 8;
  const int ny = 6;
  MeshData m;
  m.mesh = testing::torus_grid(nx, ny);
  std::vector<int> column;
  for (int j = 0; j < ny; ++j) column.push_back(j * nx + nx / 2);
  m.field = testing::circle_field_from_lift(
      nx, ny,
      [&](int i, int j) {
        const double x = static_cast<double>(i) / nx;
        if (2 * i == nx) return 0.5;
        return x + std::sin(2.0 * M_PI * x) / (2.0 * M_PI) + 1e-3 * j / ny;
      },
      {column});
  m.surface = validate_mesh(m.mesh);
  validate_field(m.mesh, m.field, m.surface);
  return m;
}

}  // namespace

TEST_SUITE("reeb") {
  TEST_CASE("level components match the graph on every bundled mesh") {
    for (const auto& info : catalog()) {
      CAPTURE(info.name);
      const MeshData m = catalog_mesh(info.name);
      const ReebGraph g = graph_of(m);
      for (double c : regular_levels(m.field)) {
        CAPTURE(c);
        CHECK(edges_over(g, c) == level_components(m.mesh, m.field, c));
      }
    }
  }

  TEST_CASE("sphere height is a path with two nodes") {
    const ReebGraph g = graph_of(catalog_mesh("sphere_height"));
    CHECK(g.nodes.size() == 2);
    CHECK(g.edges.size() == 1);
    CHECK(graph_shape(g) == GraphShape::PathGraph);
  }

  TEST_CASE("torus height has a two-edge cycle between the saddles") {
    const MeshData m = catalog_mesh("torus_height");
    const ReebGraph g = graph_of(m);
    CHECK(g.nodes.size() == 4);
    CHECK(g.edges.size() == 4);
    CHECK(graph_shape(g) == GraphShape::Other);
    CHECK(g.first_betti_number() == 1);
    std::vector<int> saddles;
    for (const auto& n : g.nodes) {
      if (g.degree(n.id) == 3) saddles.push_back(n.id);
    }
    REQUIRE(saddles.size() == 2);
    int between = 0;
    for (const auto& e : g.edges) {
      if (std::set<int>{e.from, e.to} == std::set<int>{saddles[0], saddles[1]}) ++between;
    }
    CHECK(between == 2);
  }

  TEST_CASE("torus zn is a cycle on a marker node") {
    const ReebGraph g = graph_of(catalog_mesh("torus_zn"));
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.nodes[0].kind == ReebNodeKind::Marker);
    CHECK(g.edges.size() == 1);
    CHECK(graph_shape(g) == GraphShape::CycleGraph);
  }

  TEST_CASE("cut fiber does not change circle-valued graphs") {
    for (const MeshData& m : {catalog_mesh("torus_zn"), inflection_torus()}) {
      const ReebGraph ref = graph_of(m);
      for (double cut : {0.13, 0.41, 0.77}) {
        const ReebGraph g = graph_of(m, cut);
        CHECK(graph_shape(g) == graph_shape(ref));
        CHECK(g.first_betti_number() == ref.first_betti_number());
        CHECK(g.edges.size() - g.nodes.size() == ref.edges.size() - ref.nodes.size());
        std::multiset<ReebNodeKind> a;
        std::multiset<ReebNodeKind> b;
        for (const auto& n : g.nodes) a.insert(n.kind);
        for (const auto& n : ref.nodes) b.insert(n.kind);
        a.erase(ReebNodeKind::Marker);
        b.erase(ReebNodeKind::Marker);
        CHECK(a == b);
      }
    }
  }

  TEST_CASE("circle-valued field with an odd critical circle") {
    const MeshData m = inflection_torus();
    const auto inv = critical_inventory(m.mesh, m.field);
    REQUIRE(inv.circles.size() == 1);
    CHECK(inv.circles[0].parity == Parity::Odd);
    const ReebGraph g = graph_of(m);
    CHECK(graph_shape(g) == GraphShape::CycleGraph);
    for (double c : regular_levels(m.field)) CHECK(edges_over(g, c) == level_components(m.mesh, m.field, c));
    const Report r = analyze(m.mesh, m.field);
    REQUIRE(r.catalog);
    CHECK(r.catalog->item == CatalogItem::TorusCircle);
  }

  TEST_CASE("critical nodes and value intervals") {
    for (const auto& info : catalog()) {
      CAPTURE(info.name);
      const MeshData m = catalog_mesh(info.name);
      const auto inv = critical_inventory(m.mesh, m.field);
      const ReebGraph g = graph_of(m);
      if (m.field.mode() == FieldMode::RealValued) {
        int constant = 0;
        for (bool b : constant_boundaries(m.field, m.surface)) constant += b ? 1 : 0;
        int critical = 0;
        for (const auto& n : g.nodes) critical += n.kind == ReebNodeKind::Critical ? 1 : 0;
        CHECK(critical == static_cast<int>(inv.isolated.size() + inv.circles.size()) + constant);
        for (const auto& e : g.edges) {
          CHECK(e.lo < e.hi);
          CHECK(g.nodes[e.from].value == e.lo);
          CHECK(g.nodes[e.to].value == e.hi);
        }
      }
      if (m.surface.orientable) {
        const int genus = (2 - m.surface.euler_characteristic - m.surface.boundary_components) / 2;
        CHECK(g.first_betti_number() <= genus);
      }
    }
  }

  TEST_CASE("svg drawing") {
    const std::string svg = reeb_svg(graph_of(catalog_mesh("torus_height")));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
  }
}

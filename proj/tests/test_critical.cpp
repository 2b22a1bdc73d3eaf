#include "mbstab/catalog.hpp"
#include "mbstab/critical.hpp"
#include "mbstab/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace mbstab;

namespace {

int star_profile(int n, const std::function<double(Vec2)>& f, double centre) {
  const auto s = testing::star(n);
  std::vector<double> values{centre};
  for (const Vec2& p : s.ring) values.push_back(f(p));
  return link_profile(s.mesh, Field(FieldMode::RealValued, values), 0);
}

std::multiset<std::pair<int, int>> isolated_signature(const CriticalStructure& s) {
  std::multiset<std::pair<int, int>> out;
  for (const auto& c : s.isolated) out.insert({c.cls.separatrix_count, c.extremum_sign});
  return out;
}

}  // namespace

TEST_SUITE("critical") {
  TEST_CASE("link profiles") {
    CHECK(star_profile(8, [](Vec2 p) { return -(p[0] * p[0] + p[1] * p[1]); }, 0.0) == 0);
    CHECK(star_profile(8, [](Vec2 p) { return p[0] + 0.3 * p[1]; }, 0.0) == 2);
    const BinaryForm monkey = testing::form({1, 0, -3, 0});
    const int changes = star_profile(12, [&](Vec2 p) { return monkey.evaluate(p); }, 0.0);
    CHECK(changes == classify_singularity(monkey).separatrix_count);
    CHECK(changes == 6);
  }

  TEST_CASE("boundary vertices are rejected by link_profile") {
    const auto s = testing::star(6);
    CHECK_THROWS_AS(link_profile(s.mesh, Field(FieldMode::RealValued, {0, 1, 2, 3, 4, 5, 6}), 1), ValidationError);
  }

  TEST_CASE("inventories of the catalog") {
    const auto sphere = critical_inventory(catalog_mesh("sphere_height").mesh, catalog_mesh("sphere_height").field);
    CHECK(sphere.isolated.size() == 2);
    CHECK(sphere.circles.empty());
    CHECK_FALSE(has_saddle(sphere));

    const MeshData torus = catalog_mesh("torus_height");
    const auto t = critical_inventory(torus.mesh, torus.field);
    CHECK(isolated_signature(t) == std::multiset<std::pair<int, int>>{{0, -1}, {0, 1}, {4, 0}, {4, 0}});
    CHECK(t.circles.empty());
    CHECK(has_saddle(t));
    CHECK(poincare_hopf_sum(t) == torus.surface.euler_characteristic);

    const MeshData ann = catalog_mesh("annulus_radial");
    const auto a = critical_inventory(ann.mesh, ann.field);
    CHECK(a.isolated.empty());
    REQUIRE(a.circles.size() == 1);
    CHECK(a.circles[0].parity == Parity::Even);
    CHECK_FALSE(has_saddle(a));
  }

  TEST_CASE("circle parity and collars") {
    const MeshData waist = catalog_mesh("sphere_waist");
    const auto w = critical_inventory(waist.mesh, waist.field);
    REQUIRE(w.circles.size() == 1);
    CHECK(w.circles[0].parity == Parity::Even);
    CHECK(w.circles[0].side_signs == std::vector<int>{-1, -1});

    const MeshData odd = catalog_mesh("annulus_odd");
    const auto o = critical_inventory(odd.mesh, odd.field);
    REQUIRE(o.circles.size() == 1);
    CHECK(o.circles[0].parity == Parity::Odd);

    for (const char* name : {"klein", "mobius"}) {
      const MeshData m = catalog_mesh(name);
      for (const auto& c : critical_inventory(m.mesh, m.field).circles) {
        CHECK_FALSE(c.collar_orientable);
        CHECK(c.side_signs.size() == 1);
      }
    }
  }

  TEST_CASE("stored side signs agree with parity") {
    for (const auto& info : catalog()) {
      const MeshData m = catalog_mesh(info.name);
      for (const auto& c : critical_inventory(m.mesh, m.field).circles) {
        if (c.side_signs.size() != 2) continue;
        CHECK((c.parity == Parity::Even) == (c.side_signs[0] == c.side_signs[1]));
      }
    }
  }

  TEST_CASE("poincare-hopf on closed orientable meshes without circles") {
    for (const char* name : {"octahedron", "sphere_height", "torus_height"}) {
      const MeshData m = catalog_mesh(name);
      CHECK(poincare_hopf_sum(critical_inventory(m.mesh, m.field)) == m.surface.euler_characteristic);
    }
  }

  TEST_CASE("inventory is invariant under relabeling") {
    std::mt19937_64 rng(3);
    for (const char* name : {"torus_height", "annulus_odd", "klein", "torus_zn"}) {
      const MeshData m = catalog_mesh(name);
      std::vector<int> perm(static_cast<std::size_t>(m.mesh.vertex_count()));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto a = critical_inventory(m.mesh, m.field);
      const auto b = critical_inventory(m.mesh.relabeled(perm), m.field.relabeled(perm));
      CHECK(isolated_signature(a) == isolated_signature(b));
      std::set<int> va;
      std::set<int> vb;
      for (const auto& c : a.isolated) va.insert(perm[c.vertex]);
      for (const auto& c : b.isolated) vb.insert(c.vertex);
      CHECK(va == vb);
      REQUIRE(a.circles.size() == b.circles.size());
      for (std::size_t i = 0; i < a.circles.size(); ++i) {
        CHECK(a.circles[i].parity == b.circles[i].parity);
        CHECK(a.circles[i].collar_orientable == b.circles[i].collar_orientable);
      }
    }
  }

  TEST_CASE("plateau errors") {
    const MeshData ann = catalog_mesh("annulus_radial");
    auto plateau = ann.field.plateaus()[0];
    std::vector<std::vector<int>> bad = {{plateau[0], plateau[1]}};
    CHECK_THROWS_AS(detect_plateaus(ann.mesh, Field(FieldMode::RealValued, ann.field.values(), {}, bad)),
                    ValidationError);
    std::vector<int> skip(plateau.begin(), plateau.end());
    std::swap(skip[1], skip[2]);
    CHECK_THROWS_AS(detect_plateaus(ann.mesh, Field(FieldMode::RealValued, ann.field.values(), {}, {skip})),
                    ValidationError);
  }
}

#include "mbstab/catalog.hpp"
#include "mbstab/error.hpp"
#include "mbstab/report.hpp"
#include "mbstab/stabilizer.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace mbstab;

TEST_SUITE("stabilizer") {
  TEST_CASE("verdicts") {
    const auto verdict = [](const char* name) { return analyze(catalog_mesh(name).mesh, catalog_mesh(name).field).verdict; };
    const Verdict torus = verdict("torus_height");
    CHECK(torus.kind == VerdictKind::Contractible);
    CHECK(torus.reason == VerdictReason::SaddleFound);
    CHECK(torus.saddle_vertex.has_value());
    CHECK(verdict("klein") == Verdict{VerdictKind::Contractible, VerdictReason::NonOrientable, std::nullopt});
    CHECK(verdict("mobius").kind == VerdictKind::Contractible);
    CHECK(verdict("annulus_radial").kind == VerdictKind::CircleEquivalent);
    CHECK(verdict("torus_zn").kind == VerdictKind::CircleEquivalent);
  }

  TEST_CASE("catalog items") {
    struct Want {
      const char* name;
      CatalogItem item;
    };
    for (const Want w : {Want{"annulus_radial", CatalogItem::Cylinder}, Want{"annulus_odd", CatalogItem::Cylinder},
                         Want{"disk_radial", CatalogItem::Disk}, Want{"octahedron", CatalogItem::Sphere},
                         Want{"sphere_height", CatalogItem::Sphere}, Want{"sphere_waist", CatalogItem::Sphere},
                         Want{"torus_circles", CatalogItem::TorusReal}, Want{"torus_zn", CatalogItem::TorusCircle}}) {
      CAPTURE(w.name);
      const MeshData m = catalog_mesh(w.name);
      const Report r = analyze(m.mesh, m.field);
      REQUIRE(r.catalog.has_value());
      CHECK(r.catalog->item == w.item);
      CHECK(r.catalog->circle_count == static_cast<int>(r.structure.circles.size()));
    }
    const MeshData torus = catalog_mesh("torus_height");
    const Report r = analyze(torus.mesh, torus.field);
    CHECK_FALSE(catalog_match(r.surface, r.structure, r.shape, FieldMode::RealValued).has_value());
  }

  TEST_CASE("catalog match needs a saddle-free orientable surface") {
    for (const auto& info : catalog()) {
      const MeshData m = catalog_mesh(info.name);
      const Report r = analyze(m.mesh, m.field);
      const bool eligible = !has_saddle(r.structure) && r.surface.orientable;
      CAPTURE(info.name);
      CHECK(r.catalog.has_value() == eligible);
    }
  }

  TEST_CASE("verdict survives relabeling and rescaling") {
    std::mt19937_64 rng(5);
    for (const auto& info : catalog()) {
      const MeshData m = catalog_mesh(info.name);
      const Verdict ref = analyze(m.mesh, m.field).verdict;
      std::vector<int> perm(static_cast<std::size_t>(m.mesh.vertex_count()));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const Verdict permuted = analyze(m.mesh.relabeled(perm), m.field.relabeled(perm)).verdict;
      CHECK(permuted.kind == ref.kind);
      CHECK(permuted.reason == ref.reason);
      if (m.field.mode() == FieldMode::RealValued) {
        CHECK(analyze(m.mesh, m.field.rescaled(3.5)).verdict == ref);
      }
    }
  }

  TEST_CASE("errors carry the stage") {
    const MeshData m = catalog_mesh("octahedron");
    std::vector<double> tied = m.field.values();
    tied[1] = tied[0];
    try {
      analyze(m.mesh, Field(FieldMode::RealValued, tied));
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(e.stage() == "field");
    }
    try {
      analyze(SurfaceMesh(6, {{0, 1, 2}, {3, 4, 5}}), Field(FieldMode::RealValued, {0, 1, 2, 3, 4, 5}));
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(e.stage() == "mesh");
    }
  }

  TEST_CASE("reports are pure functions of the input") {
    const MeshData m = catalog_mesh("torus_height");
    const Provenance p{sha256_hex(dump_mesh(m.mesh, m.field)), 0};
    const std::string a = dump_report(envelope("analysis", analysis_json(analyze(m.mesh, m.field)), p));
    const std::string b = dump_report(envelope("analysis", analysis_json(analyze(m.mesh, m.field)), p));
    CHECK(a == b);
    CHECK(dump_report(Json::parse(a)) == a);
  }
}

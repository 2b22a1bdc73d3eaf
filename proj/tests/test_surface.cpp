#include "mbstab/catalog.hpp"
#include "mbstab/error.hpp"
#include "mbstab/mesh_io.hpp"
#include "mbstab/surface.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>

using namespace mbstab;

TEST_SUITE("surface") {
  TEST_CASE("catalog surfaces") {
    struct Want {
      const char* name;
      bool orientable;
      int chi;
      int boundaries;
    };
    for (const Want w : {Want{"octahedron", true, 2, 0}, Want{"sphere_height", true, 2, 0},
                         Want{"torus_height", true, 0, 0}, Want{"torus_circles", true, 0, 0},
                         Want{"disk_radial", true, 1, 1}, Want{"annulus_radial", true, 0, 2},
                         Want{"mobius", false, 0, 1}, Want{"klein", false, 0, 0}}) {
      CAPTURE(w.name);
      const SurfaceClass s = catalog_mesh(w.name).surface;
      CHECK(s.orientable == w.orientable);
      CHECK(s.euler_characteristic == w.chi);
      CHECK(s.boundary_components == w.boundaries);
    }
    CHECK(catalog_mesh("klein").surface.name() == "Klein bottle");
    CHECK(catalog_mesh("mobius").surface.name() == "Mobius band");
  }

  TEST_CASE("flat 8x8 torus") {
    const SurfaceClass s = validate_mesh(testing::torus_grid(8, 8));
    CHECK(s.orientable);
    CHECK(s.euler_characteristic == 0);
    CHECK(s.boundary_components == 0);
  }

  TEST_CASE("orientability does not depend on the start triangle") {
    std::mt19937_64 rng(11);
    for (const char* name : {"torus_height", "mobius", "klein", "sphere_waist"}) {
      const MeshData m = catalog_mesh(name);
      std::uniform_int_distribution<int> pick(0, m.mesh.triangle_count() - 1);
      for (int k = 0; k < 10; ++k) {
        const SurfaceClass s = validate_mesh(m.mesh, pick(rng));
        CHECK(s.orientable == m.surface.orientable);
        CHECK(s.euler_characteristic == m.surface.euler_characteristic);
      }
    }
  }

  TEST_CASE("non-manifold edge and disconnected meshes") {
    const SurfaceMesh fin(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    CHECK_THROWS_WITH_AS(validate_mesh(fin), doctest::Contains("non-manifold"), ValidationError);
    const SurfaceMesh two(6, {{0, 1, 2}, {3, 4, 5}});
    CHECK_THROWS_WITH_AS(validate_mesh(two), "surface is disconnected", ValidationError);
    // Two fans glued at a vertex: manifold edges but a pinched vertex.
    const SurfaceMesh bowtie(5, {{0, 1, 2}, {0, 3, 4}});
    CHECK_THROWS_WITH_AS(validate_mesh(bowtie), doctest::Contains("non-manifold vertex 0"), ValidationError);
  }

  TEST_CASE("lifted differences") {
    const SurfaceMesh tri(3, {{0, 1, 2}});
    const Field real(FieldMode::RealValued, {0.2, 0.7, 0.4});
    CHECK(lifted_difference(tri, real, 0, 1) == doctest::Approx(0.5));
    const Field circ(FieldMode::CircleValued, {0.9, 0.1, 0.5}, {{{0, 1}, 1}, {{1, 2}, 0}, {{0, 2}, 1}});
    CHECK(lifted_difference(tri, circ, 0, 1) == doctest::Approx(0.2));
    CHECK(lifted_difference(tri, circ, 1, 0) == doctest::Approx(-0.2));
    const double loop = lifted_difference(tri, circ, 0, 1) + lifted_difference(tri, circ, 1, 2) +
                        lifted_difference(tri, circ, 2, 0);
    CHECK(loop == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_WITH_AS(lifted_difference(SurfaceMesh(4, {{0, 1, 2}, {1, 2, 3}}), Field(FieldMode::RealValued, {0, 1, 2, 3}), 0, 3),
                         doctest::Contains("unknown edge"), ValidationError);
  }

  TEST_CASE("field validation") {
    const MeshData torus = catalog_mesh("torus_zn");
    auto windings = torus.field.windings();
    windings.begin()->second += 1;
    const Field broken(FieldMode::CircleValued, torus.field.values(), windings);
    CHECK_THROWS_WITH_AS(validate_field(torus.mesh, broken, torus.surface), doctest::Contains("not a circle map"),
                         ValidationError);
    std::vector<double> tied = catalog_mesh("octahedron").field.values();
    tied[1] = tied[0];
    const MeshData oct = catalog_mesh("octahedron");
    CHECK_THROWS_WITH_AS(validate_field(oct.mesh, Field(FieldMode::RealValued, tied), oct.surface),
                         doctest::Contains("general position violated"), ValidationError);
    // A disk whose boundary is neither constant nor monotone.
    const MeshData disk = catalog_mesh("disk_radial");
    std::vector<double> wobble = disk.field.values();
    for (int v = 0; v < disk.mesh.vertex_count(); ++v) {
      if (disk.mesh.is_boundary_vertex(v)) wobble[v] += 1e-3 * (v % 2);
    }
    CHECK_THROWS_WITH_AS(validate_field(disk.mesh, Field(FieldMode::RealValued, wobble), disk.surface),
                         doctest::Contains("neither constant nor a covering map"), ValidationError);
  }

  TEST_CASE("mesh files") {
    CHECK_THROWS_WITH_AS(parse_mesh(R"({"vertices": 5, "triangles": [[0,1,2],[0,1,3],[0,1,4]], "values": [0,1,2,3,4]})"),
                         doctest::Contains("non-manifold"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_mesh("{\n  \"vertices\": 3,\n  \"triangles\": [[0,1,2]\n"),
                         doctest::Contains("malformed JSON at line"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_mesh(R"({"vertices": 3, "triangles": [[0,1,2]], "mode": "circle",
                                       "values": [0.1, 0.2, 0.3], "windings": {"0,1": 1}})"),
                         doctest::Contains("not a circle map"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_mesh(R"({"vertices": 3, "triangles": [[0,1,2],[0,1]], "values": [0,1,2]})"),
                         doctest::Contains("triangles[1]"), ValidationError);
  }

  TEST_CASE("save and load round trip") {
    const MeshData torus = catalog_mesh("torus_zn");
    const std::string text = dump_mesh(torus.mesh, torus.field);
    const MeshData back = parse_mesh(text);
    CHECK(back.field == torus.field);
    CHECK(back.mesh.triangles() == torus.mesh.triangles());
    CHECK(dump_mesh(back.mesh, back.field) == text);
    const auto path = std::filesystem::temp_directory_path() / "mbstab_roundtrip.json";
    save_mesh(path, torus.mesh, torus.field);
    CHECK(load_mesh(path).field == torus.field);
    std::filesystem::remove(path);
  }
}

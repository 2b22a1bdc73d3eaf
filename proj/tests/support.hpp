#pragma once

#include "mbstab/binary_forms.hpp"
#include "mbstab/surface.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace testing {

using namespace mbstab;

inline BinaryForm form(std::initializer_list<int> c) {
  std::vector<Rational> q;
  for (int x : c) q.emplace_back(x);
  return BinaryForm(std::move(q));
}

/// Random square-free form of degree d with integer coefficients in [-5, 5].
inline BinaryForm random_square_free(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> coef(-5, 5);
  while (true) {
    std::vector<Rational> c;
    bool nonzero = false;
    for (int i = 0; i <= d; ++i) {
      c.emplace_back(coef(rng));
      nonzero = nonzero || c.back() != 0;
    }
    if (!nonzero) continue;
    BinaryForm f(std::move(c));
    if (is_square_free(f)) return f;
  }
}

/// Star of vertex 0 over a ring of n vertices at angles (k + 1/2) 2 pi / n.
struct Star {
  SurfaceMesh mesh;
  std::vector<Vec2> ring;
};

inline Star star(int n) {
  Star s;
  std::vector<Triangle> tris;
  for (int k = 0; k < n; ++k) {
    tris.push_back({0, 1 + k, 1 + (k + 1) % n});
    const double a = 2.0 * M_PI * (k + 0.5) / n;
    s.ring.push_back({std::cos(a), std::sin(a)});
  }
  s.mesh = SurfaceMesh(n + 1, std::move(tris));
  return s;
}

/// Flat torus grid nx x ny with quads split along (i,j)-(i+1,j+1).
inline SurfaceMesh torus_grid(int nx, int ny) {
  auto id = [&](int i, int j) { return ((j + ny) % ny) * nx + (i + nx) % nx; };
  std::vector<Triangle> tris;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return SurfaceMesh(nx * ny, std::move(tris));
}

/// Circle-valued field on torus_grid from a lift L(i, j) whose increments
/// across one cell are below 1/2; windings are read off the lift.
inline Field circle_field_from_lift(int nx, int ny,
                                    const std::function<double(int, int)>& lift,
                                    std::vector<std::vector<int>> plateaus = {}) {
  std::vector<double> values(static_cast<std::size_t>(nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double x = lift(i, j);
      values[static_cast<std::size_t>(j * nx + i)] = x - std::floor(x);
    }
  }
  std::map<EdgeKey, int> windings;
  auto id = [&](int i, int j) { return ((j + ny) % ny) * nx + (i + nx) % nx; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int cell[4][2] = {{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}};
      for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}, std::pair{2, 3}, std::pair{0, 3}}) {
        const int u = id(cell[a][0], cell[a][1]);
        const int v = id(cell[b][0], cell[b][1]);
        const double want = lift(cell[b][0], cell[b][1]) - lift(cell[a][0], cell[a][1]);
        const int w = static_cast<int>(std::lround(want - (values[v] - values[u])));
        if (w == 0) continue;
        if (u < v) {
          windings[{u, v}] = w;
        } else {
          windings[{v, u}] = -w;
        }
      }
    }
  }
  return Field(FieldMode::CircleValued, std::move(values), std::move(windings), std::move(plateaus));
}

}  // namespace testing

#include "mbstab/catalog.hpp"

#include "mbstab/error.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace mbstab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Built {
  int vertex_count = 0;
  std::vector<Triangle> triangles;
  FieldMode mode = FieldMode::RealValued;
  std::vector<double> values;
  std::map<EdgeKey, int> windings;
  std::vector<std::vector<int>> plateaus;
};

/// Rectangular grid i in [0, nx), j in [0, rows). The seam i = nx is glued to
/// i = 0, with j reflected when `flip` is set (Mobius, Klein). With `wrap_j`
/// row j = rows is glued to row 0.
class Grid {
 public:
  Grid(int nx, int rows, bool wrap_j, bool flip) : nx_(nx), rows_(rows), wrap_j_(wrap_j), flip_(flip) {}

  int count() const { return nx_ * rows_; }

  int id(int i, int j) const {
    if (wrap_j_) j = ((j % rows_) + rows_) % rows_;
    if (i == nx_) {
      i = 0;
      if (flip_) j = wrap_j_ ? (rows_ - j) % rows_ : rows_ - 1 - j;
    }
    return j * nx_ + i;
  }

  /// Quads (i,j)-(i+1,j+1) split along the diagonal.
  void quads(std::vector<Triangle>& out, int offset = 0) const {
    const int last = wrap_j_ ? rows_ : rows_ - 1;
    for (int j = 0; j < last; ++j) {
      for (int i = 0; i < nx_; ++i) {
        const int a = offset + id(i, j);
        const int b = offset + id(i + 1, j);
        const int c = offset + id(i + 1, j + 1);
        const int d = offset + id(i, j + 1);
        out.push_back({a, b, c});
        out.push_back({a, c, d});
      }
    }
  }

  std::vector<int> row(int j, int offset = 0) const {
    std::vector<int> r;
    for (int i = 0; i < nx_; ++i) r.push_back(offset + id(i, j));
    return r;
  }

  int nx() const { return nx_; }
  int rows() const { return rows_; }

 private:
  int nx_;
  int rows_;
  bool wrap_j_;
  bool flip_;
};

/// Sweep offsets break ties along rows without creating new critical points:
/// each row is monotone in i except for one drop at the seam.
double sweep(int i, int nx, double scale) { return scale * i / nx; }

/// Cap with a pole joined to ring `ring` (row indices from `grid`).
void cap(std::vector<Triangle>& tris, const std::vector<int>& ring, int pole, bool reversed) {
  const int n = static_cast<int>(ring.size());
  for (int i = 0; i < n; ++i) {
    const int a = ring[i];
    const int b = ring[(i + 1) % n];
    tris.push_back(reversed ? Triangle{pole, b, a} : Triangle{pole, a, b});
  }
}

/// Latitude sphere: rows j = 0..rows-1 at polar angle pi (j+1)/(rows+1), poles last.
Built latitude_sphere(int nx, int rows, const std::function<double(double, int)>& f, std::vector<int> plateau_rows) {
  Grid g(nx, rows, false, false);
  Built b;
  b.vertex_count = g.count() + 2;
  g.quads(b.triangles);
  const int south = g.count();
  const int north = g.count() + 1;
  cap(b.triangles, g.row(0), south, true);
  cap(b.triangles, g.row(rows - 1), north, false);
  b.values.resize(static_cast<std::size_t>(b.vertex_count));
  for (int j = 0; j < rows; ++j) {
    const double z = -std::cos(kPi * (j + 1) / (rows + 1));
    for (int i = 0; i < nx; ++i) b.values[static_cast<std::size_t>(g.id(i, j))] = f(z, i);
  }
  b.values[static_cast<std::size_t>(south)] = f(-1.0, -1);
  b.values[static_cast<std::size_t>(north)] = f(1.0, -1);
  for (int j : plateau_rows) b.plateaus.push_back(g.row(j));
  return b;
}

Built octahedron() {
  Built b;
  b.vertex_count = 6;
  // 0..3 equator, 4 south, 5 north.
  for (int i = 0; i < 4; ++i) {
    b.triangles.push_back({5, i, (i + 1) % 4});
    b.triangles.push_back({4, (i + 1) % 4, i});
  }
  b.values = {0.1, 0.2, 0.3, 0.4, -1.0, 1.0};
  return b;
}

Built sphere_height() {
  return latitude_sphere(12, 7, [](double z, int i) { return i < 0 ? z : z + sweep(i, 12, 1e-3); }, {});
}

Built sphere_waist() {
  // f = -z^2: minima at the poles and a maximum circle on the equator (row 3 of 7).
  return latitude_sphere(
      12, 7,
      [](double z, int i) {
        if (i < 0) return -1.0;
        if (std::abs(z) < 1e-12) return 0.0;
        return -z * z + sweep(i, 12, 1e-3);
      },
      {3});
}

Built torus_height() {
  // Standing torus, height = (R + r cos v) cos u, sampled off the symmetry axes.
  const int nx = 16;
  const int ny = 12;
  Grid g(nx, ny, true, false);
  Built b;
  b.vertex_count = g.count();
  g.quads(b.triangles);
  b.values.resize(static_cast<std::size_t>(g.count()));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double u = 2.0 * kPi * (i + 0.25) / nx;
      const double v = 2.0 * kPi * (j + 0.125) / ny;
      b.values[static_cast<std::size_t>(g.id(i, j))] = (2.0 + std::cos(v)) * std::cos(u) + 1e-6 * (j * nx + i);
    }
  }
  return b;
}

/// cos(2 pi y) on the flat torus (or Klein bottle when flipped), with the
/// rows y = 0 and y = 1/2 declared as plateaus.
Built cos_rows(int nx, int ny, bool flip) {
  Grid g(nx, ny, true, flip);
  Built b;
  b.vertex_count = g.count();
  g.quads(b.triangles);
  b.values.resize(static_cast<std::size_t>(g.count()));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const bool plateau = j == 0 || 2 * j == ny;
      b.values[static_cast<std::size_t>(g.id(i, j))] =
          std::cos(2.0 * kPi * j / ny) + (plateau ? 0.0 : sweep(i, nx, 1e-2));
    }
  }
  b.plateaus = {g.row(0), g.row(ny / 2)};
  return b;
}

Built torus_zn(int n) {
  // f = n x mod 1 with a small sweep along y.
  const int nx = 8;
  const int ny = 6;
  Grid g(nx, ny, true, false);
  Built b;
  b.mode = FieldMode::CircleValued;
  b.vertex_count = g.count();
  g.quads(b.triangles);
  b.values.resize(static_cast<std::size_t>(g.count()));
  auto lift = [&](int i, int j) { return static_cast<double>(n) * i / nx + 1e-3 * j / ny; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double x = lift(i, j);
      b.values[static_cast<std::size_t>(g.id(i, j))] = x - std::floor(x);
    }
  }
  // Windings make each lifted edge difference equal to the unwrapped one up to the y sweep.
  const int last = ny;
  for (int j = 0; j < last; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int corners[4][2] = {{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}};
      for (int a = 0; a < 4; ++a) {
        for (int c = a + 1; c < 4; ++c) {
          if (a == 1 && c == 3) continue;  // not an edge of the split quad
          const int u = g.id(corners[a][0], corners[a][1]);
          const int v = g.id(corners[c][0], corners[c][1]);
          const double intended = static_cast<double>(n) * (corners[c][0] - corners[a][0]) / nx;
          const double raw = b.values[static_cast<std::size_t>(v)] - b.values[static_cast<std::size_t>(u)];
          const int w = static_cast<int>(std::lround(intended - raw));
          const EdgeKey key = u < v ? EdgeKey{u, v} : EdgeKey{v, u};
          if (w != 0) b.windings[key] = u < v ? w : -w;
        }
      }
    }
  }
  return b;
}

/// Annulus 1 <= r <= 2 with rings k = 0..rings-1; the middle ring is a plateau.
Built annulus(int nx, int rings, const std::function<double(double)>& f) {
  Grid g(nx, rings, false, false);
  Built b;
  b.vertex_count = g.count();
  g.quads(b.triangles);
  b.values.resize(static_cast<std::size_t>(g.count()));
  const int mid = rings / 2;
  for (int k = 0; k < rings; ++k) {
    const double r = 1.0 + static_cast<double>(k) / (rings - 1);
    const bool flat = k == 0 || k == rings - 1 || k == mid;
    for (int i = 0; i < nx; ++i) {
      b.values[static_cast<std::size_t>(g.id(i, k))] = f(r) + (flat ? 0.0 : sweep(i, nx, 1e-4));
    }
  }
  b.plateaus = {g.row(mid)};
  return b;
}

Built disk_radial() {
  const int nx = 12;
  const int rings = 5;
  Grid g(nx, rings, false, false);
  Built b;
  b.vertex_count = g.count() + 1;
  g.quads(b.triangles);
  const int centre = g.count();
  cap(b.triangles, g.row(0), centre, true);
  b.values.resize(static_cast<std::size_t>(b.vertex_count));
  for (int k = 0; k < rings; ++k) {
    const double r = static_cast<double>(k + 1) / rings;
    for (int i = 0; i < nx; ++i) {
      b.values[static_cast<std::size_t>(g.id(i, k))] = r * r + (k == rings - 1 ? 0.0 : sweep(i, nx, 1e-3));
    }
  }
  b.values[static_cast<std::size_t>(centre)] = 0.0;
  return b;
}

Built mobius() {
  // [0,1] x [-1,1] with (0,y) ~ (1,-y); f = y^2, core row plateau, boundary value 1.
  const int nx = 10;
  const int rows = 7;
  Grid g(nx, rows, false, true);
  Built b;
  b.vertex_count = g.count();
  g.quads(b.triangles);
  b.values.resize(static_cast<std::size_t>(g.count()));
  for (int j = 0; j < rows; ++j) {
    const double y = -1.0 + 2.0 * j / (rows - 1);
    const bool flat = j == 0 || j == rows - 1 || 2 * j == rows - 1;
    for (int i = 0; i < nx; ++i) {
      b.values[static_cast<std::size_t>(g.id(i, j))] = y * y + (flat ? 0.0 : sweep(i, nx, 1e-2));
    }
  }
  b.plateaus = {g.row(rows / 2)};
  return b;
}

const std::map<std::string, std::function<Built()>>& builders() {
  static const std::map<std::string, std::function<Built()>> table = {
      {"octahedron", octahedron},
      {"sphere_height", sphere_height},
      {"sphere_waist", sphere_waist},
      {"torus_height", torus_height},
      {"torus_circles", [] { return cos_rows(8, 8, false); }},
      {"torus_zn", [] { return torus_zn(3); }},
      {"disk_radial", disk_radial},
      {"annulus_radial", [] { return annulus(12, 7, [](double r) { return (r - 1.5) * (r - 1.5); }); }},
      {"annulus_odd", [] { return annulus(12, 7, [](double r) { return (r - 1.5) * (r - 1.5) * (r - 1.5); }); }},
      {"mobius", mobius},
      {"klein", [] { return cos_rows(8, 8, true); }},
  };
  return table;
}

}  // namespace

const std::vector<CatalogInfo>& catalog() {
  static const std::vector<CatalogInfo> list = {
      {"octahedron", "sphere, 6 vertices, height with one minimum and one maximum"},
      {"sphere_height", "latitude sphere, height z"},
      {"sphere_waist", "latitude sphere, -z^2: two minima and an equatorial maximum circle"},
      {"torus_height", "standing torus, height: two saddles"},
      {"torus_circles", "flat torus 8x8, cos(2 pi y) with two critical circles"},
      {"torus_zn", "flat torus, circle-valued 3x"},
      {"disk_radial", "disk, x^2 + y^2 with constant boundary"},
      {"annulus_radial", "annulus, (r - 3/2)^2 with a minimum circle"},
      {"annulus_odd", "annulus, (r - 3/2)^3 with an odd critical circle"},
      {"mobius", "Mobius band, y^2 with a one-sided core circle"},
      {"klein", "Klein bottle, cos(2 pi y) with two one-sided circles"},
  };
  return list;
}

MeshData catalog_mesh(const std::string& name) {
  const auto it = builders().find(name);
  if (it == builders().end()) throw ValidationError("unknown catalog mesh '" + name + "'");
  Built b = it->second();
  MeshData out;
  out.mesh = SurfaceMesh(b.vertex_count, std::move(b.triangles));
  out.field = Field(b.mode, std::move(b.values), std::move(b.windings), std::move(b.plateaus));
  out.surface = validate_mesh(out.mesh);
  validate_field(out.mesh, out.field, out.surface);
  return out;
}

}  // namespace mbstab

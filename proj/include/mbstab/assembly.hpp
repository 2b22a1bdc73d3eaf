#pragma once

#include "mbstab/binary_forms.hpp"
#include "mbstab/class_v.hpp"
#include "mbstab/integrator.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mbstab {

enum class ModelKind { Disk, Annulus, Sphere, TorusCos, TorusZn };

struct ChartSpec {
  std::string name;
  /// Sampling lattice box.
  Box box;
  /// Chart domain.
  std::function<bool(Vec2)> inside;
  /// Part of the chart used for sampling; the primary parts of all charts cover the surface.
  std::function<bool(Vec2)> primary;
  Vec2 period{0.0, 0.0};
};

/// Isolated critical point with local coordinates q in which f = value + form(q) exactly.
struct IsolatedSpec {
  int chart = 0;
  Vec2 location{};
  double value = 0.0;
  BinaryForm form{std::vector<Rational>{1, 0, 1}};
  /// Radial change of coordinates p = location + q * s(|q|^2) with inverse
  /// q = d * s_inv(|d|^2), d = p - location. Empty functions mean the identity.
  std::function<double(double)> s;
  std::function<double(double)> ds;
  std::function<double(double)> s_inv;
};

/// Critical circle with the angular collar field in chart coordinates.
struct CircleSpec {
  int chart = 0;
  double value = 0.0;
  /// Transverse model sign * y^n.
  int sign = 1;
  int exponent = 2;
  bool collar_orientable = true;
  std::function<Vec2(Vec2)> collar_field;
};

/// Orientable chart surfaces with closed-form f per chart.
class ModelSurface {
 public:
  static ModelSurface disk();
  static ModelSurface annulus();
  static ModelSurface sphere();
  static ModelSurface torus_cos();
  static ModelSurface torus_zn(int n);
  /// disk, annulus, sphere, torus_cos, torus_zn.
  static ModelSurface by_name(const std::string& name, int n = 3);

  ModelKind kind = ModelKind::Disk;
  std::string name;
  int n = 0;
  bool circle_valued = false;
  std::vector<ChartSpec> charts;
  std::vector<IsolatedSpec> isolated;
  std::vector<CircleSpec> circles;
  std::vector<double> boundary_values;
  /// Chart used for the regular-piece Hamiltonian field.
  int regular_chart = 0;

  double f(int chart, Vec2 p) const;
  Vec2 grad(int chart, Vec2 p) const;
  /// (-f_y, f_x) for the standard area form of the chart.
  Vec2 hamiltonian(int chart, Vec2 p) const { const Vec2 g = grad(chart, p); return {-g[1], g[0]}; }
  /// Spatial label separating regular cylinders that share a value gap.
  int label(int chart, Vec2 p) const;
  /// Labels present in each gap between consecutive critical/boundary values.
  std::vector<int> gap_labels() const;

  Vec2 transition(int from, int to, Vec2 p) const;
  /// Push-forward of tangent vector v at p (chart `from`) into chart `to`.
  Vec2 push(int from, int to, Vec2 p, Vec2 v) const;

  /// Max |f_a(p) - f_b(transition(p))| on overlap samples.
  double transition_error() const;
};

enum class PieceKind { IsolatedPoint, CriticalCircle, RegularAnnulus };

const char* to_string(PieceKind kind);

/// An f-adapted neighborhood (value window around a critical element) or an
/// f-regular one (a cylinder of regular leaves between two critical levels).
struct Piece {
  PieceKind kind = PieceKind::RegularAnnulus;
  /// Index into ModelSurface::isolated or ::circles for local pieces.
  int element = -1;
  double value = 0.0;
  double epsilon = 0.0;
  /// Regular pieces: the gap (lo, hi) with the blend widths at each end.
  double lo = 0.0;
  double hi = 0.0;
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  /// Gap ends at a boundary value (no blend there).
  bool lo_boundary = false;
  bool hi_boundary = false;
  /// Covers the whole circle (circle-valued surface without critical values).
  bool everywhere = false;
  int label = 0;
  int chart = 0;
  int sign = 1;
  std::optional<BinaryForm> form;
  /// Local model field (in q coordinates for isolated points, chart coordinates otherwise).
  std::optional<PlanarPolyField> germ;
};

/// Quintic smoothstep 6u^5 - 15u^4 + 10u^3 clamped to [0,1].
double smoothstep(double u);
/// 1 on [0, 1/2], 0 on [3/4, inf), smoothstep in between.
double cutoff(double t);

/// Hamiltonian model F_z of an isolated point.
PlanarPolyField local_isolated_field(const BinaryForm& form);

/// Unit angular field d/dx in collar coordinates (x along the circle, y across).
/// Throws ValidationError for a one-sided (Mobius) collar.
PlanarPolyField local_circle_field(int sign, int exponent, bool collar_orientable);

struct OrientResult {
  int sign = 1;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Compares a local field with a reference at overlap samples. The sign makes
/// lambda = <sign*local, ref>/|ref|^2 positive; mixed signs or a nonzero cross
/// product throw ValidationError("not colinear ...").
OrientResult orient_codirectionally(const std::vector<Vec2>& local, const std::vector<Vec2>& reference,
                                    double tol = 1e-9);

/// Piece layout with value windows: epsilon is half the distance to the nearest
/// other critical or boundary value.
std::vector<Piece> bump_family(const ModelSurface& surface);

struct GlueOptions {
  /// Skipping orientation is the sabotage mode used by regression tests.
  bool orient = true;
};

class GluedField {
 public:
  GluedField(ModelSurface surface, std::vector<Piece> pieces);

  const ModelSurface& surface() const { return surface_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Unnormalized bump values; piece s depends on p only through f(p) (and the cylinder label).
  std::vector<double> raw_weights(int chart, Vec2 p) const;
  /// Normalized partition of unity. Throws ValidationError("gap in cover ...") where all bumps vanish.
  std::vector<double> weights(int chart, Vec2 p) const;
  /// Field of piece s (sign included) at p, in chart coordinates.
  Vec2 piece_field(int s, int chart, Vec2 p) const;
  Vec2 operator()(int chart, Vec2 p) const;

  /// The glued field in one chart as a flow field, f being the conserved quantity.
  FlowField chart_field(int chart) const;
  /// Local coordinates of an isolated piece and the field pulled back to them.
  Vec2 to_local(const IsolatedSpec& z, Vec2 p) const;
  Vec2 from_local(const IsolatedSpec& z, Vec2 q) const;
  Vec2 pull_back(const IsolatedSpec& z, Vec2 q) const;

  void set_sign(int s, int sign) { pieces_[static_cast<std::size_t>(s)].sign = sign; }

 private:
  Vec2 push_from_local(const IsolatedSpec& z, Vec2 q, Vec2 v) const;

  ModelSurface surface_;
  std::vector<Piece> pieces_;
};

/// Bump family, BFS orientation of the pieces and the convex combination of their fields.
GluedField glue(const ModelSurface& surface, const GlueOptions& options = {});

/// Fixed 100x100 cell-centre lattice of a chart restricted to its primary part,
/// plus `extra` uniform random samples from `seed` when extra > 0.
std::vector<Vec2> chart_samples(const ModelSurface& surface, int chart, int extra = 0, std::uint64_t seed = 0);

struct CheckResult {
  bool pass = true;
  std::string witness;
  std::int64_t samples = 0;
};

struct VerifyReport {
  CheckResult zero_set;      // (i)
  CheckResult conservation;  // (ii)
  CheckResult h_type;        // (iii)
  double min_norm = 0.0;
  double max_residual = 0.0;

  bool pass() const { return zero_set.pass && conservation.pass && h_type.pass; }
};

struct VerifyOptions {
  double delta = 1e-3;
  double tol = 1e-9;
  int extra_samples = 0;
  std::uint64_t seed = 0;
  bool parallel = true;
};

VerifyReport verify_field(const GluedField& glued, const VerifyOptions& options = {});

/// Class-V configuration for one chart of a glued field: declared germs, lattice
/// transversals and boundary tangency samples.
ClassVConfig class_v_config(const GluedField& glued, int chart);

}  // namespace mbstab

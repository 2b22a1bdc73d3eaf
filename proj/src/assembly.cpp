#include "mbstab/assembly.hpp"

#include "mbstab/error.hpp"
#include "mbstab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

namespace mbstab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kLattice = 100;

bool always(Vec2) { return true; }

std::string point_text(int chart, Vec2 p) {
  std::ostringstream out;
  out.precision(6);
  out << "chart " << chart << " (" << p[0] << ", " << p[1] << ")";
  return out.str();
}

Vec2 complex_mul(Vec2 a, Vec2 b) { return {a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]}; }

BinaryForm form_of(std::initializer_list<int> coeffs) {
  std::vector<Rational> c;
  for (int x : coeffs) c.emplace_back(x);
  return BinaryForm(std::move(c));
}

/// Sorted distinct critical and boundary values.
std::vector<double> levels_of(const ModelSurface& m) {
  std::vector<double> v;
  for (const auto& z : m.isolated) v.push_back(z.value);
  for (const auto& c : m.circles) v.push_back(c.value);
  for (double b : m.boundary_values) v.push_back(b);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Index of the open gap containing f, or -1 on a level or outside [min, max].
int gap_of(const std::vector<double>& levels, double f) {
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (f > levels[i] && f < levels[i + 1]) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

// ---------------------------------------------------------------- surfaces

ModelSurface ModelSurface::disk() {
  ModelSurface m;
  m.kind = ModelKind::Disk;
  m.name = "disk";
  m.charts.push_back({"plane", {-1, 1, -1, 1}, [](Vec2 p) { return norm(p) <= 1.0 + 1e-9; },
                      [](Vec2 p) { return norm(p) <= 1.0; }, {0, 0}});
  IsolatedSpec z;
  z.form = form_of({1, 0, 1});
  m.isolated.push_back(z);
  m.boundary_values = {1.0};
  return m;
}

ModelSurface ModelSurface::annulus() {
  ModelSurface m;
  m.kind = ModelKind::Annulus;
  m.name = "annulus";
  m.charts.push_back({"plane", {-2, 2, -2, 2},
                      [](Vec2 p) { return norm(p) >= 1.0 - 1e-9 && norm(p) <= 2.0 + 1e-9; },
                      [](Vec2 p) { return norm(p) >= 1.0 && norm(p) <= 2.0; }, {0, 0}});
  CircleSpec c;
  c.value = 0.0;
  c.sign = 1;
  c.exponent = 2;
  c.collar_field = [](Vec2 p) { return perp(p); };
  m.circles.push_back(c);
  m.boundary_values = {0.25};
  return m;
}

ModelSurface ModelSurface::sphere() {
  ModelSurface m;
  m.kind = ModelKind::Sphere;
  m.name = "sphere";
  auto inside = [](Vec2 p) { return norm(p) <= 2.0; };
  auto primary = [](Vec2 p) { return norm(p) <= 1.0; };
  m.charts.push_back({"south", {-1, 1, -1, 1}, inside, primary, {0, 0}});
  m.charts.push_back({"north", {-1, 1, -1, 1}, inside, primary, {0, 0}});
  // Radial coordinates q with f = -1 + |q|^2 (south) and f = 1 - |q|^2 (north).
  IsolatedSpec south;
  south.chart = 0;
  south.value = -1.0;
  south.form = form_of({1, 0, 1});
  south.s = [](double t) { return 1.0 / std::sqrt(2.0 - t); };
  south.ds = [](double t) { return 0.5 * std::pow(2.0 - t, -1.5); };
  south.s_inv = [](double rho) { return std::sqrt(2.0 / (rho + 1.0)); };
  IsolatedSpec north = south;
  north.chart = 1;
  north.value = 1.0;
  north.form = form_of({-1, 0, -1});
  m.isolated = {south, north};
  m.regular_chart = 0;
  return m;
}

ModelSurface ModelSurface::torus_cos() {
  ModelSurface m;
  m.kind = ModelKind::TorusCos;
  m.name = "torus_cos";
  m.charts.push_back({"flat", {0, 1, 0, 1}, always, always, {1, 1}});
  CircleSpec top;
  top.value = 1.0;
  top.sign = -1;
  top.collar_field = [](Vec2) { return Vec2{1.0, 0.0}; };
  CircleSpec bottom = top;
  bottom.value = -1.0;
  bottom.sign = 1;
  m.circles = {top, bottom};
  return m;
}

ModelSurface ModelSurface::torus_zn(int n) {
  if (n < 1) throw ValidationError("torus_zn needs n >= 1");
  ModelSurface m;
  m.kind = ModelKind::TorusZn;
  m.name = "torus_zn";
  m.n = n;
  m.circle_valued = true;
  m.charts.push_back({"flat", {0, 1, 0, 1}, always, always, {1, 1}});
  return m;
}

ModelSurface ModelSurface::by_name(const std::string& name, int n) {
  if (name == "disk") return disk();
  if (name == "annulus") return annulus();
  if (name == "sphere") return sphere();
  if (name == "torus_cos") return torus_cos();
  if (name == "torus_zn") return torus_zn(n);
  throw ValidationError("unknown model surface '" + name + "' (disk, annulus, sphere, torus_cos, torus_zn)");
}

double ModelSurface::f(int chart, Vec2 p) const {
  const double rho = dot(p, p);
  switch (kind) {
    case ModelKind::Disk: return rho;
    case ModelKind::Annulus: {
      const double d = std::sqrt(rho) - 1.5;
      return d * d;
    }
    case ModelKind::Sphere: return chart == 0 ? (rho - 1.0) / (rho + 1.0) : (1.0 - rho) / (1.0 + rho);
    case ModelKind::TorusCos: return std::cos(kTwoPi * p[1]);
    case ModelKind::TorusZn: return n * p[0];
  }
  return 0.0;
}

Vec2 ModelSurface::grad(int chart, Vec2 p) const {
  const double rho = dot(p, p);
  switch (kind) {
    case ModelKind::Disk: return 2.0 * p;
    case ModelKind::Annulus: {
      const double r = std::sqrt(rho);
      return (2.0 * (r - 1.5) / r) * p;
    }
    case ModelKind::Sphere: {
      const double k = 4.0 / ((1.0 + rho) * (1.0 + rho));
      return (chart == 0 ? k : -k) * p;
    }
    case ModelKind::TorusCos: return {0.0, -kTwoPi * std::sin(kTwoPi * p[1])};
    case ModelKind::TorusZn: return {static_cast<double>(n), 0.0};
  }
  return {0.0, 0.0};
}

int ModelSurface::label(int, Vec2 p) const {
  switch (kind) {
    case ModelKind::Annulus: {
      const double d = norm(p) - 1.5;
      return d > 0 ? 1 : (d < 0 ? -1 : 0);
    }
    case ModelKind::TorusCos: {
      const double s = std::sin(kTwoPi * p[1]);
      return s > 0 ? 1 : (s < 0 ? -1 : 0);
    }
    default: return 0;
  }
}

std::vector<int> ModelSurface::gap_labels() const {
  if (kind == ModelKind::Annulus || kind == ModelKind::TorusCos) return {-1, 1};
  return {0};
}

Vec2 ModelSurface::transition(int from, int to, Vec2 p) const {
  if (from == to) return p;
  if (kind != ModelKind::Sphere) throw std::logic_error("transition between charts of a one-chart surface");
  const double rho = dot(p, p);
  return {p[0] / rho, -p[1] / rho};
}

Vec2 ModelSurface::push(int from, int to, Vec2 p, Vec2 v) const {
  if (from == to) return v;
  if (kind != ModelKind::Sphere) throw std::logic_error("push between charts of a one-chart surface");
  // d(1/z) = -dz / z^2.
  const double rho = dot(p, p);
  const Vec2 inv_sq{(p[0] * p[0] - p[1] * p[1]) / (rho * rho), (-2.0 * p[0] * p[1]) / (rho * rho)};
  return -complex_mul(v, inv_sq);
}

double ModelSurface::transition_error() const {
  if (charts.size() < 2) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < kLattice; ++i) {
    for (int j = 0; j < kLattice; ++j) {
      const Vec2 p{-2.0 + 4.0 * (i + 0.5) / kLattice, -2.0 + 4.0 * (j + 0.5) / kLattice};
      if (norm(p) < 0.5 || norm(p) > 2.0) continue;
      worst = std::max(worst, std::abs(f(0, p) - f(1, transition(0, 1, p))));
    }
  }
  return worst;
}

// ---------------------------------------------------------------- local models and bumps

const char* to_string(PieceKind kind) {
  switch (kind) {
    case PieceKind::IsolatedPoint: return "isolated";
    case PieceKind::CriticalCircle: return "circle";
    case PieceKind::RegularAnnulus: return "regular";
  }
  return "?";
}

double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
}

double cutoff(double t) { return 1.0 - smoothstep(4.0 * t - 2.0); }

PlanarPolyField local_isolated_field(const BinaryForm& form) {
  if (form.degree() < 2 || !is_square_free(form)) {
    throw ValidationError("isolated model needs a square-free form of degree >= 2");
  }
  return hamiltonian_of(form);
}

PlanarPolyField local_circle_field(int sign, int exponent, bool collar_orientable) {
  if (!collar_orientable) throw ValidationError("unsupported: Mobius collar (non-orientable gluing is out of scope)");
  if (sign != 1 && sign != -1) throw ValidationError("circle model sign must be +1 or -1");
  if (exponent < 2) throw ValidationError("circle model exponent must be >= 2");
  return {Poly2::constant(1), Poly2()};
}

OrientResult orient_codirectionally(const std::vector<Vec2>& local, const std::vector<Vec2>& reference, double tol) {
  if (local.size() != reference.size()) throw std::invalid_argument("orient_codirectionally: size mismatch");
  OrientResult r;
  r.lambda_min = std::numeric_limits<double>::infinity();
  r.lambda_max = -std::numeric_limits<double>::infinity();
  int used = 0;
  for (std::size_t i = 0; i < local.size(); ++i) {
    const double nl = norm(local[i]);
    const double nr = norm(reference[i]);
    if (nl == 0.0 || nr == 0.0) continue;
    if (std::abs(cross(local[i], reference[i])) > tol * nl * nr) {
      throw ValidationError("not colinear: fields cross at overlap sample " + std::to_string(i));
    }
    const double lambda = dot(local[i], reference[i]) / (nr * nr);
    r.lambda_min = std::min(r.lambda_min, lambda);
    r.lambda_max = std::max(r.lambda_max, lambda);
    ++used;
  }
  if (used == 0) throw ValidationError("not colinear: no usable overlap samples");
  if (r.lambda_min < 0 && r.lambda_max > 0) throw ValidationError("not colinear: lambda changes sign on the overlap");
  r.sign = r.lambda_min > 0 ? 1 : -1;
  if (r.sign < 0) {
    const double lo = -r.lambda_max;
    r.lambda_max = -r.lambda_min;
    r.lambda_min = lo;
  }
  return r;
}

std::vector<Piece> bump_family(const ModelSurface& m) {
  struct Element {
    PieceKind kind;
    int index;
    double value;
  };
  std::vector<Element> elements;
  for (std::size_t i = 0; i < m.isolated.size(); ++i) {
    elements.push_back({PieceKind::IsolatedPoint, static_cast<int>(i), m.isolated[i].value});
  }
  for (std::size_t i = 0; i < m.circles.size(); ++i) {
    elements.push_back({PieceKind::CriticalCircle, static_cast<int>(i), m.circles[i].value});
  }
  if (m.circle_valued && !elements.empty()) {
    throw ValidationError("gluing is implemented for circle-valued surfaces without critical values only");
  }

  std::vector<Piece> pieces;
  auto epsilon_of = [&](double c, std::size_t self) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (j != self) gap = std::min(gap, std::abs(elements[j].value - c));
    }
    for (double b : m.boundary_values) gap = std::min(gap, std::abs(b - c));
    if (gap == 0.0) throw ValidationError("two critical elements share the value " + std::to_string(c));
    return std::isfinite(gap) ? 0.5 * gap : 0.5;
  };
  for (std::size_t i = 0; i < elements.size(); ++i) {
    Piece p;
    p.kind = elements[i].kind;
    p.element = elements[i].index;
    p.value = elements[i].value;
    p.epsilon = epsilon_of(p.value, i);
    if (p.kind == PieceKind::IsolatedPoint) {
      const IsolatedSpec& z = m.isolated[static_cast<std::size_t>(p.element)];
      p.chart = z.chart;
      p.form = z.form;
      p.germ = local_isolated_field(z.form);
    } else {
      const CircleSpec& c = m.circles[static_cast<std::size_t>(p.element)];
      p.chart = c.chart;
      p.germ = local_circle_field(c.sign, c.exponent, c.collar_orientable);
    }
    pieces.push_back(std::move(p));
  }

  if (m.circle_valued) {
    Piece p;
    p.everywhere = true;
    p.chart = m.regular_chart;
    pieces.push_back(p);
    return pieces;
  }

  const auto levels = levels_of(m);
  auto eps_at = [&](double v, bool& boundary) {
    for (const auto& piece : pieces) {
      if (piece.value == v && piece.kind != PieceKind::RegularAnnulus) {
        boundary = false;
        return piece.epsilon;
      }
    }
    boundary = true;
    return 0.0;
  };
  for (std::size_t g = 0; g + 1 < levels.size(); ++g) {
    for (int label : m.gap_labels()) {
      Piece p;
      p.lo = levels[g];
      p.hi = levels[g + 1];
      p.eps_lo = eps_at(p.lo, p.lo_boundary);
      p.eps_hi = eps_at(p.hi, p.hi_boundary);
      p.label = label;
      p.chart = m.regular_chart;
      pieces.push_back(p);
    }
  }
  return pieces;
}

// ---------------------------------------------------------------- glued field

GluedField::GluedField(ModelSurface surface, std::vector<Piece> pieces)
    : surface_(std::move(surface)), pieces_(std::move(pieces)) {}

std::vector<double> GluedField::raw_weights(int chart, Vec2 p) const {
  const double f = surface_.f(chart, p);
  std::vector<double> w(pieces_.size(), 0.0);
  for (std::size_t s = 0; s < pieces_.size(); ++s) {
    const Piece& piece = pieces_[s];
    if (piece.everywhere) {
      w[s] = 1.0;
    } else if (piece.kind != PieceKind::RegularAnnulus) {
      w[s] = cutoff(std::abs(f - piece.value) / piece.epsilon);
    } else if (piece.label == 0 || surface_.label(chart, p) == piece.label) {
      const double up = piece.lo_boundary ? 1.0 : smoothstep((f - piece.lo - 0.5 * piece.eps_lo) / (0.25 * piece.eps_lo));
      const double down =
          piece.hi_boundary ? 1.0 : smoothstep((piece.hi - 0.5 * piece.eps_hi - f) / (0.25 * piece.eps_hi));
      w[s] = up * down;
    }
  }
  return w;
}

std::vector<double> GluedField::weights(int chart, Vec2 p) const {
  auto w = raw_weights(chart, p);
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) {
    throw ValidationError("gap in cover at f = " + std::to_string(surface_.f(chart, p)) + ", " + point_text(chart, p));
  }
  for (double& x : w) x /= total;
  return w;
}

Vec2 GluedField::to_local(const IsolatedSpec& z, Vec2 p) const {
  const Vec2 d = p - z.location;
  return z.s_inv ? z.s_inv(dot(d, d)) * d : d;
}

Vec2 GluedField::from_local(const IsolatedSpec& z, Vec2 q) const {
  return z.location + (z.s ? z.s(dot(q, q)) : 1.0) * q;
}

Vec2 GluedField::push_from_local(const IsolatedSpec& z, Vec2 q, Vec2 v) const {
  if (!z.s) return v;
  const double t = dot(q, q);
  return z.s(t) * v + (2.0 * z.ds(t) * dot(q, v)) * q;
}

Vec2 GluedField::pull_back(const IsolatedSpec& z, Vec2 q) const {
  const Vec2 w = (*this)(z.chart, from_local(z, q));
  if (!z.s) return w;
  const double t = dot(q, q);
  const double s = z.s(t);
  const double c = 2.0 * z.ds(t);
  return (1.0 / s) * (w - (c * dot(q, w) / (s + c * t)) * q);
}

Vec2 GluedField::piece_field(int index, int chart, Vec2 p) const {
  const Piece& piece = pieces_[static_cast<std::size_t>(index)];
  const int home = piece.chart;
  const Vec2 x = surface_.transition(chart, home, p);
  Vec2 v{};
  switch (piece.kind) {
    case PieceKind::IsolatedPoint: {
      const IsolatedSpec& z = surface_.isolated[static_cast<std::size_t>(piece.element)];
      const Vec2 q = to_local(z, x);
      v = push_from_local(z, q, piece.germ->evaluate(q));
      break;
    }
    case PieceKind::CriticalCircle:
      v = surface_.circles[static_cast<std::size_t>(piece.element)].collar_field(x);
      break;
    case PieceKind::RegularAnnulus: v = surface_.hamiltonian(home, x); break;
  }
  v = static_cast<double>(piece.sign) * v;
  return surface_.push(home, chart, x, v);
}

Vec2 GluedField::operator()(int chart, Vec2 p) const {
  const auto w = weights(chart, p);
  Vec2 out{0.0, 0.0};
  for (std::size_t s = 0; s < pieces_.size(); ++s) {
    if (w[s] == 0.0) continue;
    out = out + w[s] * piece_field(static_cast<int>(s), chart, p);
  }
  return out;
}

FlowField GluedField::chart_field(int chart) const {
  FlowField out;
  auto self = std::make_shared<GluedField>(*this);
  out.vector = [self, chart](Vec2 p) { return (*self)(chart, p); };
  out.inside = surface_.charts[static_cast<std::size_t>(chart)].inside;
  out.conserved = [self, chart](Vec2 p) { return self->surface().f(chart, p); };
  out.period = surface_.charts[static_cast<std::size_t>(chart)].period;
  return out;
}

std::vector<Vec2> chart_samples(const ModelSurface& surface, int chart, int extra, std::uint64_t seed) {
  const ChartSpec& c = surface.charts[static_cast<std::size_t>(chart)];
  std::vector<Vec2> out;
  for (int i = 0; i < kLattice; ++i) {
    for (int j = 0; j < kLattice; ++j) {
      const Vec2 p{c.box.x0 + (c.box.x1 - c.box.x0) * (i + 0.5) / kLattice,
                   c.box.y0 + (c.box.y1 - c.box.y0) * (j + 0.5) / kLattice};
      if (c.primary(p)) out.push_back(p);
    }
  }
  if (extra > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(c.box.x0, c.box.x1);
    std::uniform_real_distribution<double> uy(c.box.y0, c.box.y1);
    int added = 0;
    for (int attempt = 0; added < extra && attempt < 100 * extra; ++attempt) {
      const Vec2 p{ux(rng), uy(rng)};
      if (!c.primary(p)) continue;
      out.push_back(p);
      ++added;
    }
  }
  return out;
}

GluedField glue(const ModelSurface& surface, const GlueOptions& options) {
  GluedField glued(surface, bump_family(surface));
  const int n = static_cast<int>(glued.pieces().size());
  if (!options.orient || n == 1) return glued;

  // Overlap samples of every pair, taken from the chart lattices.
  std::vector<std::vector<std::pair<int, Vec2>>> overlap(static_cast<std::size_t>(n * n));
  for (int c = 0; c < static_cast<int>(surface.charts.size()); ++c) {
    for (const Vec2& p : chart_samples(surface, c)) {
      const auto w = glued.raw_weights(c, p);
      for (int s = 0; s < n; ++s) {
        if (w[s] == 0.0) continue;
        for (int t = s + 1; t < n; ++t) {
          if (w[t] > 0.0) overlap[static_cast<std::size_t>(s * n + t)].push_back({c, p});
        }
      }
    }
  }
  auto samples_of = [&](int s, int t) -> const std::vector<std::pair<int, Vec2>>& {
    return overlap[static_cast<std::size_t>(std::min(s, t) * n + std::max(s, t))];
  };
  auto compare = [&](int local, int reference) {
    std::vector<Vec2> a;
    std::vector<Vec2> b;
    for (const auto& [c, p] : samples_of(local, reference)) {
      a.push_back(glued.piece_field(local, c, p));
      b.push_back(glued.piece_field(reference, c, p));
    }
    return orient_codirectionally(a, b);
  };

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  std::deque<int> queue{0};
  done[0] = true;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int t = 0; t < n; ++t) {
      if (done[t] || samples_of(s, t).empty()) continue;
      glued.set_sign(t, 1);
      glued.set_sign(t, compare(t, s).sign);
      done[t] = true;
      queue.push_back(t);
    }
  }
  for (int t = 0; t < n; ++t) {
    if (!done[t]) throw ValidationError("piece " + std::to_string(t) + " does not overlap the rest of the cover");
  }
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (!samples_of(s, t).empty() && compare(t, s).sign != 1) {
        throw ValidationError("inconsistent orientation between pieces " + std::to_string(s) + " and " +
                              std::to_string(t));
      }
    }
  }
  return glued;
}

// ---------------------------------------------------------------- verification

VerifyReport verify_field(const GluedField& glued, const VerifyOptions& options) {
  const ModelSurface& m = glued.surface();
  const auto levels = levels_of(m);
  VerifyReport rep;
  rep.min_norm = std::numeric_limits<double>::infinity();

  for (int c = 0; c < static_cast<int>(m.charts.size()); ++c) {
    const ChartSpec& chart = m.charts[static_cast<std::size_t>(c)];
    const auto samples = chart_samples(m, c, options.extra_samples, options.seed);
    const auto values = options.parallel ? sample_glued_parallel(glued, c, samples) : sample_glued_serial(glued, c, samples);

    std::vector<Vec2> zeros;
    for (const auto& z : m.isolated) {
      if (z.chart == c) zeros.push_back(z.location);
    }

    // (i) no zeros away from the declared points; (ii) F(f) = 0.
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Vec2 p = samples[i];
      const Vec2 F = values[i];
      bool near_zero = false;
      for (const Vec2& z : zeros) near_zero = near_zero || norm(p - z) <= options.delta;
      if (!near_zero) {
        ++rep.zero_set.samples;
        const double nf = norm(F);
        rep.min_norm = std::min(rep.min_norm, nf);
        if (!(nf > options.delta) && rep.zero_set.pass) {
          rep.zero_set.pass = false;
          rep.zero_set.witness = "|F| = " + std::to_string(nf) + " at " + point_text(c, p);
        }
      }
      const Vec2 g = m.grad(c, p);
      const double residual = std::abs(dot(F, g)) / (1.0 + dot(g, g));
      rep.max_residual = std::max(rep.max_residual, residual);
      ++rep.conservation.samples;
      if (!(residual <= options.tol) && rep.conservation.pass) {
        rep.conservation.pass = false;
        rep.conservation.witness = "|F.grad f| = " + std::to_string(residual) + " at " + point_text(c, p);
      }
    }
    for (const Vec2& z : zeros) {
      const Vec2 F = glued(c, z);
      if ((F[0] != 0.0 || F[1] != 0.0) && rep.zero_set.pass) {
        rep.zero_set.pass = false;
        rep.zero_set.witness = "F does not vanish at the declared critical point " + point_text(c, z);
      }
    }

    // (i) continued: kappa = <F, X_f>/|X_f|^2 keeps its sign along lattice segments inside one cylinder.
    const int N = kLattice;
    auto lattice = [&](int i, int j) {
      return Vec2{chart.box.x0 + (chart.box.x1 - chart.box.x0) * (i + 0.5) / N,
                  chart.box.y0 + (chart.box.y1 - chart.box.y0) * (j + 0.5) / N};
    };
    auto cell = [&](Vec2 p) { return std::make_pair(gap_of(levels, m.f(c, p)), m.label(c, p)); };
    std::vector<int> kappa_sign(static_cast<std::size_t>(N * N), 0);
    std::vector<std::pair<int, int>> cells(static_cast<std::size_t>(N * N), {-1, 0});
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        const Vec2 p = lattice(i, j);
        if (!chart.primary(p)) continue;
        const Vec2 xf = m.hamiltonian(c, p);
        if (norm(xf) <= options.delta) continue;
        const double kappa = dot(glued(c, p), xf) / dot(xf, xf);
        kappa_sign[static_cast<std::size_t>(i * N + j)] = kappa > 0 ? 1 : (kappa < 0 ? -1 : 2);
        cells[static_cast<std::size_t>(i * N + j)] = cell(p);
      }
    }
    for (int i = 0; i < N && rep.zero_set.pass; ++i) {
      for (int j = 0; j < N && rep.zero_set.pass; ++j) {
        const auto a = static_cast<std::size_t>(i * N + j);
        if (kappa_sign[a] == 0 || cells[a].first < 0) continue;
        for (const auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
          if (i + di >= N || j + dj >= N) continue;
          const auto b = static_cast<std::size_t>((i + di) * N + (j + dj));
          if (kappa_sign[b] == 0 || cells[b] != cells[a]) continue;
          const Vec2 mid = 0.5 * (lattice(i, j) + lattice(i + di, j + dj));
          if (cell(mid) != cells[a]) continue;
          if (kappa_sign[a] != kappa_sign[b] || kappa_sign[a] == 2) {
            rep.zero_set.pass = false;
            rep.zero_set.witness = "F reverses against X_f between " + point_text(c, lattice(i, j)) + " and " +
                                   point_text(c, lattice(i + di, j + dj));
            break;
          }
        }
      }
    }

    // (iii) the germ equals the declared model on Y_z.
    for (std::size_t s = 0; s < glued.pieces().size(); ++s) {
      const Piece& piece = glued.pieces()[s];
      if (piece.kind != PieceKind::IsolatedPoint || piece.chart != c) continue;
      const IsolatedSpec& z = m.isolated[static_cast<std::size_t>(piece.element)];
      const BinaryForm oriented = piece.form->scaled(piece.sign);
      const bool symbolic = piece.germ->scaled(piece.sign) == hamiltonian_of(oriented);
      bool isolated_window = true;
      for (double v : levels) {
        if (v != piece.value && std::abs(v - piece.value) < 2.0 * piece.epsilon) isolated_window = false;
      }
      if (!symbolic || !isolated_window) {
        rep.h_type.pass = false;
        rep.h_type.witness = !symbolic ? "germ differs from hamiltonian_of(form)" : "window of an isolated point is not isolated";
      }
      for (std::size_t i = 0; i < samples.size() && rep.h_type.pass; ++i) {
        const Vec2 p = samples[i];
        if (std::abs(m.f(c, p) - piece.value) > 0.5 * piece.epsilon) continue;
        ++rep.h_type.samples;
        const Vec2 model = glued.piece_field(static_cast<int>(s), c, p);
        const Vec2 F = values[i];
        const Vec2 q = glued.to_local(z, p);
        const Vec2 pulled = glued.pull_back(z, q);
        const Vec2 germ = piece.germ->scaled(piece.sign).evaluate(q);
        const bool exact = F[0] == model[0] && F[1] == model[1];
        const bool local = norm(pulled - germ) <= 1e-10 * (1.0 + norm(germ));
        if (!exact || !local) {
          rep.h_type.pass = false;
          rep.h_type.witness = "field differs from the model germ at " + point_text(c, p);
        }
      }
    }
  }
  return rep;
}

ClassVConfig class_v_config(const GluedField& glued, int chart) {
  const ModelSurface& m = glued.surface();
  const ChartSpec& spec = m.charts[static_cast<std::size_t>(chart)];
  ClassVConfig cfg;
  cfg.domain = spec.box;
  const FlowField field = glued.chart_field(chart);

  for (const Piece& piece : glued.pieces()) {
    if (piece.kind != PieceKind::IsolatedPoint || piece.chart != chart) continue;
    const IsolatedSpec& z = m.isolated[static_cast<std::size_t>(piece.element)];
    DeclaredSingularity d;
    d.location = z.location;
    d.form = piece.form->scaled(piece.sign);
    d.germ = piece.germ->scaled(piece.sign);
    d.local_field = [glued, z](Vec2 q) { return glued.pull_back(z, q); };
    double peak = 0.0;
    for (int k = 0; k < 360; ++k) {
      const double a = kTwoPi * k / 360;
      peak = std::max(peak, std::abs(z.form.evaluate(Vec2{std::cos(a), std::sin(a)})));
    }
    d.radius = 0.9 * std::pow(0.5 * piece.epsilon / peak, 1.0 / z.form.degree());
    cfg.singularities.push_back(std::move(d));
  }

  // Transversals through a coarse lattice of regular points, kept inside the chart.
  const double width = spec.box.x1 - spec.box.x0;
  const double half = 0.02 * width;
  constexpr int k = 4;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Vec2 p{spec.box.x0 + (spec.box.x1 - spec.box.x0) * (i + 0.5) / k,
                   spec.box.y0 + (spec.box.y1 - spec.box.y0) * (j + 0.5) / k};
      if (!spec.primary(p)) continue;
      const Vec2 F = field(p);
      if (norm(F) < 1e-3) continue;
      const Transversal d = Transversal::through(field, p, half);
      if (!spec.primary(d.point(-half)) || !spec.primary(d.point(half))) continue;
      cfg.transversals.push_back(d);
    }
  }
  cfg.samples_per_transversal = 3;
  cfg.returns.tol = 1e-10;
  cfg.returns.time_budget = 50.0;
  cfg.closure_tol = 1e-6 * width;

  if (m.kind == ModelKind::Disk || m.kind == ModelKind::Annulus) {
    std::vector<double> radii = m.kind == ModelKind::Disk ? std::vector<double>{1.0} : std::vector<double>{1.0, 2.0};
    for (double r : radii) {
      for (int a = 0; a < 64; ++a) {
        const double t = kTwoPi * (a + 0.5) / 64;
        const Vec2 p{r * std::cos(t), r * std::sin(t)};
        cfg.boundary_samples.push_back({p, (1.0 / r) * p});
      }
    }
  }
  return cfg;
}

}  // namespace mbstab

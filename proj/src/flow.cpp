#include "mbstab/flow.hpp"

#include "mbstab/error.hpp"

#include <cmath>
#include <limits>

namespace mbstab {

ShiftFunction ShiftFunction::constant(double c) {
  ShiftFunction a;
  a.value = [c](Vec2) { return c; };
  a.gradient = [](Vec2) { return Vec2{0.0, 0.0}; };
  return a;
}

ShiftFunction ShiftFunction::scaled(double s) const {
  ShiftFunction a;
  a.scale = scale;
  a.value = [f = value, s](Vec2 p) { return s * f(p); };
  if (gradient) a.gradient = [g = gradient, s](Vec2 p) { return s * g(p); };
  return a;
}

std::vector<ShiftResult> shift_map(const FlowField& field, const ShiftFunction& alpha, const std::vector<Vec2>& points,
                                   double tol) {
  std::vector<ShiftResult> out;
  out.reserve(points.size());
  for (const Vec2& p : points) {
    const double t = alpha(p);
    if (!std::isfinite(t)) throw ValidationError("shift function is not finite at a sample");
    const Trajectory tr = integrate(field, p, t, tol, false);
    out.push_back({field.wrap(tr.end()), tr.status});
  }
  return out;
}

double directional_derivative(const FlowField& field, const ShiftFunction& alpha, Vec2 p) {
  const Vec2 f = field(p);
  if (alpha.gradient) return dot(f, alpha.gradient(p));
  const double speed = norm(f);
  if (speed == 0.0) return 0.0;
  const double t = 1e-5 * alpha.scale / speed;
  return (alpha(p + t * f) - alpha(p - t * f)) / (2 * t);
}

GammaResult gamma_criterion(const FlowField& field, const ShiftFunction& alpha, const std::vector<Vec2>& samples,
                            double margin_floor) {
  GammaResult r;
  r.min_derivative = std::numeric_limits<double>::infinity();
  for (const Vec2& p : samples) {
    const double d = directional_derivative(field, alpha, p);
    if (d < r.min_derivative) {
      r.min_derivative = d;
      r.witness = p;
    }
  }
  if (samples.empty()) r.min_derivative = 0.0;
  r.margin = r.min_derivative + 1.0;
  r.in_gamma = r.min_derivative > -1.0 + margin_floor;
  return r;
}

Transversal Transversal::through(const FlowField& field, Vec2 z, double half_length) {
  const Vec2 f = field(z);
  const double n = norm(f);
  if (n == 0.0) throw ValidationError("transversal requested at a fixed point");
  return {z, (1.0 / n) * perp(f), half_length};
}

ReturnSample first_return_sample(const FlowField& field, const Transversal& d, double offset,
                                 const ReturnOptions& options) {
  ReturnSample out;
  out.offset = offset;
  const Vec2 fz = field(d.center);
  const Vec2 along = (1.0 / norm(fz)) * fz;
  auto sigma = [&](Vec2 p) { return dot(field.displacement(d.center, p), along); };
  auto coord = [&](Vec2 p) { return dot(field.displacement(d.center, p), d.direction); };
  double seam = std::numeric_limits<double>::infinity();
  for (double per : field.period) {
    if (per > 0) seam = std::min(seam, 0.25 * per);
  }

  Stepper stepper(field, d.point(offset), options.tol, 1.0);
  while (stepper.elapsed() < options.time_budget) {
    const Vec2 y0 = stepper.state();
    const double t0 = stepper.elapsed();
    double max_step = options.time_budget - t0;
    // On periodic charts a step must not wrap past the transversal unseen.
    if (std::isfinite(seam)) max_step = std::min(max_step, 0.5 * seam / std::max(norm(field(y0)), 1e-300));
    if (!stepper.advance(max_step)) {
      out.tag = to_string(stepper.status());
      return out;
    }
    const double s0 = sigma(y0);
    const double s1 = sigma(stepper.state());
    if (!(s0 < 0 && s1 >= 0) || std::abs(s0) > seam || std::abs(s1) > seam) continue;
    double lo = 0.0;
    double hi = stepper.last_step();
    while (hi - lo > options.event_tol * std::max(1.0, t0)) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sigma(stepper.trial(y0, mid)) < 0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const Vec2 hit = stepper.trial(y0, hi);
    const double c = coord(hit);
    if (std::abs(c) <= d.half_length) {
      out.returned = true;
      out.image_offset = c;
      out.image = d.point(c);
      out.return_time = t0 + hi;
      out.tag = "returned";
      return out;
    }
  }
  out.tag = "non-returning";
  return out;
}

ReturnMap first_return(const FlowField& field, const Transversal& d, int count, const ReturnOptions& options) {
  if (count < 1) throw ValidationError("return map needs at least one sample");
  ReturnMap map;
  map.transversal = d;
  for (int i = 0; i < count; ++i) {
    const double offset = -d.half_length + 2.0 * d.half_length * (i + 1) / (count + 1);
    map.samples.push_back(first_return_sample(field, d, offset, options));
  }
  return map;
}

namespace {

double minimal_period(const FlowField& field, Vec2 x, const ReturnOptions& options, int max_return_period) {
  const double scale = 1.0 + norm(x);
  const Transversal d = Transversal::through(field, x, 1e-3 * scale);
  const double closure = 1e-7 * scale;
  double offset = 0.0;
  double total = 0.0;
  for (int p = 1; p <= max_return_period; ++p) {
    const ReturnSample r = first_return_sample(field, d, offset, options);
    if (!r.returned) {
      throw ValidationError("non-closed orbit through (" + std::to_string(x[0]) + ", " + std::to_string(x[1]) +
                            "): " + r.tag);
    }
    total += r.return_time;
    if (std::abs(r.image_offset) <= closure) return total;
    offset = r.image_offset;
  }
  throw ValidationError("non-closed orbit through (" + std::to_string(x[0]) + ", " + std::to_string(x[1]) +
                        "): return map not periodic within " + std::to_string(max_return_period) + " returns");
}

}  // namespace

PeriodResult period_function(const FlowField& field, const std::vector<Vec2>& samples, const ReturnOptions& options,
                             int max_return_period) {
  PeriodResult out;
  out.samples = samples;
  for (const Vec2& x : samples) out.periods.push_back(minimal_period(field, x, options, max_return_period));
  // The generator alpha(x) is the minimal period of the orbit through x, evaluated on demand.
  out.alpha.value = [field, options, max_return_period](Vec2 p) {
    return minimal_period(field, p, options, max_return_period);
  };
  const auto periods = out.periods;
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Trajectory tr = integrate(field, samples[i], periods[i], options.tol, false);
    worst = std::max(worst, norm(field.displacement(samples[i], tr.end())));
  }
  out.reconstruction_error = worst;
  return out;
}

}  // namespace mbstab

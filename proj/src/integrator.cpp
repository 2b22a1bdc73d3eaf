#include "mbstab/integrator.hpp"

#include "mbstab/binary_forms.hpp"
#include "mbstab/error.hpp"

#include <cmath>
#include <limits>

namespace mbstab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr int kMaxSteps = 2'000'000;

bool finite(Vec2 p) { return std::isfinite(p[0]) && std::isfinite(p[1]); }

double wrap_coordinate(double x, double period) {
  if (period <= 0) return x;
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

}  // namespace

Vec2 FlowField::wrap(Vec2 p) const { return {wrap_coordinate(p[0], period[0]), wrap_coordinate(p[1], period[1])}; }

Vec2 FlowField::displacement(Vec2 a, Vec2 b) const {
  Vec2 d = b - a;
  for (int i = 0; i < 2; ++i) {
    if (period[i] > 0) d[i] -= period[i] * std::floor(d[i] / period[i] + 0.5);
  }
  return d;
}

FlowField FlowField::from_polynomial(const PlanarPolyField& field, double domain_radius) {
  FlowField f;
  f.vector = [field](Vec2 p) { return field.evaluate(p); };
  f.inside = [domain_radius](Vec2 p) { return norm(p) <= domain_radius; };
  f.polynomial = field;
  return f;
}

FlowField FlowField::hamiltonian_of(const Poly2& g, double domain_radius) {
  FlowField f = from_polynomial(mbstab::hamiltonian_of(g), domain_radius);
  f.conserved = [g](Vec2 p) { return g.evaluate(p); };
  f.hamiltonian = g;
  return f;
}

const char* to_string(FlowStatus status) {
  switch (status) {
    case FlowStatus::Completed: return "completed";
    case FlowStatus::ExitedDomain: return "exited domain";
    case FlowStatus::Stagnated: return "stagnation";
    case FlowStatus::StepBudget: return "step budget exhausted";
  }
  return "?";
}

Stepper::Stepper(const FlowField& field, Vec2 p0, double tol, double direction)
    : field_(field), tol_(tol), direction_(direction), y_(p0), y_prev_(p0) {
  if (!(tol > 0)) throw ValidationError("integrator tolerance must be positive");
  if (!finite(p0)) throw ValidationError("initial point is not finite");
  if (!field.contains(p0)) throw ValidationError("initial point lies outside the chart domain");
  const double speed = norm(eval(p0));
  h_ = 0.1 * (1.0 + norm(p0)) / std::max(speed, 1e-12);
  min_step_ = std::numeric_limits<double>::infinity();
}

Vec2 Stepper::eval(Vec2 p) const { return direction_ * field_(p); }

Vec2 Stepper::step(Vec2 y, double h, Vec2* error) const {
  const Vec2 k1 = eval(y);
  const Vec2 k2 = eval(y + (h * a21) * k1);
  const Vec2 k3 = eval(y + h * (a31 * k1 + a32 * k2));
  const Vec2 k4 = eval(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const Vec2 k5 = eval(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const Vec2 k6 = eval(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  const Vec2 y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  if (error) {
    const Vec2 k7 = eval(y1);
    *error = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  }
  return y1;
}

Vec2 Stepper::trial(Vec2 y, double h) const { return step(y, h, nullptr); }

bool Stepper::advance(double max_step) {
  if (status_ != FlowStatus::Completed) return false;
  if (accepted_ >= kMaxSteps) {
    status_ = FlowStatus::StepBudget;
    return false;
  }
  while (true) {
    const double h = std::min(h_, max_step);
    const double floor = 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, t_);
    if (h < floor) {
      status_ = FlowStatus::Stagnated;
      return false;
    }
    Vec2 err{};
    const Vec2 y1 = step(y_, h, &err);
    if (!finite(y1) || !finite(err)) {
      h_ = 0.25 * h;
      ++rejected_;
      continue;
    }
    const double scale = 1.0 + std::max(norm(y_), norm(y1));
    const double e = norm(err) / scale;
    const double target = tol_ * h;
    const double ratio = e > 0 ? target / e : 1e30;
    if (e <= target) {
      if (!field_.contains(y1)) {
        status_ = FlowStatus::ExitedDomain;
        return false;
      }
      y_prev_ = y_;
      y_ = y1;
      t_ += h;
      h_last_ = h;
      min_step_ = std::min(min_step_, h);
      max_step_ = std::max(max_step_, h);
      ++accepted_;
      h_ = h * std::clamp(0.9 * std::pow(ratio, 0.25), 0.2, 5.0);
      return true;
    }
    ++rejected_;
    h_ = h * std::max(0.2, 0.9 * std::pow(ratio, 0.25));
  }
}

Trajectory integrate(const FlowField& field, Vec2 p0, double T, double tol, bool record) {
  if (!std::isfinite(T)) throw ValidationError("integration time is not finite");
  const double direction = T >= 0 ? 1.0 : -1.0;
  const double duration = std::abs(T);
  Stepper stepper(field, p0, tol, direction);
  Trajectory out;
  out.start = p0;
  out.times.push_back(0.0);
  out.points.push_back(p0);
  const bool has_g = static_cast<bool>(field.conserved);
  const double g0 = has_g ? field.conserved(p0) : 0.0;
  double drift = 0.0;
  while (stepper.elapsed() < duration) {
    const double remaining = duration - stepper.elapsed();
    if (!stepper.advance(remaining)) {
      out.status = stepper.status();
      out.diagnostic = std::string(to_string(out.status)) + " at t = " + std::to_string(direction * stepper.elapsed());
      break;
    }
    if (has_g) drift = std::max(drift, std::abs(field.conserved(stepper.state()) - g0));
    if (record) {
      out.times.push_back(direction * stepper.elapsed());
      out.points.push_back(stepper.state());
    }
  }
  if (!record && stepper.accepted() > 0) {
    out.times.push_back(direction * stepper.elapsed());
    out.points.push_back(stepper.state());
  }
  out.accepted_steps = stepper.accepted();
  out.rejected_steps = stepper.rejected();
  out.min_step = stepper.accepted() > 0 ? stepper.min_step() : 0.0;
  out.max_step = stepper.max_step();
  out.drift = has_g ? drift : std::numeric_limits<double>::quiet_NaN();
  out.drift_ok = !has_g || drift <= tol * (1.0 + std::abs(g0));
  return out;
}

}  // namespace mbstab

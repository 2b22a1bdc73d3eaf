#pragma once

#include "mbstab/geometry.hpp"
#include "mbstab/poly2.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mbstab {

/// A planar vector field in one chart, with optional extra structure the
/// flow tools can exploit.
struct FlowField {
  std::function<Vec2(Vec2)> vector;
  /// Chart domain; an empty function means the whole plane.
  std::function<bool(Vec2)> inside;
  /// Function conserved by the flow (X(g) = 0), used for the drift diagnostic.
  std::function<double(Vec2)> conserved;
  /// Chart periods in x and y, 0 when the coordinate is not periodic (flat torus charts).
  Vec2 period{0.0, 0.0};
  /// Set when the components are polynomials; enables interval root isolation.
  std::optional<PlanarPolyField> polynomial;
  /// Set when the field is hamiltonian_of(*hamiltonian).
  std::optional<Poly2> hamiltonian;

  Vec2 operator()(Vec2 p) const { return vector(p); }
  bool contains(Vec2 p) const { return !inside || inside(p); }
  /// Reduces periodic coordinates to [0, period).
  Vec2 wrap(Vec2 p) const;
  /// Displacement b - a with periodic coordinates reduced to [-period/2, period/2).
  Vec2 displacement(Vec2 a, Vec2 b) const;

  /// Polynomial field on the disk |p| <= domain_radius.
  static FlowField from_polynomial(const PlanarPolyField& field, double domain_radius = 10.0);
  /// hamiltonian_of(g) with g as the conserved quantity.
  static FlowField hamiltonian_of(const Poly2& g, double domain_radius = 10.0);
};

enum class FlowStatus { Completed, ExitedDomain, Stagnated, StepBudget };

const char* to_string(FlowStatus status);

struct Trajectory {
  Vec2 start{};
  /// Signed times; negative when integrated backwards.
  std::vector<double> times;
  std::vector<Vec2> points;
  int accepted_steps = 0;
  int rejected_steps = 0;
  double min_step = 0.0;
  double max_step = 0.0;
  /// max |g(x(t)) - g(p0)| over accepted steps; NaN without a conserved function.
  double drift = 0.0;
  /// drift <= tol * (1 + |g(p0)|).
  bool drift_ok = true;
  FlowStatus status = FlowStatus::Completed;
  std::string diagnostic;

  Vec2 end() const { return points.back(); }
  double end_time() const { return times.back(); }
};

/// Dormand-Prince 5(4) with local extrapolation. The step controller keeps the
/// embedded error estimate per unit time below tol (relative to 1 + |x|).
/// With record = false only the start and end points are stored.
Trajectory integrate(const FlowField& field, Vec2 p0, double T, double tol, bool record = true);

/// Incremental stepper used by event detection.
class Stepper {
 public:
  Stepper(const FlowField& field, Vec2 p0, double tol, double direction);

  /// One accepted step of at most max_step. Returns false (with status set)
  /// when the step size collapses, the step budget is exhausted or the orbit leaves the domain.
  bool advance(double max_step);

  /// Single Dormand-Prince step of size h from y (no error control).
  Vec2 trial(Vec2 y, double h) const;

  Vec2 state() const { return y_; }
  Vec2 previous_state() const { return y_prev_; }
  /// Elapsed |time| since the start.
  double elapsed() const { return t_; }
  double last_step() const { return h_last_; }
  FlowStatus status() const { return status_; }
  int accepted() const { return accepted_; }
  int rejected() const { return rejected_; }
  double min_step() const { return min_step_; }
  double max_step() const { return max_step_; }

 private:
  Vec2 eval(Vec2 p) const;
  Vec2 step(Vec2 y, double h, Vec2* error) const;

  const FlowField& field_;
  double tol_;
  double direction_;
  Vec2 y_;
  Vec2 y_prev_;
  double t_ = 0.0;
  double h_ = 0.0;
  double h_last_ = 0.0;
  double min_step_ = 0.0;
  double max_step_ = 0.0;
  int accepted_ = 0;
  int rejected_ = 0;
  FlowStatus status_ = FlowStatus::Completed;
};

}  // namespace mbstab

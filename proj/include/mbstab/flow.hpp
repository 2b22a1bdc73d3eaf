#pragma once

#include "mbstab/integrator.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mbstab {

/// Scalar function alpha on a chart. When the gradient is missing, directional
/// derivatives use centered differences along the field with h = 1e-5 * scale.
struct ShiftFunction {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
  double scale = 1.0;

  double operator()(Vec2 p) const { return value(p); }
  static ShiftFunction constant(double c);
  /// Pointwise multiple s * alpha.
  ShiftFunction scaled(double s) const;
};

struct ShiftResult {
  Vec2 image{};
  FlowStatus status = FlowStatus::Completed;
};

/// x -> flow(x, alpha(x)).
std::vector<ShiftResult> shift_map(const FlowField& field, const ShiftFunction& alpha, const std::vector<Vec2>& points,
                                   double tol = 1e-12);

/// (F alpha)(x), symbolic when alpha has a gradient.
double directional_derivative(const FlowField& field, const ShiftFunction& alpha, Vec2 p);

struct GammaResult {
  bool in_gamma = false;
  /// min over samples of F alpha.
  double min_derivative = 0.0;
  /// min F alpha + 1.
  double margin = 0.0;
  Vec2 witness{};
};

/// alpha is in Gamma on the samples iff min F alpha > -1 + margin_floor.
GammaResult gamma_criterion(const FlowField& field, const ShiftFunction& alpha, const std::vector<Vec2>& samples,
                            double margin_floor = 0.0);

/// Segment through `center` along `direction` (unit), |offset| <= half_length.
struct Transversal {
  Vec2 center{};
  Vec2 direction{};
  double half_length = 0.0;

  Vec2 point(double offset) const { return center + offset * direction; }
  /// Transversal through z perpendicular to F(z). Throws if F(z) = 0.
  static Transversal through(const FlowField& field, Vec2 z, double half_length);
};

struct ReturnOptions {
  double tol = 1e-12;
  double time_budget = 100.0;
  /// Bisection stops when the crossing time is known to this accuracy.
  double event_tol = 1e-13;
};

struct ReturnSample {
  double offset = 0.0;
  bool returned = false;
  double image_offset = 0.0;
  Vec2 image{};
  double return_time = 0.0;
  /// "returned", "non-returning", or the integrator status that stopped the search.
  std::string tag;
};

struct ReturnMap {
  Transversal transversal;
  std::vector<ReturnSample> samples;
};

/// First same-direction re-crossing of the transversal for the sample at `offset`.
ReturnSample first_return_sample(const FlowField& field, const Transversal& d, double offset,
                                 const ReturnOptions& options = {});

/// Return map on `count` equally spaced samples of D (endpoints excluded).
ReturnMap first_return(const FlowField& field, const Transversal& d, int count, const ReturnOptions& options = {});

struct PeriodResult {
  ShiftFunction alpha;
  std::vector<Vec2> samples;
  std::vector<double> periods;
  /// max |F_alpha(x) - x| over samples.
  double reconstruction_error = 0.0;
};

/// Minimal period of the orbit through each sample (iterating the return map up
/// to max_return_period times). alpha evaluates the same minimal period at any point.
/// Throws ValidationError("non-closed orbit ...") when an orbit does not close.
PeriodResult period_function(const FlowField& field, const std::vector<Vec2>& samples,
                             const ReturnOptions& options = {}, int max_return_period = 4);

}  // namespace mbstab

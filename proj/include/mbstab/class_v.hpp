#pragma once

#include "mbstab/binary_forms.hpp"
#include "mbstab/flow.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mbstab {

struct Box {
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;

  double diameter() const { return std::hypot(x1 - x0, y1 - y0); }
};

/// A fixed point the caller claims, with its homogeneous model.
struct DeclaredSingularity {
  Vec2 location{};
  BinaryForm form{std::vector<Rational>{1, 0, 1}};
  /// Symbolic germ in local coordinates q (q = 0 at the point).
  PlanarPolyField germ;
  /// The field expressed in the same local coordinates; empty means q -> F(location + q).
  std::function<Vec2(Vec2)> local_field;
  /// Radius of the region where the field must coincide with the germ.
  double radius = 0.0;
};

struct ClassVConfig {
  Box domain;
  std::vector<DeclaredSingularity> singularities;
  /// Transversals sampled for the recurrence and return-map conditions.
  std::vector<Transversal> transversals;
  int samples_per_transversal = 5;
  ReturnOptions returns;
  int max_return_period = 4;
  /// Closure tolerance for R^p(s) = s.
  double closure_tol = 1e-7;
  /// Quadtree depth for zero isolation.
  int max_depth = 9;
  /// Zero clusters wider than this fraction of the domain diameter are not isolated.
  double cluster_fraction = 0.05;
  /// Boundary points with outward normals; the field must be tangent there.
  std::vector<std::pair<Vec2, Vec2>> boundary_samples;
  double tangency_tol = 1e-9;
  double germ_tol = 1e-10;
};

struct ConditionResult {
  bool pass = false;
  /// Evidence from sampling rather than a symbolic or exhaustive argument.
  bool numerical = false;
  std::string detail;
};

struct ClassVReport {
  ConditionResult fixed_set;       // (a)
  ConditionResult non_recurrence;  // (b)
  ConditionResult return_map;      // (c)
  ConditionResult h_type;          // (d)
  ConditionResult boundary;
  int zero_clusters = 0;
  /// Largest minimal period of the sampled return maps (0 when no sample returned).
  int return_period = 0;
  int periodic_samples = 0;
  int non_returning_samples = 0;
  int recurrent_samples = 0;

  bool all_pass() const {
    return fixed_set.pass && non_recurrence.pass && return_map.pass && h_type.pass && boundary.pass;
  }
};

/// Zero isolation by quadtree: interval enclosures for polynomial fields,
/// a sampled Lipschitz bound otherwise. Returns box clusters as (center, diameter).
std::vector<std::pair<Vec2, double>> isolate_zeros(const FlowField& field, const Box& domain, int max_depth);

ClassVReport class_v_check(const FlowField& field, const ClassVConfig& config);

}  // namespace mbstab

#include "mbstab/class_v.hpp"

#include "mbstab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mbstab {

namespace {

double lipschitz_estimate(const FlowField& field, const Box& b) {
  constexpr int n = 64;
  const double h = 1e-6 * b.diameter();
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const Vec2 p{b.x0 + (b.x1 - b.x0) * i / n, b.y0 + (b.y1 - b.y0) * j / n};
      const Vec2 dx = (1.0 / (2 * h)) * (field(p + Vec2{h, 0}) - field(p - Vec2{h, 0}));
      const Vec2 dy = (1.0 / (2 * h)) * (field(p + Vec2{0, h}) - field(p - Vec2{0, h}));
      worst = std::max(worst, std::sqrt(dot(dx, dx) + dot(dy, dy)));
    }
  }
  return 2.0 * worst + 1e-12;
}

struct Quadtree {
  const FlowField& field;
  double lipschitz = 0.0;
  int max_depth = 0;
  std::vector<Box> leaves;

  bool may_vanish(const Box& b) const {
    const Vec2 c{0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)};
    const double r = 0.5 * b.diameter();
    if (field.inside) {
      bool any = field.inside(c);
      for (double x : {b.x0, b.x1}) {
        for (double y : {b.y0, b.y1}) any = any || field.inside({x, y});
      }
      if (!any) return false;
    }
    if (field.polynomial) {
      const Interval X{b.x0, b.x1};
      const Interval Y{b.y0, b.y1};
      return field.polynomial->u.enclose(X, Y).contains(0.0) && field.polynomial->v.enclose(X, Y).contains(0.0);
    }
    return norm(field(c)) <= lipschitz * r;
  }

  void run(const Box& b, int depth) {
    if (!may_vanish(b)) return;
    if (depth == max_depth) {
      leaves.push_back(b);
      return;
    }
    const double xm = 0.5 * (b.x0 + b.x1);
    const double ym = 0.5 * (b.y0 + b.y1);
    run({b.x0, xm, b.y0, ym}, depth + 1);
    run({xm, b.x1, b.y0, ym}, depth + 1);
    run({b.x0, xm, ym, b.y1}, depth + 1);
    run({xm, b.x1, ym, b.y1}, depth + 1);
  }
};

}  // namespace

std::vector<std::pair<Vec2, double>> isolate_zeros(const FlowField& field, const Box& domain, int max_depth) {
  Quadtree tree{field, field.polynomial ? 0.0 : lipschitz_estimate(field, domain), max_depth, {}};
  tree.run(domain, 0);
  const auto& boxes = tree.leaves;
  const std::size_t n = boxes.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const double wx = (domain.x1 - domain.x0) / (1 << max_depth);
  const double wy = (domain.y1 - domain.y0) / (1 << max_depth);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(boxes[i].x0 - boxes[j].x0) <= 1.01 * wx && std::abs(boxes[i].y0 - boxes[j].y0) <= 1.01 * wy) {
        parent[find(static_cast<int>(j))] = find(static_cast<int>(i));
      }
    }
  }
  std::vector<Box> hull(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const int r = find(static_cast<int>(i));
    if (!used[r]) {
      hull[r] = boxes[i];
      used[r] = true;
    } else {
      hull[r] = {std::min(hull[r].x0, boxes[i].x0), std::max(hull[r].x1, boxes[i].x1),
                 std::min(hull[r].y0, boxes[i].y0), std::max(hull[r].y1, boxes[i].y1)};
    }
  }
  std::vector<std::pair<Vec2, double>> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!used[i]) continue;
    const Box& h = hull[i];
    out.push_back({{0.5 * (h.x0 + h.x1), 0.5 * (h.y0 + h.y1)}, h.diameter()});
  }
  return out;
}

ClassVReport class_v_check(const FlowField& field, const ClassVConfig& config) {
  ClassVReport rep;
  const double diam = config.domain.diameter();
  const double cluster_limit = config.cluster_fraction * diam;

  // (a) isolated zeros only; every cluster near a declared point.
  const auto clusters = isolate_zeros(field, config.domain, config.max_depth);
  rep.zero_clusters = static_cast<int>(clusters.size());
  int wide = 0;
  int undeclared = 0;
  std::ostringstream undeclared_detail;
  for (const auto& [center, size] : clusters) {
    if (size > cluster_limit) ++wide;
    bool near = false;
    for (const auto& s : config.singularities) {
      near = near || norm(field.displacement(s.location, center)) <= 0.5 * size + cluster_limit;
    }
    if (!near) {
      ++undeclared;
      undeclared_detail << " (" << center[0] << ", " << center[1] << ")";
    }
  }
  rep.fixed_set.pass = wide == 0;
  rep.fixed_set.numerical = !field.polynomial;
  rep.fixed_set.detail = std::to_string(clusters.size()) + " zero clusters, " + std::to_string(wide) +
                         " wider than " + std::to_string(cluster_limit);

  // (b) and (c) from sampled transversals.
  int recurrent = 0;
  int periodic = 0;
  int non_returning = 0;
  int period = 0;
  std::string first_bad;
  for (const auto& d : config.transversals) {
    const ReturnMap map = first_return(field, d, config.samples_per_transversal, config.returns);
    for (const ReturnSample& s : map.samples) {
      if (!s.returned) {
        ++non_returning;
        continue;
      }
      double offset = s.image_offset;
      int p = 1;
      while (std::abs(offset - s.offset) > config.closure_tol && p < config.max_return_period) {
        const ReturnSample next = first_return_sample(field, d, offset, config.returns);
        if (!next.returned) break;
        offset = next.image_offset;
        ++p;
      }
      if (std::abs(offset - s.offset) <= config.closure_tol) {
        ++periodic;
        period = std::max(period, p);
      } else {
        ++recurrent;
        if (first_bad.empty()) {
          const Vec2 x = d.point(s.offset);
          first_bad = "(" + std::to_string(x[0]) + ", " + std::to_string(x[1]) + ")";
        }
      }
    }
  }
  rep.periodic_samples = periodic;
  rep.non_returning_samples = non_returning;
  rep.recurrent_samples = recurrent;
  rep.return_period = period;
  rep.non_recurrence = {recurrent == 0, true,
                        std::to_string(non_returning) + " non-returning samples, " + std::to_string(recurrent) +
                            " returning without closing" + (first_bad.empty() ? "" : "; first at " + first_bad)};
  rep.return_map = {recurrent == 0, true,
                    periodic == 0 ? std::string("vacuous: no sample returned")
                                  : std::to_string(periodic) + " periodic samples, period " + std::to_string(period)};

  // (d) declared germs: symbolic identity plus agreement of the field with the germ near the point.
  bool germs_ok = true;
  std::ostringstream germ_detail;
  for (std::size_t i = 0; i < config.singularities.size(); ++i) {
    const auto& s = config.singularities[i];
    const bool symbolic = s.germ == hamiltonian_of(s.form) && s.form.degree() >= 2 && is_square_free(s.form);
    const Vec2 at = field(s.location);
    const bool fixed = at[0] == 0.0 && at[1] == 0.0;
    double worst = 0.0;
    constexpr int n = 8;
    for (int a = -n; a <= n && s.radius > 0; ++a) {
      for (int b = -n; b <= n; ++b) {
        const Vec2 q{s.radius * a / n, s.radius * b / n};
        if (norm(q) > s.radius) continue;
        const Vec2 actual = s.local_field ? s.local_field(q) : field(s.location + q);
        const Vec2 model = s.germ.evaluate(q);
        worst = std::max(worst, norm(actual - model) / (1.0 + norm(model)));
      }
    }
    const bool agrees = worst <= config.germ_tol;
    if (!(symbolic && fixed && agrees)) {
      germs_ok = false;
      germ_detail << " singularity " << i << ":" << (symbolic ? "" : " germ is not hamiltonian_of(form)")
                  << (fixed ? "" : " field does not vanish") << (agrees ? "" : " field differs from germ by ")
                  << (agrees ? "" : std::to_string(worst));
    }
  }
  rep.h_type.pass = germs_ok && undeclared == 0;
  rep.h_type.detail = std::to_string(config.singularities.size()) + " declared germs" +
                      (germs_ok ? "" : ";" + germ_detail.str()) +
                      (undeclared ? "; undeclared zeros near" + undeclared_detail.str() : "");

  double worst_normal = 0.0;
  for (const auto& [p, n] : config.boundary_samples) {
    const Vec2 f = field(p);
    worst_normal = std::max(worst_normal, std::abs(dot(f, n)) / (norm(n) * (1.0 + norm(f))));
  }
  rep.boundary = {worst_normal <= config.tangency_tol, false,
                  std::to_string(config.boundary_samples.size()) + " boundary samples, max normal component " +
                      std::to_string(worst_normal)};
  return rep;
}

}  // namespace mbstab

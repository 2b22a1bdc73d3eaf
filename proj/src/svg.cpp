#include "mbstab/svg.hpp"

#include "mbstab/reeb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

namespace mbstab {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* node_colour(ReebNodeKind kind) {
  switch (kind) {
    case ReebNodeKind::Critical: return "#c0392b";
    case ReebNodeKind::Marker: return "#2980b9";
    case ReebNodeKind::Regular: return "#7f8c8d";
  }
  return "#000";
}

}  // namespace

std::string reeb_svg(const ReebGraph& graph) {
  const bool circle = graph.mode == FieldMode::CircleValued;
  double lo = 0.0;
  double hi = 1.0;
  if (!circle && !graph.nodes.empty()) {
    lo = hi = graph.nodes.front().value;
    for (const auto& n : graph.nodes) {
      lo = std::min(lo, n.value);
      hi = std::max(hi, n.value);
    }
  }
  // Nodes with equal value are spread horizontally (or radially) in id order.
  std::map<double, int> seen;
  std::vector<std::array<double, 2>> at(graph.nodes.size());
  std::map<double, int> total;
  for (const auto& n : graph.nodes) ++total[n.value];
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    const int slot = seen[n.value]++;
    const int count = total[n.value];
    if (circle) {
      const double a = 2.0 * std::numbers::pi * n.value - std::numbers::pi / 2;
      const double r = (kSize / 2 - kMargin) * (count == 1 ? 1.0 : 0.6 + 0.4 * slot / (count - 1));
      at[i] = {kSize / 2 + r * std::cos(a), kSize / 2 + r * std::sin(a)};
    } else {
      const double t = hi > lo ? (n.value - lo) / (hi - lo) : 0.5;
      const double x = kMargin + (kSize - 2 * kMargin) * (slot + 1.0) / (count + 1.0);
      at[i] = {x, kSize - kMargin - t * (kSize - 2 * kMargin)};
    }
  }
  auto index = [&](int id) {
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
      if (graph.nodes[i].id == id) return i;
    }
    return std::size_t{0};
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& e : graph.edges) {
    const auto a = at[index(e.from)];
    const auto b = at[index(e.to)];
    if (e.from == e.to) {
      out << "<circle cx=\"" << fmt(a[0]) << "\" cy=\"" << fmt(a[1] - 18) << "\" r=\"18\" fill=\"none\" stroke=\"#333\"/>\n";
    } else {
      out << "<line x1=\"" << fmt(a[0]) << "\" y1=\"" << fmt(a[1]) << "\" x2=\"" << fmt(b[0]) << "\" y2=\""
          << fmt(b[1]) << "\" stroke=\"#333\"/>\n";
    }
  }
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    out << "<circle cx=\"" << fmt(at[i][0]) << "\" cy=\"" << fmt(at[i][1]) << "\" r=\"6\" fill=\""
        << node_colour(n.kind) << "\"/>\n";
    out << "<text x=\"" << fmt(at[i][0] + 9) << "\" y=\"" << fmt(at[i][1] + 4)
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << n.id << " (" << fmt(n.value) << ")</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string phase_portrait_svg(const std::vector<Trajectory>& trajectories, const Box& box,
                               const std::function<double(Vec2)>& level, int level_count) {
  const double sx = (kSize - 2 * kMargin) / (box.x1 - box.x0);
  const double sy = (kSize - 2 * kMargin) / (box.y1 - box.y0);
  auto px = [&](Vec2 p) {
    return std::array<double, 2>{kMargin + (p[0] - box.x0) * sx, kSize - kMargin - (p[1] - box.y0) * sy};
  };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (level) {
    constexpr int N = 120;
    std::vector<double> g((N + 1) * (N + 1));
    auto grid = [&](int i, int j) {
      return Vec2{box.x0 + (box.x1 - box.x0) * i / N, box.y0 + (box.y1 - box.y0) * j / N};
    };
    double lo = INFINITY;
    double hi = -INFINITY;
    for (int i = 0; i <= N; ++i) {
      for (int j = 0; j <= N; ++j) {
        const double v = level(grid(i, j));
        g[i * (N + 1) + j] = v;
        if (std::isfinite(v)) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
    }
    out << "<g stroke=\"#bbb\" stroke-width=\"0.8\" fill=\"none\">\n";
    for (int l = 1; l <= level_count && hi > lo; ++l) {
      const double c = lo + (hi - lo) * l / (level_count + 1);
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          const Vec2 corner[4] = {grid(i, j), grid(i + 1, j), grid(i + 1, j + 1), grid(i, j + 1)};
          const double v[4] = {g[i * (N + 1) + j], g[(i + 1) * (N + 1) + j], g[(i + 1) * (N + 1) + j + 1],
                               g[i * (N + 1) + j + 1]};
          std::vector<Vec2> hits;
          for (int e = 0; e < 4; ++e) {
            const double a = v[e] - c;
            const double b = v[(e + 1) % 4] - c;
            if ((a < 0) != (b < 0)) {
              const double t = a / (a - b);
              hits.push_back(corner[e] + t * (corner[(e + 1) % 4] - corner[e]));
            }
          }
          for (std::size_t h = 0; h + 1 < hits.size(); h += 2) {
            const auto a = px(hits[h]);
            const auto b = px(hits[h + 1]);
            out << "<line x1=\"" << fmt(a[0]) << "\" y1=\"" << fmt(a[1]) << "\" x2=\"" << fmt(b[0]) << "\" y2=\""
                << fmt(b[1]) << "\"/>\n";
          }
        }
      }
    }
    out << "</g>\n";
  }

  out << "<g stroke=\"#c0392b\" stroke-width=\"1.2\" fill=\"none\">\n";
  for (const auto& t : trajectories) {
    out << "<polyline points=\"";
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      const auto p = px(t.points[i]);
      out << (i ? " " : "") << fmt(p[0]) << "," << fmt(p[1]);
    }
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace mbstab

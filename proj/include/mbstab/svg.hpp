#pragma once

#include "mbstab/class_v.hpp"
#include "mbstab/integrator.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mbstab {

/// Trajectory polylines over level curves of `level` (marching squares on a
/// 120x120 grid). An empty level function draws trajectories only.
std::string phase_portrait_svg(const std::vector<Trajectory>& trajectories, const Box& box,
                               const std::function<double(Vec2)>& level, int level_count = 12);

}  // namespace mbstab

// Minimal deterministic SVG output: log-log profile plots and curve traces.
#pragma once

#include <string>
#include <vector>

#include "lab/geometry.hpp"
#include "lab/metrics.hpp"

namespace lab {

// log-log polyline of a (scale, value) profile; zero entries are clamped to
// the axis floor so empty profiles come out as an axis-only plot.
std::string profile_svg(const std::vector<ProfilePoint>& profile, const std::string& title);

std::string curve_svg(const SampledCurve& c, const std::string& title);

}  // namespace lab

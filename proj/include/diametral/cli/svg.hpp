#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diametral/planar.hpp"
#include "diametral/surface.hpp"

namespace diametral::cli {

// Polygon with its diameter pairs highlighted and optional labeled points.
// Byte output is deterministic for fixed inputs.
std::string polygon_svg(const planar::ConvexPolygon& poly, const DiameterResult& diameter,
                        const std::vector<std::pair<planar::Point2, std::string>>& labels);

// Unfolded face strip with the straight geodesic segment.
std::string strip_svg(const surface::UnfoldedStrip& strip);

}  // namespace diametral::cli

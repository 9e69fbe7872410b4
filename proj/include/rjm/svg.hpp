#pragma once

// SVG figures of Newton polygons and tongues.

#include <string>

#include "rjm/tongue.hpp"

namespace rjm {

/// Lattice dots, hull, right outer edges and the witness edge of `cert`
/// (given in the certificate's frame; mapped back through the swap).
std::string render_polygon_svg(const NewtonPolygon& polygon, const CriterionCertificate* cert = nullptr);

/// Boundary curve, half-line, segment on x = x0, outline of B and the level
/// polylines. x is drawn on a log scale when x_max / x0 > 100.
std::string render_tongue_svg(const TongueRegion& region, const LevelSetReport& levels);

}  // namespace rjm

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "aaso/coverage.hpp"

namespace aaso::report {

struct SectorGeometry {
  coverage::Point apex;
  /// apex + R (cos(theta - alpha/2), sin(theta - alpha/2))
  coverage::Point start;
  /// apex + R (cos(theta + alpha/2), sin(theta + alpha/2))
  coverage::Point end;
  bool large_arc = false;
  bool full_disc = false;
};

SectorGeometry sector_geometry(const coverage::Sensor &sensor);

/// Static SVG 1.1 drawing of the field and every sensing sector, in field
/// meters with the y axis pointing up. `covered`, when non-empty, shades the
/// uncovered cells.
std::string render_layout_svg(const coverage::CoverageField &field,
                              std::span<const coverage::Sensor> sensors,
                              std::string_view title,
                              std::span<const std::uint8_t> covered = {});

} // namespace aaso::report

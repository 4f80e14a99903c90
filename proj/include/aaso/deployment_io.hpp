#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aaso/coverage.hpp"

namespace aaso::coverage {

/// One sensor per line: x_m, y_m, radius_m, view_angle_deg, deviation_deg.
/// Blank lines and lines starting with '#' are ignored.
std::vector<Sensor> read_deployment(std::istream &in);
std::vector<Sensor> read_deployment_file(const std::string &path);

void write_deployment(std::ostream &out, std::span<const Sensor> sensors);
void write_deployment_file(const std::string &path,
                           std::span<const Sensor> sensors);

double degrees_to_radians(double deg);
double radians_to_degrees(double rad);

} // namespace aaso::coverage

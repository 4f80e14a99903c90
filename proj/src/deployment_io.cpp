#include "aaso/deployment_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace aaso::coverage {

double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }
double radians_to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

std::vector<Sensor> read_deployment(std::istream &in) {
  std::vector<Sensor> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    for (char &c : line)
      if (c == ',')
        c = ' ';
    std::istringstream fields(line);
    double v[5];
    for (double &x : v)
      if (!(fields >> x))
        throw DomainError("deployment line " + std::to_string(lineno) +
                          ": expected x, y, radius, view_deg, deviation_deg");
    std::string extra;
    if (fields >> extra)
      throw DomainError("deployment line " + std::to_string(lineno) +
                        ": trailing field '" + extra + "'");
    try {
      out.push_back(Sensor::make(v[0], v[1], v[2], degrees_to_radians(v[3]),
                                 degrees_to_radians(v[4])));
    } catch (const DomainError &e) {
      throw DomainError("deployment line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  return out;
}

std::vector<Sensor> read_deployment_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open deployment file '" + path + "'");
  return read_deployment(in);
}

void write_deployment(std::ostream &out, std::span<const Sensor> sensors) {
  out << "# x_m, y_m, radius_m, view_angle_deg, deviation_deg\n";
  char buf[160];
  for (const auto &s : sensors) {
    std::snprintf(buf, sizeof buf, "%.17g, %.17g, %.17g, %.17g, %.17g\n", s.x,
                  s.y, s.radius, radians_to_degrees(s.view_angle),
                  radians_to_degrees(s.deviation));
    out << buf;
  }
}

void write_deployment_file(const std::string &path,
                           std::span<const Sensor> sensors) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write deployment file '" + path + "'");
  write_deployment(out, sensors);
}

} // namespace aaso::coverage

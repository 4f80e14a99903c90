#include "aaso/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace aaso::report {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.7f", v);
  std::string s(buf);
  // Trim trailing zeros; keeps files small and diff-friendly.
  while (!s.empty() && s.back() == '0')
    s.pop_back();
  if (!s.empty() && s.back() == '.')
    s.pop_back();
  if (s == "-0")
    s = "0";
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '-':
      // "--" is not allowed inside comments; harmless elsewhere.
      out += (!out.empty() && out.back() == '-') ? "&#45;" : "-";
      break;
    default:
      out += c;
    }
  }
  return out;
}

} // namespace

SectorGeometry sector_geometry(const coverage::Sensor &sensor) {
  SectorGeometry g;
  g.apex = {sensor.x, sensor.y};
  const double half = sensor.view_angle / 2.0;
  const double a0 = sensor.deviation - half;
  const double a1 = sensor.deviation + half;
  g.start = {sensor.x + sensor.radius * std::cos(a0),
             sensor.y + sensor.radius * std::sin(a0)};
  g.end = {sensor.x + sensor.radius * std::cos(a1),
           sensor.y + sensor.radius * std::sin(a1)};
  g.large_arc = sensor.view_angle > std::numbers::pi;
  g.full_disc = sensor.view_angle >= 2.0 * std::numbers::pi;
  return g;
}

std::string render_layout_svg(const coverage::CoverageField &field,
                              std::span<const coverage::Sensor> sensors,
                              std::string_view title,
                              std::span<const std::uint8_t> covered) {
  const double L = field.length();
  const double W = field.width();
  const double margin = 0.02 * std::max(L, W);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  os << "<!-- " << escape(title) << " -->\n";
  os << "<!-- coordinates are field meters; screen transform: "
        "translate(0,"
     << num(W) << ") scale(1,-1) maps field y-up onto SVG y-down -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
     << "width=\"" << num(L + 2 * margin) << "\" height=\""
     << num(W + 2 * margin) << "\" viewBox=\"" << num(-margin) << " "
     << num(-margin) << " " << num(L + 2 * margin) << " "
     << num(W + 2 * margin) << "\">\n";
  os << "<title>" << escape(title) << "</title>\n";
  os << "<g transform=\"translate(0," << num(W) << ") scale(1,-1)\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(L) << "\" height=\"" << num(W)
     << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

  if (covered.size() == field.grid_count()) {
    const double step = field.interval();
    os << "<g fill=\"#f2b8b5\" stroke=\"none\">\n";
    for (std::size_t g = 0; g < covered.size(); ++g) {
      if (covered[g])
        continue;
      const std::size_t p = g % field.columns();
      const std::size_t q = g / field.columns();
      const double x0 = static_cast<double>(p) * step;
      const double y0 = static_cast<double>(q) * step;
      os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\""
         << num(std::min(step, L - x0)) << "\" height=\""
         << num(std::min(step, W - y0)) << "\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g fill=\"#4a90d9\" fill-opacity=\"0.35\" stroke=\"#1f4e79\" "
        "stroke-width=\"0.5\">\n";
  for (const auto &s : sensors) {
    const auto geo = sector_geometry(s);
    if (geo.full_disc) {
      os << "<circle cx=\"" << num(s.x) << "\" cy=\"" << num(s.y) << "\" r=\""
         << num(s.radius) << "\"/>\n";
      continue;
    }
    os << "<path d=\"M " << num(geo.apex.x) << " " << num(geo.apex.y) << " L "
       << num(geo.start.x) << " " << num(geo.start.y) << " A "
       << num(s.radius) << " " << num(s.radius) << " 0 "
       << (geo.large_arc ? 1 : 0) << " 1 " << num(geo.end.x) << " "
       << num(geo.end.y) << " Z\"/>\n";
  }
  os << "</g>\n";
  os << "<g fill=\"black\">\n";
  for (const auto &s : sensors)
    os << "<circle cx=\"" << num(s.x) << "\" cy=\"" << num(s.y)
       << "\" r=\"1.5\"/>\n";
  os << "</g>\n</g>\n</svg>\n";
  return os.str();
}

} // namespace aaso::report

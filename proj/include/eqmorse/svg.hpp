#pragma once

// SVG figure of a planar stratification: boundary loops in grey, inward
// arcs solid, outward arcs dashed, tangencies filled when in the plus
// stratum and hollow otherwise, zeros labelled with stabilizer and ch vector.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "eqmorse/error.hpp"
#include "eqmorse/report.hpp"

namespace eqmorse {

namespace detail {

inline std::string fmt(const char* f, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

inline std::array<double, 2> loop_lerp(const std::vector<std::array<double, 2>>& pts, double s) {
  const auto m = static_cast<long long>(pts.size());
  double fl = std::floor(s);
  long long i = static_cast<long long>(fl);
  double f = s - fl;
  const auto& a = pts[static_cast<std::size_t>(((i % m) + m) % m)];
  const auto& b = pts[static_cast<std::size_t>((((i + 1) % m) + m) % m)];
  return {(1.0 - f) * a[0] + f * b[0], (1.0 - f) * a[1] + f * b[1]};
}

}  // namespace detail

/// SVG text for the stratification; zeros are optional.
inline std::string svg_document(const StrataRecord& st, const IndexRecord* index = nullptr, double size = 480.0) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& loop : st.loops)
    for (const auto& p : loop) {
      lo_x = std::min(lo_x, p[0]);
      hi_x = std::max(hi_x, p[0]);
      lo_y = std::min(lo_y, p[1]);
      hi_y = std::max(hi_y, p[1]);
    }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double pad = 0.08 * size;
  const double k = (size - 2.0 * pad) / span;
  auto sx = [&](double x) { return pad + (x - lo_x) * k; };
  auto sy = [&](double y) { return size - pad - (y - lo_y) * k; };  // y up
  auto pt = [&](const std::array<double, 2>& p) { return detail::fmt("%.3f,%.3f", sx(p[0]), sy(p[1])); };

  std::string out;
  out += detail::fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", size, size);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& loop : st.loops) {
    out += "<polygon class=\"loop\" fill=\"#f4f4f4\" stroke=\"#bbbbbb\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < loop.size(); ++i) out += (i ? " " : "") + pt(loop[i]);
    out += "\"/>\n";
  }

  for (const auto& arc : st.arcs) {
    const auto& loop = st.loops.at(static_cast<std::size_t>(arc.loop));
    const double m = static_cast<double>(loop.size());
    double a = arc.begin < 0 ? 0.0 : arc.begin_position;
    double b = arc.begin < 0 ? m : arc.end_position;
    if (b <= a) b += m;
    std::vector<std::array<double, 2>> path{detail::loop_lerp(loop, a)};
    for (double s = std::floor(a) + 1.0; s < b; s += 1.0) path.push_back(detail::loop_lerp(loop, s));
    path.push_back(detail::loop_lerp(loop, b));
    out += arc.sign > 0 ? "<polyline class=\"arc-plus\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"3\""
                        : "<polyline class=\"arc-minus\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" stroke-dasharray=\"6,4\"";
    out += " points=\"";
    for (std::size_t i = 0; i < path.size(); ++i) out += (i ? " " : "") + pt(path[i]);
    out += "\"/>\n";
  }

  for (const auto& t : st.tangencies) {
    out += "<circle class=\"" + std::string(t.plus ? "tangency-plus" : "tangency-minus") + "\" " +
           detail::fmt("cx=\"%.3f\" cy=\"%.3f\"", sx(t.location[0]), sy(t.location[1])) + " r=\"5\" stroke=\"black\" stroke-width=\"1.5\" fill=\"" +
           (t.plus ? "black" : "white") + "\"/>\n";
  }

  if (index) {
    for (const auto& z : index->zeros) {
      if (z.location.size() != 2) continue;
      const double x = sx(z.location[0]), y = sy(z.location[1]);
      out += "<path class=\"zero\" d=\"M" + detail::fmt("%.3f %.3f", x - 5, y - 5) + " L" + detail::fmt("%.3f %.3f", x + 5, y + 5) + " M" +
             detail::fmt("%.3f %.3f", x - 5, y + 5) + " L" + detail::fmt("%.3f %.3f", x + 5, y - 5) + "\" stroke=\"#207020\" stroke-width=\"2\"/>\n";
      std::string ch;
      for (std::size_t i = 0; i < z.local_characters.size(); ++i) ch += (i ? "," : "") + std::to_string(z.local_characters[i]);
      out += "<text class=\"zero-label\" " + detail::fmt("x=\"%.3f\" y=\"%.3f\"", x + 7, y - 7) +
             " font-family=\"monospace\" font-size=\"11\">" + z.stabilizer + " (" + ch + ") " + (z.sign > 0 ? "+" : "-") + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

/// Writes the figure. Returns false (nothing written) when there is no planar
/// stratification to draw.
inline bool render_svg(const StrataRecord& st, const IndexRecord* index, const std::string& path) {
  if (st.loops.empty()) return false;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot write " + path);
  f << svg_document(st, index);
  if (!f) throw Error(ErrorKind::IoError, "write to " + path + " failed");
  return true;
}

}  // namespace eqmorse

#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "krh/version.hpp"

namespace krh::tool {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_header(std::ostream& os, const std::string& subcommand, const std::string& params) {
  os << "# krh " << krh::kVersion << "\n";
  os << "# subcommand: " << subcommand << "\n";
  os << "# params: " << params << "\n";
}

namespace {

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
};

}  // namespace

void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<Series>& series) {
  Box box;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      box.xmin = std::min(box.xmin, x);
      box.xmax = std::max(box.xmax, x);
      box.ymin = std::min(box.ymin, y);
      box.ymax = std::max(box.ymax, y);
    }
  if (!(box.xmin < box.xmax)) box.xmax = box.xmin + 1.0;
  if (!(box.ymin < box.ymax)) box.ymax = box.ymin + 1.0;

  const double width = 800.0, height = 500.0;
  const double left = 70.0, right = 20.0, top = 40.0, bottom = 50.0;
  auto sx = [&](double x) {
    return left + (x - box.xmin) / (box.xmax - box.xmin) * (width - left - right);
  };
  auto sy = [&](double y) {
    return height - bottom - (y - box.ymin) / (box.ymax - box.ymin) * (height - top - bottom);
  };

  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
  os << "  <text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
     << "</text>\n";
  os << "  <line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
     << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
  os << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i < 5; ++i) {
    double fx = box.xmin + (box.xmax - box.xmin) * i / 4.0;
    double fy = box.ymin + (box.ymax - box.ymin) * i / 4.0;
    os << "  <text x=\"" << sx(fx) << "\" y=\"" << height - bottom + 18.0
       << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt17(fx).substr(0, 7) << "</text>\n";
    os << "  <text x=\"" << left - 6.0 << "\" y=\"" << sy(fy) + 3.0
       << "\" text-anchor=\"end\" font-size=\"10\">" << fmt17(fy).substr(0, 7) << "</text>\n";
  }
  const char* colors[] = {"steelblue", "firebrick", "seagreen", "darkorange"};
  int ci = 0;
  for (const auto& s : series) {
    os << "  <polyline fill=\"none\" stroke=\"" << colors[ci % 4] << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points) os << sx(x) << "," << sy(y) << " ";
    os << "\"/>\n";
    os << "  <text x=\"" << width - right - 8.0 << "\" y=\"" << top + 16.0 * (ci + 1)
       << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << colors[ci % 4] << "\">" << s.name
       << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
}

}  // namespace krh::tool

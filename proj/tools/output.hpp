#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace krh::tool {

/// 17 significant digits: round-trip exact for doubles.
std::string fmt17(double x);

/// '#'-prefixed header carrying version, subcommand, the full parameter echo,
/// and the seed; every output file starts with it.
void write_header(std::ostream& os, const std::string& subcommand, const std::string& params);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// Fixed 800x500 viewbox, one polyline per series, 5 ticks per axis. The SVG
/// is decorative; data lives in the CSV next to it.
void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<Series>& series);

}  // namespace krh::tool

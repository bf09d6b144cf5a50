#pragma once

#include <string>
#include <vector>

namespace cogmap {

struct MapPoint {
  double x = 0.0;
  double y = 0.0;
  std::string word;
  std::string category;
  bool validation = false;
};

// 800x800 scatter, one palette color per category (in `categories` order),
// validation points ringed in red, legend in the corner. The only
// nondeterministic content is the "<!-- generated ... -->" line.
std::string render_svg(const std::vector<MapPoint>& points, const std::vector<std::string>& categories,
                       const std::string& title);

}  // namespace cogmap

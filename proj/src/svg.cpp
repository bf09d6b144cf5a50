#include "cogmap/svg.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>

#include "cogmap/error.hpp"

namespace cogmap {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
constexpr double kCanvas = 800.0;
constexpr double kMargin = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<MapPoint>& points, const std::vector<std::string>& categories,
                       const std::string& title) {
  if (points.empty()) throw ValidationError("svg: projection is empty");
  for (const auto& p : points) {
    if (p.category.empty()) throw ValidationError("svg: point '" + p.word + "' has an empty category");
    if (std::find(categories.begin(), categories.end(), p.category) == categories.end())
      throw ValidationError("svg: point '" + p.word + "' has unknown category '" + p.category + "'");
  }

  double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
  for (const auto& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  // Uniform scale on both axes so distances keep their meaning.
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  const double scale = (kCanvas - 2.0 * kMargin) / span;
  const double off_x = kMargin + ((kCanvas - 2.0 * kMargin) - (max_x - min_x) * scale) / 2.0;
  const double off_y = kMargin + ((kCanvas - 2.0 * kMargin) - (max_y - min_y) * scale) / 2.0;

  auto color_of = [&](const std::string& category) {
    const auto idx = static_cast<std::size_t>(std::find(categories.begin(), categories.end(), category) -
                                              categories.begin());
    return kPalette[idx % std::size(kPalette)];
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<!-- generated " + utc_timestamp() + " -->\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
  svg += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" +
         escape(title) + "</text>\n";
  svg += "<g id=\"points\">\n";
  for (const auto& p : points) {
    const double cx = off_x + (p.x - min_x) * scale;
    const double cy = kCanvas - (off_y + (p.y - min_y) * scale);
    svg += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + (p.validation ? "7" : "5") +
           "\" fill=\"" + color_of(p.category) + "\"";
    if (p.validation) svg += " stroke=\"#d62728\" stroke-width=\"2.5\"";
    svg += "><title>" + escape(p.word) + "</title></circle>\n";
  }
  svg += "</g>\n<g id=\"legend\" font-family=\"sans-serif\" font-size=\"14\">\n";
  double y = 60.0;
  for (const auto& c : categories) {
    svg += "<rect x=\"20\" y=\"" + num(y - 10) + "\" width=\"12\" height=\"12\" fill=\"" + color_of(c) + "\"/>\n";
    svg += "<text x=\"40\" y=\"" + num(y) + "\">" + escape(c) + "</text>\n";
    y += 22.0;
  }
  svg += "<rect x=\"20\" y=\"" + num(y - 10) +
         "\" width=\"12\" height=\"12\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.5\"/>\n";
  svg += "<text x=\"40\" y=\"" + num(y) + "\">validation</text>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace cogmap

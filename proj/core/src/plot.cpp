#include "sns/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sns {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

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

}  // namespace

std::string render_svg(std::span<const ChartPoint> path, const std::string& title) {
  if (path.empty()) throw std::invalid_argument("render_svg: empty chart path");

  double lo = 0.0;
  double hi = 0.0;
  bool has_upper = false;
  bool has_lower = false;
  for (const ChartPoint& p : path) {
    lo = std::min({lo, p.value, p.limit, -std::abs(p.limit)});
    hi = std::max({hi, p.value, p.limit});
    (p.limit >= 0.0 ? has_upper : has_lower) = true;
  }
  // Two-sided bands (EWMA, both-sided CUSUM) mirror the limit.
  const bool mirrored = has_upper && has_lower;
  if (!has_lower) lo = std::min(lo, 0.0);
  if (hi == lo) hi = lo + 1.0;

  const double x_span = std::max<double>(1.0, static_cast<double>(path.size() - 1));
  auto sx = [&](std::size_t k) { return kMargin + (kWidth - 2 * kMargin) * static_cast<double>(k) / x_span; };
  auto sy = [&](double v) { return kHeight - kMargin - (kHeight - 2 * kMargin) * (v - lo) / (hi - lo); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
         fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
  if (!title.empty()) svg += "<title>" + escape(title) + "</title>\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<line class=\"axis\" x1=\"" + fmt(sx(0)) + "\" y1=\"" + fmt(sy(0.0)) + "\" x2=\"" +
         fmt(sx(path.size() - 1)) + "\" y2=\"" + fmt(sy(0.0)) + "\" stroke=\"#999\"/>\n";

  auto limit_path = [&](double sign) {
    std::string d;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const double v = mirrored ? sign * std::abs(path[k].limit) : path[k].limit;
      d += (k == 0 ? "M" : " L") + fmt(sx(k)) + "," + fmt(sy(v));
    }
    return "<path class=\"limit\" d=\"" + d + "\" fill=\"none\" stroke=\"red\" stroke-dasharray=\"4 3\"/>\n";
  };
  if (mirrored) {
    svg += limit_path(1.0);
    svg += limit_path(-1.0);
  } else {
    svg += limit_path(1.0);
  }

  svg += "<polyline class=\"statistic\" fill=\"none\" stroke=\"black\" points=\"";
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k > 0) svg += ' ';
    svg += fmt(sx(k)) + "," + fmt(sy(path[k].value));
  }
  svg += "\"/>\n";

  const auto first = std::find_if(path.begin(), path.end(), [](const ChartPoint& p) { return p.signal; });
  if (first != path.end()) {
    const auto k = static_cast<std::size_t>(first - path.begin());
    svg += "<circle class=\"signal\" cx=\"" + fmt(sx(k)) + "\" cy=\"" + fmt(sy(first->value)) +
           "\" r=\"5\" fill=\"none\" stroke=\"blue\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::filesystem::path& file, std::span<const ChartPoint> path,
               const std::string& title) {
  const std::string svg = render_svg(path, title);
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot: cannot open " + file.string());
  out << svg;
  if (!out) throw std::runtime_error("emit_plot: failed writing " + file.string());
}

}  // namespace sns

#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "sns/charts.hpp"

namespace sns {

/// Renders a chart path as a standalone SVG document: one <polyline> for the
/// statistic, a <path> per limit band, a zero axis, and one <circle
/// class="signal"> at the first signalling step (if any). Output depends only
/// on the input. Throws std::invalid_argument for an empty path.
std::string render_svg(std::span<const ChartPoint> path, const std::string& title = "");

/// Writes render_svg() to `file`. Throws std::runtime_error if it cannot be written.
void emit_plot(const std::filesystem::path& file, std::span<const ChartPoint> path,
               const std::string& title = "");

}  // namespace sns

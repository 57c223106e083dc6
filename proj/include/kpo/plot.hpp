// Copyright 2026 The kpoholo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dependency-free SVG rendering of campaign rows.

#include <filesystem>
#include <string>
#include <vector>

#include "kpo/campaign.hpp"
#include "kpo/wigner.hpp"

namespace kpo {

enum class PlotKind { kAuto, kHeatmap, kLines };

struct PlotSpec {
  std::filesystem::path path;
  std::string title;
  PlotKind kind = PlotKind::kAuto;
};

/// Axis label in units of K, e.g. "Ω/K" for omega.
std::string axis_label(const std::string& axis);

/// Heatmaps for two-axis sweeps (value = fidelity, or W for Wigner rows),
/// one polyline per gate or noise series otherwise. Throws
/// ErrorKind::kInvalidArgument on empty input without touching the file.
std::string render_svg(const std::vector<ResultRow>& rows, const PlotSpec& spec);

/// render_svg written to spec.path; returns the path.
std::filesystem::path emit_plot(const std::vector<ResultRow>& rows, const PlotSpec& spec);

std::filesystem::path emit_wigner_plot(const WignerGrid& grid, const PlotSpec& spec);

}  // namespace kpo

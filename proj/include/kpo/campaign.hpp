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

// Campaign execution: fans sweep points out to a worker pool, collects
// results in canonical order and writes CSV, JSON manifest and optional SVG.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "kpo/config.hpp"

namespace kpo {

struct ResultRow {
  std::string campaign;
  std::string gate;  // empty for gate-free campaigns
  std::vector<std::pair<std::string, double>> axes;
  double fidelity = 0.0;
  double leakage = 0.0;
  double wall_time = 0.0;
  IntegratorStats stats;
  bool failed = false;
  bool clipped = false;
  std::string error;

  double axis(const std::string& name) const;
};

struct CampaignOptions {
  int workers = 1;
  bool plot = false;
  bool write_files = true;
};

struct CampaignResult {
  CampaignType campaign = CampaignType::kSingleGate;
  std::vector<ResultRow> rows;
  std::vector<std::string> columns;
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
  std::filesystem::path plot_path;
  std::vector<std::string> warnings;
  double wall_time = 0.0;

  bool has_fidelity() const;
  std::size_t failures() const;
  /// 0 when every row succeeded, 2 for a partial campaign.
  int exit_code() const;
};

/// Runs every sweep point. Row failures are recorded, not thrown; I/O
/// problems raise ErrorKind::kIo.
CampaignResult run_campaign(const ExperimentConfig& cfg, const CampaignOptions& options = {});

/// CSV text (header + rows) exactly as written to disk.
std::string campaign_csv(const CampaignResult& result);
std::string csv_line(const ResultRow& row, bool with_fidelity);

/// Worker count: an explicit flag wins, then the environment variable
/// KPO_WORKERS, then the config value.
int resolve_workers(int flag_value, int config_value);

/// Library call behind a single gate row; used by the runner and by
/// reproducibility checks.
ResultRow evaluate_gate_point(const ExperimentConfig& cfg, const GateSpec& gate, double theta,
                              double phi, double omega, const NoiseParams& noise,
                              const LogicalBasis& basis);

}  // namespace kpo

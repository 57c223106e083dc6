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

// Experiment configuration in the "kpo-flat/1" dialect:
//
//   # comment
//   [kpo]                  optional section header, prefixes following keys
//   alpha_squared = 2.34
//   campaign.gate = NOT    dotted keys work with or without sections
//   sweep.omega = 0.02, 0.05, logspace(0.1, 0.3, 3)
//   gate.theta = 3pi/2
//
// Scalars accept arithmetic over numbers and `pi`; lists are comma separated
// and may contain linspace(a, b, n) / logspace(a, b, n) items.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpo/dynamics.hpp"
#include "kpo/error.hpp"
#include "kpo/wigner.hpp"

namespace kpo {

inline constexpr std::string_view kConfigDialect = "kpo-flat/1";

enum class CampaignType {
  kSpectrum,
  kWigner,
  kSingleGate,
  kTwoQubitGate,
  kSweepThetaPhi,
  kSweepOmega,
  kNoiseGrid,
  kAmplitudeGrid,
};

std::string_view to_string(CampaignType c);
std::optional<CampaignType> parse_campaign_type(std::string_view name);

struct GateSpec {
  std::optional<NamedGate> named;
  double theta = 0.0;
  double phi = 0.0;
  double gamma = kPi;
  bool two_qubit = false;

  std::string label() const;
};

struct ExperimentConfig {
  CampaignType campaign = CampaignType::kSingleGate;
  KpoParams kpo;
  std::vector<GateSpec> gates;  // one entry except for sweep-omega
  double omega_rabi = 0.0;
  NoiseParams noise;
  std::vector<double> omegas;
  std::vector<double> thetas;
  std::vector<double> phis;
  std::vector<double> kappa_alpha;
  std::vector<double> n_th;
  std::vector<double> kappa_phi;
  std::vector<double> d_omega_s;
  std::vector<double> d_omega_t;
  std::string wigner_state = "even-cat";
  WignerWindow wigner;
  EvolutionConfig evolution;
  bool renormalize_qpt = false;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  int workers = 1;
  bool plot = false;
  /// Every resolved key with its canonical value, sorted by key.
  std::map<std::string, std::string> resolved;
};

struct ValidationIssue {
  std::string path;
  std::string message;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// Parses and validates; defaults come from the campaign type. `campaign`
/// supplies the type when the text has no campaign.type key (and must agree
/// with it otherwise). Throws ConfigError with every problem found.
ExperimentConfig validate_config(std::string_view raw,
                                 std::optional<CampaignType> campaign = std::nullopt);

/// Reads a file then validates it. Unreadable files raise ErrorKind::kIo.
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<CampaignType> campaign = std::nullopt);

/// Canonical flat text of `resolved`; validate_config(config_echo(c)) == c.
std::string config_echo(const ExperimentConfig& cfg);

/// 17-significant-digit rendering shared by the CSV and config echo.
std::string format_double(double v);

/// Evaluates a scalar expression such as "7pi/4" or "-0.04". Throws
/// ErrorKind::kInvalidArgument on malformed input.
double parse_scalar(std::string_view text);
std::vector<double> parse_list(std::string_view text);

}  // namespace kpo

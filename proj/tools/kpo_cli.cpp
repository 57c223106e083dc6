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

// kpo_cli: batch runner for spectrum, Wigner, gate, sweep and noise campaigns.
//
// Exit codes: 0 success, 1 validation or runtime failure, 2 partial campaign,
// 3 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "kpo/campaign.hpp"
#include "kpo/config.hpp"
#include "kpo/error.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  int workers = 0;
  std::optional<std::uint64_t> seed;
  bool plot = false;
  std::string variant;
};

std::string read_config_text(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw kpo::Error(kpo::ErrorKind::kIo, "cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Resolves the campaign: an explicit campaign.type wins if the subcommand allows
// it, otherwise `fallback` applies.
kpo::ExperimentConfig resolve(const std::string& text, kpo::CampaignType fallback,
                              const std::set<kpo::CampaignType>& allowed) {
  kpo::ExperimentConfig cfg;
  try {
    cfg = kpo::validate_config(text);
  } catch (const kpo::ConfigError& e) {
    const bool missing_type =
        std::any_of(e.issues().begin(), e.issues().end(), [](const kpo::ValidationIssue& i) {
          return i.path == "campaign.type" && i.message.rfind("missing", 0) == 0;
        });
    if (!missing_type) throw;
    cfg = kpo::validate_config(text, fallback);
  }
  if (!allowed.count(cfg.campaign)) {
    throw kpo::ConfigError({{"campaign.type", "campaign '" + std::string(kpo::to_string(cfg.campaign)) +
                                                  "' is not run by this subcommand"}});
  }
  return cfg;
}

void apply_flags(kpo::ExperimentConfig& cfg, const Flags& f) {
  if (!f.out.empty()) {
    cfg.output_dir = f.out;
    cfg.resolved["output.dir"] = f.out;
  }
  if (f.seed) {
    cfg.seed = *f.seed;
    cfg.resolved["run.seed"] = std::to_string(*f.seed);
  }
  if (f.plot) {
    cfg.plot = true;
    cfg.resolved["output.plot"] = "true";
  }
}

int run(const std::string& sub, const Flags& f) {
  using kpo::CampaignType;
  const std::string text = read_config_text(f.config);
  kpo::ExperimentConfig cfg;
  if (sub == "spectrum") {
    cfg = resolve(text, CampaignType::kSpectrum, {CampaignType::kSpectrum});
  } else if (sub == "wigner") {
    cfg = resolve(text, CampaignType::kWigner, {CampaignType::kWigner});
  } else if (sub == "gate") {
    cfg = resolve(text, CampaignType::kSingleGate,
                  {CampaignType::kSingleGate, CampaignType::kTwoQubitGate});
  } else if (sub == "sweep") {
    cfg = resolve(text, f.variant == "omega" ? CampaignType::kSweepOmega : CampaignType::kSweepThetaPhi,
                  {CampaignType::kSweepThetaPhi, CampaignType::kSweepOmega});
  } else if (sub == "noise") {
    cfg = resolve(text, f.variant == "amplitude" ? CampaignType::kAmplitudeGrid : CampaignType::kNoiseGrid,
                  {CampaignType::kNoiseGrid, CampaignType::kAmplitudeGrid});
  } else {  // validate
    cfg = text.find("campaign.type") == std::string::npos
              ? kpo::validate_config(text, CampaignType::kSingleGate)
              : kpo::validate_config(text);
    apply_flags(cfg, f);
    std::cout << kpo::config_echo(cfg);
    return 0;
  }
  apply_flags(cfg, f);

  kpo::CampaignOptions opts;
  opts.workers = kpo::resolve_workers(f.workers, cfg.workers);
  opts.plot = cfg.plot;
  const kpo::CampaignResult result = kpo::run_campaign(cfg, opts);
  std::printf("%s: %zu rows, %zu failed, %.2f s\n", std::string(kpo::to_string(cfg.campaign)).c_str(),
              result.rows.size(), result.failures(), result.wall_time);
  std::printf("csv: %s\nmanifest: %s\n", result.csv_path.string().c_str(),
              result.manifest_path.string().c_str());
  if (!result.plot_path.empty()) std::printf("plot: %s\n", result.plot_path.string().c_str());
  for (const auto& w : result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (result.rows[i].failed) {
      std::fprintf(stderr, "row %zu failed: %s\n", i, result.rows[i].error.c_str());
    }
  }
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerr parametric oscillator cat-qubit gate simulator", "kpo_cli"};
  app.set_version_flag("--version", KPO_VERSION);
  app.require_subcommand(1);
  Flags flags;
  const auto common = [&flags](CLI::App* s) {
    s->add_option("--config", flags.config, "Flat key/value config file")->check(CLI::ExistingFile);
    s->add_option("--out", flags.out, "Output directory (overrides output.dir)");
    s->add_option("--workers", flags.workers, "Worker threads (overrides KPO_WORKERS and run.workers)")
        ->check(CLI::Range(1, 256));
    s->add_option("--seed", flags.seed, "Run seed echoed into the manifest");
    s->add_flag("--plot", flags.plot, "Also write an SVG plot");
  };
  common(app.add_subcommand("spectrum", "KPO eigenspectrum by parity pair"));
  common(app.add_subcommand("wigner", "Wigner function on a phase-space grid"));
  common(app.add_subcommand("gate", "Single holonomic gate, single- or two-qubit"));
  auto* sweep = app.add_subcommand("sweep", "(theta, phi) heatmap or Rabi-frequency sweep");
  common(sweep);
  sweep->add_option("--axis", flags.variant, "Default sweep when campaign.type is absent")
      ->check(CLI::IsMember({"theta-phi", "omega"}));
  auto* noise = app.add_subcommand("noise", "Dissipation grid or drive-amplitude grid");
  common(noise);
  noise->add_option("--grid", flags.variant, "Default grid when campaign.type is absent")
      ->check(CLI::IsMember({"noise", "amplitude"}));
  common(app.add_subcommand("validate", "Validate a config and print the resolved echo"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    return run(sub, flags);
  } catch (const kpo::ConfigError& e) {
    std::fprintf(stderr, "invalid config:\n");
    for (const auto& i : e.issues()) std::fprintf(stderr, "  %s: %s\n", i.path.c_str(), i.message.c_str());
    return 1;
  } catch (const kpo::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == kpo::ErrorKind::kIo ? 3 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

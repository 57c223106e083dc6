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

#include "kpo/campaign.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "kpo/plot.hpp"
#include "kpo/tomography.hpp"
#include "kpo/wigner.hpp"

namespace kpo {

namespace {

using Clock = std::chrono::steady_clock;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error(ErrorKind::kIo, "SHA-256 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

struct Task {
  ResultRow seed;  // campaign, gate and axes filled in
  std::function<void(ResultRow&)> work;
};

void run_pool(std::vector<Task>& tasks, std::vector<ResultRow>& rows, int workers) {
  rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      ResultRow row = tasks[i].seed;
      const auto start = Clock::now();
      try {
        tasks[i].work(row);
      } catch (const std::exception& e) {
        row = tasks[i].seed;
        row.failed = true;
        row.error = e.what();
      }
      row.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
      rows[i] = std::move(row);
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
  if (n == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (int k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

StateVector wigner_state(const ExperimentConfig& cfg) {
  const Eigen::Index d = cfg.kpo.fock_dim;
  const std::string& s = cfg.wigner_state;
  if (s == "vacuum") return StateVector::basis(d, 0);
  if (s == "coherent") return coherent_state(cfg.kpo.alpha, d);
  if (s == "even-cat") return cat_state(cfg.kpo.alpha, +1, d);
  if (s == "odd-cat") return cat_state(cfg.kpo.alpha, -1, d);
  const int k = s.back() - '0';
  return logical_basis(cfg.kpo).ket(k);
}

bool fidelity_campaign(CampaignType c) {
  return c != CampaignType::kSpectrum && c != CampaignType::kWigner;
}

}  // namespace

double ResultRow::axis(const std::string& name) const {
  for (const auto& [k, v] : axes) {
    if (k == name) return v;
  }
  throw Error(ErrorKind::kInvalidArgument, "row has no axis '" + name + "'");
}

bool CampaignResult::has_fidelity() const { return fidelity_campaign(campaign); }

std::size_t CampaignResult::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.failed ? 1 : 0;
  return n;
}

int CampaignResult::exit_code() const { return failures() == 0 ? 0 : 2; }

int resolve_workers(int flag_value, int config_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("KPO_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 256) return static_cast<int>(v);
  }
  return std::max(1, config_value);
}

ResultRow evaluate_gate_point(const ExperimentConfig& cfg, const GateSpec& gate, double theta,
                              double phi, double omega, const NoiseParams& noise,
                              const LogicalBasis& basis) {
  ResultRow row;
  row.campaign = std::string(to_string(cfg.campaign));
  row.gate = gate.label();
  GateSimOptions sim;
  sim.evolution = cfg.evolution;
  QptOptions qpt;
  qpt.renormalize = cfg.renormalize_qpt;
  GateFidelity f;
  if (gate.two_qubit) {
    const auto p = solve_two_qubit_drive(theta, phi, gate.gamma, omega, basis);
    f = two_qubit_gate_fidelity(TwoQubitGateSimulator(p, basis, sim), qpt);
  } else {
    const auto p = solve_drive_coefficients(theta, phi, gate.gamma, omega, basis);
    const bool noisy = noise.dissipative() || noise.d_omega_s != 0.0 || noise.d_omega_t != 0.0;
    f = single_gate_fidelity(
        SingleGateSimulator(p, basis, noisy ? std::optional<NoiseParams>(noise) : std::nullopt,
                            sim),
        qpt);
  }
  row.fidelity = f.fidelity;
  row.leakage = f.leakage;
  row.stats = f.stats;
  if (row.fidelity > 1.0 || row.fidelity < 0.0) {
    row.clipped = true;
    row.fidelity = std::clamp(row.fidelity, 0.0, 1.0);
  }
  return row;
}

std::string csv_line(const ResultRow& row, bool with_fidelity) {
  std::string line;
  if (with_fidelity) line += row.gate + ",";
  for (std::size_t i = 0; i < row.axes.size(); ++i) {
    line += (i ? "," : "") + format_double(row.axes[i].second);
  }
  if (with_fidelity) {
    if (row.failed) {
      line += ",,,,,failed";
    } else {
      line += "," + format_double(row.fidelity) + "," + format_double(row.leakage) + "," +
              std::to_string(row.stats.accepted) + "," + std::to_string(row.stats.rejected) +
              "," + (row.clipped ? "clipped" : "ok");
    }
  }
  return line;
}

std::string campaign_csv(const CampaignResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    out += (i ? "," : "") + result.columns[i];
  }
  out += "\n";
  for (const auto& row : result.rows) out += csv_line(row, result.has_fidelity()) + "\n";
  return out;
}

CampaignResult run_campaign(const ExperimentConfig& cfg, const CampaignOptions& options) {
  const auto start = Clock::now();
  CampaignResult result;
  result.campaign = cfg.campaign;
  const std::string name(to_string(cfg.campaign));
  std::vector<std::string> axis_names;
  std::vector<Task> tasks;

  const auto make_seed = [&](const std::string& gate,
                             std::vector<std::pair<std::string, double>> axes) {
    ResultRow r;
    r.campaign = name;
    r.gate = gate;
    r.axes = std::move(axes);
    return r;
  };

  if (cfg.campaign == CampaignType::kSpectrum) {
    axis_names = {"pair", "parity", "energy", "splitting"};
    const SpectrumReport s = compute_spectrum(cfg.kpo);
    for (const SpectrumLevel& l : s.levels) {
      const auto pair = static_cast<std::size_t>(l.index_within_parity);
      const double split = pair < s.gaps.size() ? s.gaps[pair] : std::nan("");
      result.rows.push_back(make_seed("", {{"pair", static_cast<double>(l.index_within_parity)},
                                           {"parity", static_cast<double>(l.parity)},
                                           {"energy", l.energy},
                                           {"splitting", split}}));
    }
  } else if (cfg.campaign == CampaignType::kWigner) {
    axis_names = {"x", "p", "W"};
    DensityMatrix rho = cfg.wigner_state == "mixed-cat"
                            ? DensityMatrix(0.5 * (DensityMatrix::pure(cat_state(cfg.kpo.alpha, 1,
                                                                                 cfg.kpo.fock_dim))
                                                       .matrix() +
                                                   DensityMatrix::pure(cat_state(cfg.kpo.alpha, -1,
                                                                                 cfg.kpo.fock_dim))
                                                       .matrix()))
                            : DensityMatrix::pure(wigner_state(cfg));
    const WignerGrid g = wigner(rho, cfg.wigner);
    if (g.window_warning) result.warnings.push_back(g.warning);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      for (std::size_t j = 0; j < g.p.size(); ++j) {
        result.rows.push_back(make_seed(
            "", {{"x", g.x[i]},
                 {"p", g.p[j]},
                 {"W", g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))}}));
      }
    }
  } else {
    const LogicalBasis basis = logical_basis(cfg.kpo);
    const auto add = [&](const GateSpec& g, double theta, double phi, double omega,
                         const NoiseParams& noise,
                         std::vector<std::pair<std::string, double>> axes) {
      tasks.push_back({make_seed(g.label(), std::move(axes)), [&cfg, &basis, g, theta, phi, omega,
                                                              noise](ResultRow& row) {
                         ResultRow r = evaluate_gate_point(cfg, g, theta, phi, omega, noise, basis);
                         r.axes = row.axes;
                         row = std::move(r);
                       }});
    };
    const GateSpec& g0 = cfg.gates.front();
    switch (cfg.campaign) {
      case CampaignType::kSingleGate:
      case CampaignType::kTwoQubitGate:
        axis_names = {"theta", "phi", "omega"};
        add(g0, g0.theta, g0.phi, cfg.omega_rabi, cfg.noise,
            {{"theta", g0.theta}, {"phi", g0.phi}, {"omega", cfg.omega_rabi}});
        break;
      case CampaignType::kSweepThetaPhi:
        axis_names = {"theta", "phi"};
        for (double t : cfg.thetas) {
          for (double p : cfg.phis) add(g0, t, p, cfg.omega_rabi, cfg.noise, {{"theta", t}, {"phi", p}});
        }
        break;
      case CampaignType::kSweepOmega:
        axis_names = {"omega"};
        for (const GateSpec& g : cfg.gates) {
          for (double w : cfg.omegas) add(g, g.theta, g.phi, w, cfg.noise, {{"omega", w}});
        }
        break;
      case CampaignType::kNoiseGrid:
        axis_names = {"kappa_alpha", "n_th", "kappa_phi"};
        for (double ka : cfg.kappa_alpha) {
          for (double nt : cfg.n_th) {
            for (double kp : cfg.kappa_phi) {
              NoiseParams n = cfg.noise;
              n.kappa_alpha = ka;
              n.n_th = nt;
              n.kappa_phi = kp;
              add(g0, g0.theta, g0.phi, cfg.omega_rabi, n,
                  {{"kappa_alpha", ka}, {"n_th", nt}, {"kappa_phi", kp}});
            }
          }
        }
        break;
      case CampaignType::kAmplitudeGrid:
        axis_names = {"d_omega_s", "d_omega_t"};
        for (double s : cfg.d_omega_s) {
          for (double t : cfg.d_omega_t) {
            NoiseParams n = cfg.noise;
            n.d_omega_s = s;
            n.d_omega_t = t;
            add(g0, g0.theta, g0.phi, cfg.omega_rabi, n, {{"d_omega_s", s}, {"d_omega_t", t}});
          }
        }
        break;
      default: break;
    }
    run_pool(tasks, result.rows, options.workers);
  }

  if (result.has_fidelity()) {
    result.columns.push_back("gate");
    result.columns.insert(result.columns.end(), axis_names.begin(), axis_names.end());
    for (const char* c : {"fidelity", "leakage", "steps", "rejected", "status"}) {
      result.columns.push_back(c);
    }
  } else {
    result.columns = axis_names;
  }
  for (const auto& r : result.rows) {
    if (r.clipped) result.warnings.push_back("fidelity clipped into [0, 1] on a row");
  }
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  if (!options.write_files) return result;

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + cfg.output_dir.string() + ": " + ec.message());
  result.csv_path = cfg.output_dir / (name + ".csv");
  result.manifest_path = cfg.output_dir / (name + ".manifest.json");
  {
    std::ofstream csv(result.csv_path, std::ios::binary);
    csv << campaign_csv(result);
    if (!csv) throw Error(ErrorKind::kIo, "cannot write " + result.csv_path.string());
  }
  if (options.plot && !result.rows.empty()) {
    PlotSpec spec;
    spec.path = cfg.output_dir / (name + ".svg");
    spec.title = name;
    result.plot_path = emit_plot(result.rows, spec);
  }

  nlohmann::ordered_json m;
  m["manifest"] = "kpo-manifest/1";
  m["library_version"] = KPO_VERSION;
  m["config_dialect"] = kConfigDialect;
  m["campaign"] = name;
  m["seed"] = cfg.seed;
  m["workers"] = options.workers;
  m["config"] = cfg.resolved;
  m["config_text"] = config_echo(cfg);
  m["csv"] = result.csv_path.filename().string();
  m["csv_sha256"] = sha256_hex(campaign_csv(result));
  m["columns"] = result.columns;
  m["wall_time_total"] = result.wall_time;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const ResultRow& r = result.rows[i];
    nlohmann::ordered_json j;
    j["index"] = i;
    j["sha256"] = sha256_hex(csv_line(r, result.has_fidelity()));
    j["status"] = r.failed ? "failed" : (r.clipped ? "clipped" : "ok");
    if (result.has_fidelity()) {
      j["wall_time"] = r.wall_time;
      j["rhs_evaluations"] = r.stats.rhs_evaluations;
    }
    if (r.failed) j["error"] = r.error;
    rows.push_back(std::move(j));
  }
  m["rows"] = std::move(rows);
  m["warnings"] = result.warnings;
  if (!result.plot_path.empty()) m["plot"] = result.plot_path.filename().string();
  std::ofstream mf(result.manifest_path, std::ios::binary);
  mf << m.dump(2) << "\n";
  if (!mf) throw Error(ErrorKind::kIo, "cannot write " + result.manifest_path.string());
  return result;
}

}  // namespace kpo

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

#include "kpo/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace kpo {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Recursive-descent evaluator for + − * / over numbers and `pi`.
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (!std::isfinite(v)) fail("value is not finite");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::kInvalidArgument, "cannot parse '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_pi() {
    skip();
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    for (;;) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = factor();
    for (;;) {
      if (accept('*')) v *= factor();
      else if (accept('/')) v /= factor();
      else return v;
    }
  }
  double factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    if (accept('(')) {
      const double v = expr();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (accept_pi()) return kPi;
    skip();
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number");
    // strtod would also swallow "inf"/"nan"/hex; keep to plain decimals.
    for (const char* c = rest.c_str(); c != end; ++c) {
      if (!(std::isdigit(static_cast<unsigned char>(*c)) || *c == '.' || *c == 'e' ||
            *c == 'E' || *c == '-' || *c == '+')) {
        fail("expected a decimal number");
      }
    }
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    // "7pi" multiplies; the suffix must touch the literal.
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return v * kPi;
    }
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<double> parse_range(const std::string& item, bool logarithmic) {
  const std::size_t open = item.find('(');
  if (item.back() != ')') throw Error(ErrorKind::kInvalidArgument, "malformed range '" + item + "'");
  const auto args = split_top_level(std::string_view(item).substr(open + 1, item.size() - open - 2));
  if (args.size() != 3) {
    throw Error(ErrorKind::kInvalidArgument, "range needs (start, stop, count): '" + item + "'");
  }
  const double a = parse_scalar(args[0]);
  const double b = parse_scalar(args[1]);
  const double nd = parse_scalar(args[2]);
  if (nd < 1 || nd != std::floor(nd) || nd > 100000) {
    throw Error(ErrorKind::kInvalidArgument, "range count must be a positive integer");
  }
  const int n = static_cast<int>(nd);
  if (logarithmic && !(a > 0 && b > 0)) {
    throw Error(ErrorKind::kInvalidArgument, "logspace bounds must be positive");
  }
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    v.push_back(logarithmic ? std::exp(std::log(a) + f * (std::log(b) - std::log(a)))
                            : a + f * (b - a));
  }
  if (n > 1) v.back() = b;
  return v;
}

bool parse_bool(const std::string& s) {
  const std::string l = lower(s);
  if (l == "true" || l == "yes" || l == "1" || l == "on") return true;
  if (l == "false" || l == "no" || l == "0" || l == "off") return false;
  throw Error(ErrorKind::kInvalidArgument, "expected a boolean, got '" + s + "'");
}

long long parse_integer(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "expected an integer, got '" + s + "'");
  }
  return v;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

std::vector<double> linspace_2pi(int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    v.push_back(n == 1 ? 0.0 : 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

// Pulls typed values out of the raw key table and records every problem.
class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::vector<ValidationIssue>& issues)
      : entries_(std::move(entries)), issues_(issues) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.value;
  }

  template <typename T, typename F>
  std::optional<T> get(const std::string& key, F&& parse) {
    auto raw = text(key);
    if (!raw) return std::nullopt;
    try {
      return parse(*raw);
    } catch (const Error& e) {
      issue(key, e.what());
    }
    return std::nullopt;
  }

  std::optional<double> scalar(const std::string& key) {
    return get<double>(key, [](const std::string& s) { return parse_scalar(s); });
  }
  std::optional<std::vector<double>> list(const std::string& key) {
    return get<std::vector<double>>(key, [](const std::string& s) { return parse_list(s); });
  }
  std::optional<long long> integer(const std::string& key) {
    return get<long long>(key, [](const std::string& s) { return parse_integer(s); });
  }
  std::optional<bool> boolean(const std::string& key) {
    return get<bool>(key, [](const std::string& s) { return parse_bool(s); });
  }

  void issue(const std::string& key, const std::string& message) {
    auto it = entries_.find(key);
    const std::string where =
        it == entries_.end() ? "" : " (line " + std::to_string(it->second.line) + ")";
    issues_.push_back({key, message + where});
  }

  void report_unknown() {
    for (const auto& [key, entry] : entries_) {
      if (!used_.count(key)) issues_.push_back({key, "unknown key (line " +
                                                         std::to_string(entry.line) + ")"});
    }
  }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
  std::vector<ValidationIssue>& issues_;
};

std::map<std::string, Entry> tokenize(std::string_view raw, std::vector<ValidationIssue>& issues) {
  std::map<std::string, Entry> entries;
  std::string section;
  std::istringstream in{std::string(raw)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = "line " + std::to_string(number);
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        issues.push_back({where, "malformed section header"});
        continue;
      }
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      issues.push_back({where, "expected 'key = value'"});
      continue;
    }
    std::string key = lower(trim(std::string_view(t).substr(0, eq)));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) {
      issues.push_back({where, "empty key"});
      continue;
    }
    if (!section.empty() && key.find('.') == std::string::npos) key = lower(section) + "." + key;
    if (value.empty()) {
      issues.push_back({key, "empty value (" + where + ")"});
      continue;
    }
    if (entries.count(key)) {
      issues.push_back({key, "duplicate key (" + where + ", first on line " +
                                 std::to_string(entries[key].line) + ")"});
      continue;
    }
    entries[key] = {value, number};
  }
  return entries;
}

double default_omega(CampaignType c) {
  switch (c) {
    case CampaignType::kSweepThetaPhi: return 0.25;
    case CampaignType::kNoiseGrid:
    case CampaignType::kAmplitudeGrid: return 0.23;
    default: return 0.05;
  }
}

bool uses_gate(CampaignType c) {
  return c != CampaignType::kSpectrum && c != CampaignType::kWigner;
}

}  // namespace

// ------------------------------------------------------------------ public

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_scalar(std::string_view text) { return ExprParser(text).parse(); }

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string& item : split_top_level(text)) {
    if (item.empty()) throw Error(ErrorKind::kInvalidArgument, "empty list item");
    const std::string l = lower(item);
    if (l.rfind("linspace(", 0) == 0 || l.rfind("logspace(", 0) == 0) {
      const auto r = parse_range(l, l[1] == 'o');
      out.insert(out.end(), r.begin(), r.end());
    } else {
      out.push_back(parse_scalar(item));
    }
  }
  return out;
}

std::string_view to_string(CampaignType c) {
  switch (c) {
    case CampaignType::kSpectrum: return "spectrum";
    case CampaignType::kWigner: return "wigner";
    case CampaignType::kSingleGate: return "single-gate";
    case CampaignType::kTwoQubitGate: return "two-qubit-gate";
    case CampaignType::kSweepThetaPhi: return "sweep-theta-phi";
    case CampaignType::kSweepOmega: return "sweep-omega";
    case CampaignType::kNoiseGrid: return "noise-grid";
    case CampaignType::kAmplitudeGrid: return "amplitude-grid";
  }
  return "?";
}

std::optional<CampaignType> parse_campaign_type(std::string_view name) {
  const std::string l = lower(std::string(name));
  for (CampaignType c :
       {CampaignType::kSpectrum, CampaignType::kWigner, CampaignType::kSingleGate,
        CampaignType::kTwoQubitGate, CampaignType::kSweepThetaPhi, CampaignType::kSweepOmega,
        CampaignType::kNoiseGrid, CampaignType::kAmplitudeGrid}) {
    if (to_string(c) == l) return c;
  }
  return std::nullopt;
}

std::string GateSpec::label() const {
  if (named) return std::string(to_string(*named));
  return "custom";
}

ConfigError::ConfigError(std::vector<ValidationIssue> issues)
    : Error(ErrorKind::kValidation,
            [&] {
              std::string msg = "invalid configuration:";
              for (const auto& i : issues) msg += "\n  " + i.path + ": " + i.message;
              return msg;
            }()),
      issues_(std::move(issues)) {}

ExperimentConfig validate_config(std::string_view raw, std::optional<CampaignType> campaign) {
  std::vector<ValidationIssue> issues;
  Reader r(tokenize(raw, issues), issues);
  ExperimentConfig cfg;
  auto& out = cfg.resolved;

  if (auto f = r.text("format"); f && *f != kConfigDialect) {
    r.issue("format", "unsupported dialect '" + *f + "', expected " + std::string(kConfigDialect));
  }

  // campaign type
  if (auto t = r.text("campaign.type")) {
    auto parsed = parse_campaign_type(*t);
    if (!parsed) {
      r.issue("campaign.type", "unknown campaign '" + *t + "'");
    } else if (campaign && *campaign != *parsed) {
      // Subcommand `gate` may pick either gate campaign.
      const bool gate_pair = (*campaign == CampaignType::kSingleGate ||
                              *campaign == CampaignType::kTwoQubitGate) &&
                             (*parsed == CampaignType::kSingleGate ||
                              *parsed == CampaignType::kTwoQubitGate);
      if (!gate_pair) {
        r.issue("campaign.type", "'" + *t + "' conflicts with requested campaign '" +
                                     std::string(to_string(*campaign)) + "'");
      }
      campaign = parsed;
    } else {
      campaign = parsed;
    }
  }
  if (!campaign) {
    issues.push_back({"campaign.type", "missing (no subcommand default either)"});
    campaign = CampaignType::kSingleGate;
  }
  cfg.campaign = *campaign;

  // gate(s)
  std::vector<GateSpec> gates;
  const auto named_spec = [&](const std::string& key, const std::string& name) {
    GateSpec g;
    try {
      g.named = parse_named_gate(name);
    } catch (const Error& e) {
      r.issue(key, e.what());
      return std::optional<GateSpec>{};
    }
    const GateAngles a = named_gate_angles(*g.named);
    g.theta = a.theta;
    g.phi = a.phi;
    g.gamma = a.gamma;
    g.two_qubit = is_two_qubit(*g.named);
    return std::optional<GateSpec>{g};
  };
  const auto gate_name = r.text("campaign.gate");
  const auto gate_list = r.text("campaign.gates");
  const auto theta = r.scalar("gate.theta");
  const auto phi = r.scalar("gate.phi");
  const auto gamma = r.scalar("gate.gamma");
  const auto qubits = r.integer("gate.qubits");
  const bool raw_angles = theta || phi || gamma || qubits;
  if (uses_gate(cfg.campaign)) {
    if (gate_list) {
      if (cfg.campaign != CampaignType::kSweepOmega) {
        r.issue("campaign.gates", "only sweep-omega accepts a gate list");
      }
      if (gate_name) r.issue("campaign.gates", "give either campaign.gate or campaign.gates");
      for (const std::string& n : split_top_level(*gate_list)) {
        if (auto g = named_spec("campaign.gates", n)) gates.push_back(*g);
      }
    } else if (gate_name && lower(*gate_name) != "custom") {
      if (raw_angles) r.issue("gate.theta", "raw angles given together with a named gate");
      if (auto g = named_spec("campaign.gate", *gate_name)) gates.push_back(*g);
    } else if (gate_name || raw_angles || cfg.campaign == CampaignType::kSweepThetaPhi) {
      GateSpec g;
      g.theta = theta.value_or(0.0);
      g.phi = phi.value_or(0.0);
      g.gamma = gamma.value_or(kPi);
      const long long q = qubits.value_or(cfg.campaign == CampaignType::kTwoQubitGate ? 2 : 1);
      if (q != 1 && q != 2) r.issue("gate.qubits", "must be 1 or 2");
      g.two_qubit = q == 2;
      gates.push_back(g);
    } else {
      switch (cfg.campaign) {
        case CampaignType::kTwoQubitGate: gates.push_back(*named_spec("", "CNOT")); break;
        case CampaignType::kSweepOmega:
          for (const char* n : {"NOT", "A", "H"}) gates.push_back(*named_spec("", n));
          break;
        default: gates.push_back(*named_spec("", "NOT")); break;
      }
    }
    if (campaign == CampaignType::kSingleGate && !gates.empty() && gates.front().two_qubit) {
      cfg.campaign = CampaignType::kTwoQubitGate;  // `gate CNOT` from the single-gate default
    }
    const bool want_two = cfg.campaign == CampaignType::kTwoQubitGate;
    for (const GateSpec& g : gates) {
      const bool ok = cfg.campaign == CampaignType::kSweepOmega ? true : g.two_qubit == want_two;
      if (!ok) {
        issues.push_back({"campaign.gate", "gate " + g.label() + " does not fit campaign " +
                                               std::string(to_string(cfg.campaign))});
      }
      if (cfg.campaign == CampaignType::kSweepOmega && g.two_qubit != gates.front().two_qubit) {
        issues.push_back({"campaign.gates", "cannot mix one- and two-qubit gates"});
        break;
      }
    }
    if (cfg.campaign == CampaignType::kNoiseGrid || cfg.campaign == CampaignType::kAmplitudeGrid ||
        cfg.campaign == CampaignType::kSweepThetaPhi) {
      for (const GateSpec& g : gates) {
        if (g.two_qubit) {
          issues.push_back({"campaign.gate", std::string(to_string(cfg.campaign)) +
                                                 " runs single-qubit gates only"});
        }
      }
    }
  } else if (gate_name || gate_list || raw_angles) {
    issues.push_back({"campaign.gate", "campaign " + std::string(to_string(cfg.campaign)) +
                                           " takes no gate"});
  }
  cfg.gates = gates;
  out["campaign.type"] = std::string(to_string(cfg.campaign));
  if (uses_gate(cfg.campaign) && !gates.empty()) {
    std::string names;
    for (std::size_t i = 0; i < gates.size(); ++i) names += (i ? ", " : "") + gates[i].label();
    if (gates.size() > 1) {
      out["campaign.gates"] = names;
    } else if (gates.front().named) {
      out["campaign.gate"] = names;
    } else {
      out["campaign.gate"] = "custom";
      out["gate.theta"] = format_double(gates.front().theta);
      out["gate.phi"] = format_double(gates.front().phi);
      out["gate.gamma"] = format_double(gates.front().gamma);
      out["gate.qubits"] = gates.front().two_qubit ? "2" : "1";
    }
  }
  const bool two_qubit = !gates.empty() && gates.front().two_qubit && uses_gate(cfg.campaign);

  // kpo
  const double a2 = r.scalar("kpo.alpha_squared").value_or(2.34);
  const double kerr = r.scalar("kpo.kerr").value_or(1.0);
  const long long dim = r.integer("kpo.fock_dim").value_or(two_qubit ? 25 : 40);
  if (!(a2 >= 0.0)) r.issue("kpo.alpha_squared", "must be ≥ 0");
  if (!(kerr > 0.0)) r.issue("kpo.kerr", "must be > 0");
  if (dim < 2 || dim > 400) r.issue("kpo.fock_dim", "must lie in [2, 400]");
  if (a2 >= 0.0 && kerr > 0.0 && dim >= 2 && dim <= 400) {
    try {
      cfg.kpo = KpoParams::from_alpha_squared(a2, static_cast<Eigen::Index>(dim), kerr);
      cfg.kpo.validate();
    } catch (const Error& e) {
      r.issue("kpo.fock_dim", e.what());
    }
  }
  out["kpo.alpha_squared"] = format_double(a2);
  out["kpo.kerr"] = format_double(kerr);
  out["kpo.fock_dim"] = std::to_string(dim);

  // drive
  if (uses_gate(cfg.campaign) && cfg.campaign != CampaignType::kSweepOmega) {
    cfg.omega_rabi = r.scalar("drive.omega").value_or(default_omega(cfg.campaign));
    if (!(cfg.omega_rabi > 0.0)) r.issue("drive.omega", "must be > 0");
    out["drive.omega"] = format_double(cfg.omega_rabi);
  } else if (r.has("drive.omega")) {
    r.text("drive.omega");
    issues.push_back({"drive.omega", "not used by campaign " +
                                         std::string(to_string(cfg.campaign))});
  }

  // noise (fixed offsets)
  const auto noise_value = [&](const char* key, double& field) {
    if (auto v = r.scalar(key)) field = *v;
  };
  noise_value("noise.kappa_alpha", cfg.noise.kappa_alpha);
  noise_value("noise.n_th", cfg.noise.n_th);
  noise_value("noise.kappa_phi", cfg.noise.kappa_phi);
  noise_value("noise.d_omega_s", cfg.noise.d_omega_s);
  noise_value("noise.d_omega_t", cfg.noise.d_omega_t);
  try {
    cfg.noise.validate();
  } catch (const Error& e) {
    issues.push_back({"noise", e.what()});
  }
  const bool noisy = cfg.noise.dissipative() || cfg.noise.d_omega_s != 0.0 ||
                     cfg.noise.d_omega_t != 0.0;
  if (noisy && (two_qubit || !uses_gate(cfg.campaign))) {
    issues.push_back({"noise", "noise applies to single-qubit gate campaigns only"});
  }
  if (uses_gate(cfg.campaign) && !two_qubit) {
    out["noise.kappa_alpha"] = format_double(cfg.noise.kappa_alpha);
    out["noise.n_th"] = format_double(cfg.noise.n_th);
    out["noise.kappa_phi"] = format_double(cfg.noise.kappa_phi);
    out["noise.d_omega_s"] = format_double(cfg.noise.d_omega_s);
    out["noise.d_omega_t"] = format_double(cfg.noise.d_omega_t);
  }

  // sweep axes
  const auto axis = [&](const char* key, bool allowed, std::vector<double> fallback,
                        std::vector<double>& field) {
    auto v = r.list(key);
    if (v && !allowed) {
      issues.push_back({key, "not used by campaign " + std::string(to_string(cfg.campaign))});
      return;
    }
    if (!allowed) return;
    field = v ? *v : std::move(fallback);
    if (field.empty()) issues.push_back({key, "axis has no values"});
    out[key] = join(field);
  };
  const auto grid_points = r.integer("sweep.grid_points");
  const auto full_grid = r.boolean("sweep.full_grid");
  const bool theta_phi = cfg.campaign == CampaignType::kSweepThetaPhi;
  int points = static_cast<int>(grid_points.value_or(9));
  if (full_grid.value_or(false)) points = static_cast<int>(grid_points.value_or(41));
  if (points < 1 || points > 401) {
    issues.push_back({"sweep.grid_points", "must lie in [1, 401]"});
    points = 9;
  }
  if (!theta_phi && (grid_points || full_grid)) {
    issues.push_back({"sweep.grid_points", "only sweep-theta-phi uses a grid size"});
  }
  axis("sweep.theta", theta_phi, linspace_2pi(points), cfg.thetas);
  axis("sweep.phi", theta_phi, linspace_2pi(points), cfg.phis);
  axis("sweep.omega", cfg.campaign == CampaignType::kSweepOmega, parse_list("logspace(0.02, 0.3, 10)"),
       cfg.omegas);
  const bool noise_grid = cfg.campaign == CampaignType::kNoiseGrid;
  axis("sweep.kappa_alpha", noise_grid, {0.0, 0.005, 0.01}, cfg.kappa_alpha);
  axis("sweep.n_th", noise_grid, {cfg.noise.n_th}, cfg.n_th);
  axis("sweep.kappa_phi", noise_grid, {cfg.noise.kappa_phi}, cfg.kappa_phi);
  const bool amp_grid = cfg.campaign == CampaignType::kAmplitudeGrid;
  axis("sweep.d_omega_s", amp_grid, {-0.04, 0.0, 0.04}, cfg.d_omega_s);
  axis("sweep.d_omega_t", amp_grid, {-0.04, 0.0, 0.04}, cfg.d_omega_t);
  for (double w : cfg.omegas) {
    if (!(w > 0.0)) issues.push_back({"sweep.omega", "values must be > 0"});
  }
  for (const auto* v : {&cfg.kappa_alpha, &cfg.n_th, &cfg.kappa_phi}) {
    for (double x : *v) {
      if (x < 0.0) issues.push_back({"sweep", "noise rates must be ≥ 0"});
    }
  }
  for (const auto* v : {&cfg.d_omega_s, &cfg.d_omega_t}) {
    for (double x : *v) {
      if (std::abs(x) >= 1.0) issues.push_back({"sweep", "|fractional fluctuation| must be < 1"});
    }
  }

  // wigner
  const bool wig = cfg.campaign == CampaignType::kWigner;
  const auto wstate = r.text("wigner.state");
  const auto wx0 = r.scalar("wigner.x_min"), wx1 = r.scalar("wigner.x_max");
  const auto wp0 = r.scalar("wigner.p_min"), wp1 = r.scalar("wigner.p_max");
  const auto wres = r.integer("wigner.resolution");
  if (wig) {
    static const std::set<std::string> states{"even-cat", "odd-cat", "mixed-cat", "vacuum",
                                              "coherent", "logical0", "logical1", "logical2",
                                              "logical3"};
    cfg.wigner_state = lower(wstate.value_or("even-cat"));
    if (!states.count(cfg.wigner_state)) r.issue("wigner.state", "unknown state '" + *wstate + "'");
    cfg.wigner.x_min = wx0.value_or(-5.0);
    cfg.wigner.x_max = wx1.value_or(5.0);
    cfg.wigner.p_min = wp0.value_or(-5.0);
    cfg.wigner.p_max = wp1.value_or(5.0);
    cfg.wigner.resolution = static_cast<int>(wres.value_or(101));
    try {
      cfg.wigner.validate();
    } catch (const Error& e) {
      issues.push_back({"wigner", e.what()});
    }
    out["wigner.state"] = cfg.wigner_state;
    out["wigner.x_min"] = format_double(cfg.wigner.x_min);
    out["wigner.x_max"] = format_double(cfg.wigner.x_max);
    out["wigner.p_min"] = format_double(cfg.wigner.p_min);
    out["wigner.p_max"] = format_double(cfg.wigner.p_max);
    out["wigner.resolution"] = std::to_string(cfg.wigner.resolution);
  } else if (wstate || wx0 || wx1 || wp0 || wp1 || wres) {
    issues.push_back({"wigner", "wigner.* keys need campaign wigner"});
  }

  // integrator / tomography
  if (auto m = r.text("integrator.method")) {
    const std::string l = lower(*m);
    if (l == "adaptive" || l == "dopri5") cfg.evolution.method = IntegratorMethod::kDormandPrince45;
    else if (l == "rk4" || l == "fixed") cfg.evolution.method = IntegratorMethod::kFixedRk4;
    else r.issue("integrator.method", "expected adaptive or rk4");
  }
  cfg.evolution.rel_tol = r.scalar("integrator.rel_tol").value_or(cfg.evolution.rel_tol);
  cfg.evolution.abs_tol = r.scalar("integrator.abs_tol").value_or(cfg.evolution.abs_tol);
  if (auto s = r.scalar("integrator.max_step")) cfg.evolution.max_step = *s;
  try {
    cfg.evolution.validate();
  } catch (const Error& e) {
    issues.push_back({"integrator", e.what()});
  }
  out["integrator.method"] =
      cfg.evolution.method == IntegratorMethod::kFixedRk4 ? "rk4" : "adaptive";
  out["integrator.rel_tol"] = format_double(cfg.evolution.rel_tol);
  out["integrator.abs_tol"] = format_double(cfg.evolution.abs_tol);
  if (cfg.evolution.max_step) out["integrator.max_step"] = format_double(*cfg.evolution.max_step);
  cfg.renormalize_qpt = r.boolean("tomography.renormalize").value_or(false);
  out["tomography.renormalize"] = cfg.renormalize_qpt ? "true" : "false";

  // run / output
  if (auto d = r.text("output.dir")) cfg.output_dir = *d;
  out["output.dir"] = cfg.output_dir.string();
  cfg.plot = r.boolean("output.plot").value_or(false);
  out["output.plot"] = cfg.plot ? "true" : "false";
  const long long seed = r.integer("run.seed").value_or(0);
  if (seed < 0) r.issue("run.seed", "must be ≥ 0");
  cfg.seed = static_cast<std::uint64_t>(std::max(0LL, seed));
  out["run.seed"] = std::to_string(cfg.seed);
  const long long workers = r.integer("run.workers").value_or(1);
  if (workers < 1 || workers > 256) r.issue("run.workers", "must lie in [1, 256]");
  cfg.workers = static_cast<int>(std::clamp(workers, 1LL, 256LL));
  out["run.workers"] = std::to_string(cfg.workers);

  r.report_unknown();
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<CampaignType> campaign) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return validate_config(buf.str(), campaign);
}

std::string config_echo(const ExperimentConfig& cfg) {
  std::string out = "format = " + std::string(kConfigDialect) + "\n";
  for (const auto& [key, value] : cfg.resolved) out += key + " = " + value + "\n";
  return out;
}

}  // namespace kpo

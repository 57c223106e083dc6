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

#include "kpo/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace kpo {

namespace {

constexpr double kWidth = 680.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 110.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Rgb {
  double r, g, b;
};

std::string hex(Rgb c) {
  char buf[8];
  const auto ch = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255)); };
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", ch(c.r), ch(c.g), ch(c.b));
  return buf;
}

Rgb lerp(Rgb a, Rgb b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

// Sequential map for fidelities, diverging map for signed data.
Rgb colour(double t, bool diverging) {
  t = std::clamp(t, 0.0, 1.0);
  if (diverging) {
    return t < 0.5 ? lerp({0.13, 0.32, 0.68}, {1, 1, 1}, t * 2)
                   : lerp({1, 1, 1}, {0.70, 0.09, 0.17}, (t - 0.5) * 2);
  }
  static const Rgb stops[] = {{0.27, 0.00, 0.33}, {0.23, 0.32, 0.55}, {0.13, 0.57, 0.55},
                              {0.37, 0.79, 0.38}, {0.99, 0.91, 0.14}};
  const double s = t * 4.0;
  const int i = std::min(3, static_cast<int>(s));
  return lerp(stops[i], stops[i + 1], s - i);
}

struct Canvas {
  std::ostringstream svg;
  double x0, x1, y0, y1;

  double px(double x) const {
    return kLeft + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.5) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y1 > y0 ? (y - y0) / (y1 - y0) : 0.5) * (kHeight - kTop - kBottom);
  }

  void open(const std::string& title) {
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
        << xml_escape(title) << "</text>\n";
  }

  void axes(const std::string& xlabel, const std::string& ylabel) {
    const double l = kLeft, r = kWidth - kRight, t = kTop, b = kHeight - kBottom;
    svg << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l << "\" height=\""
        << b - t << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const double xv = x0 + (x1 - x0) * k / 4.0;
      const double yv = y0 + (y1 - y0) * k / 4.0;
      svg << "<text x=\"" << px(xv) << "\" y=\"" << b + 16 << "\" text-anchor=\"middle\">"
          << num(xv) << "</text>\n";
      svg << "<text x=\"" << l - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
          << num(yv) << "</text>\n";
    }
    svg << "<text x=\"" << (l + r) / 2 << "\" y=\"" << kHeight - 18
        << "\" text-anchor=\"middle\">" << xml_escape(xlabel) << "</text>\n";
    svg << "<text transform=\"translate(20," << (t + b) / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(ylabel) << "</text>\n";
  }

  std::string close() {
    svg << "</svg>\n";
    return svg.str();
  }
};

std::pair<double, double> bounds(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

std::vector<double> unique_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Heatmap over (xs[k], ys[k]) with cell values vs[k]; cells sized by grid spacing.
std::string heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& vs, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::string& vlabel, bool diverging) {
  const auto ux = unique_sorted(xs);
  const auto uy = unique_sorted(ys);
  const double dx = ux.size() > 1 ? (ux.back() - ux.front()) / (ux.size() - 1) : 1.0;
  const double dy = uy.size() > 1 ? (uy.back() - uy.front()) / (uy.size() - 1) : 1.0;
  Canvas c;
  c.x0 = ux.front() - dx / 2;
  c.x1 = ux.back() + dx / 2;
  c.y0 = uy.front() - dy / 2;
  c.y1 = uy.back() + dy / 2;
  auto [vmin, vmax] = bounds(vs);
  if (diverging) {
    const double m = std::max(std::abs(vmin), std::abs(vmax));
    vmin = -m;
    vmax = m;
  }
  const double span = vmax > vmin ? vmax - vmin : 1.0;
  c.open(title);
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const double xa = c.px(xs[k] - dx / 2), xb = c.px(xs[k] + dx / 2);
    const double ya = c.py(ys[k] + dy / 2), yb = c.py(ys[k] - dy / 2);
    c.svg << "<rect x=\"" << num(xa) << "\" y=\"" << num(ya) << "\" width=\"" << num(xb - xa + 0.3)
          << "\" height=\"" << num(yb - ya + 0.3) << "\" fill=\""
          << hex(colour((vs[k] - vmin) / span, diverging)) << "\"/>\n";
  }
  c.axes(xlabel, ylabel);
  const double bx = kWidth - kRight + 25, bt = kTop, bb = kHeight - kBottom;
  for (int k = 0; k < 50; ++k) {
    const double y = bb - (bb - bt) * (k + 1) / 50.0;
    c.svg << "<rect x=\"" << bx << "\" y=\"" << num(y) << "\" width=\"18\" height=\""
          << num((bb - bt) / 50.0 + 0.3) << "\" fill=\"" << hex(colour((k + 0.5) / 50.0, diverging))
          << "\"/>\n";
  }
  c.svg << "<text x=\"" << bx + 22 << "\" y=\"" << bt + 4 << "\">" << num(vmax) << "</text>\n"
        << "<text x=\"" << bx + 22 << "\" y=\"" << bb << "\">" << num(vmin) << "</text>\n"
        << "<text x=\"" << bx << "\" y=\"" << bt - 8 << "\">" << xml_escape(vlabel) << "</text>\n";
  return c.close();
}

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

std::string lines(const std::vector<Series>& series, const std::string& title,
                  const std::string& xlabel, const std::string& ylabel) {
  std::vector<double> xs, ys;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  Canvas c;
  if (xs.empty()) {
    c.x0 = 0; c.x1 = 1; c.y0 = 0; c.y1 = 1;
  } else {
    std::tie(c.x0, c.x1) = bounds(xs);
    std::tie(c.y0, c.y1) = bounds(ys);
    const double pad = c.y1 > c.y0 ? 0.05 * (c.y1 - c.y0) : 0.01;
    c.y0 -= pad;
    c.y1 += pad;
  }
  c.open(title);
  c.axes(xlabel, ylabel);
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* col = palette[k % 8];
    std::string pts;
    for (const auto& [x, y] : series[k].points) pts += num(c.px(x)) + "," + num(c.py(y)) + " ";
    c.svg << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.8\" points=\""
          << pts << "\"/>\n";
    for (const auto& [x, y] : series[k].points) {
      c.svg << "<circle cx=\"" << num(c.px(x)) << "\" cy=\"" << num(c.py(y)) << "\" r=\"3\" fill=\""
            << col << "\"/>\n";
    }
    const double ly = kTop + 16 + 16 * static_cast<double>(k);
    c.svg << "<line x1=\"" << kWidth - kRight + 8 << "\" y1=\"" << ly - 4 << "\" x2=\""
          << kWidth - kRight + 24 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << col
          << "\" stroke-width=\"2\"/>\n"
          << "<text x=\"" << kWidth - kRight + 28 << "\" y=\"" << ly << "\" font-size=\"10\">"
          << xml_escape(series[k].name) << "</text>\n";
  }
  return c.close();
}

}  // namespace

std::string axis_label(const std::string& axis) {
  static const std::map<std::string, std::string> labels{
      {"omega", "Ω/K"},          {"kappa_alpha", "κ_α/K"},     {"kappa_phi", "κ_φ/K"},
      {"n_th", "n_th"},          {"theta", "θ (rad)"},         {"phi", "φ (rad)"},
      {"d_omega_s", "δΩ_s/Ω_s"}, {"d_omega_t", "δΩ_t/Ω_t"},    {"x", "x"},
      {"p", "p"},                {"W", "W(x, p)"},             {"pair", "pair index n"},
      {"energy", "E/K"},         {"splitting", "δ_n/K"},       {"parity", "parity"},
      {"fidelity", "process fidelity"}};
  const auto it = labels.find(axis);
  return it == labels.end() ? axis : it->second;
}

std::string render_svg(const std::vector<ResultRow>& rows, const PlotSpec& spec) {
  if (rows.empty()) throw Error(ErrorKind::kInvalidArgument, "nothing to plot: no rows");
  const std::string& campaign = rows.front().campaign;
  const std::string title = spec.title.empty() ? campaign : spec.title;

  if (campaign == "spectrum") {
    std::map<int, Series> by_parity;
    for (const auto& r : rows) {
      const int par = static_cast<int>(r.axis("parity"));
      by_parity[par].name = par > 0 ? "even" : "odd";
      by_parity[par].points.emplace_back(r.axis("pair"), r.axis("energy"));
    }
    std::vector<Series> s;
    for (auto it = by_parity.rbegin(); it != by_parity.rend(); ++it) s.push_back(it->second);
    return lines(s, title, axis_label("pair"), axis_label("energy"));
  }

  std::vector<const ResultRow*> ok;
  for (const auto& r : rows) {
    if (!r.failed) ok.push_back(&r);
  }
  const bool wigner_rows = campaign == "wigner";
  const std::size_t naxes = rows.front().axes.size() - (wigner_rows ? 1 : 0);
  const bool heat = spec.kind == PlotKind::kHeatmap ||
                    (spec.kind == PlotKind::kAuto && naxes == 2 && !ok.empty());
  if (heat) {
    if (naxes < 2) throw Error(ErrorKind::kInvalidArgument, "heatmap needs two swept axes");
    std::vector<double> xs, ys, vs;
    for (const ResultRow* r : ok) {
      xs.push_back(r->axes[0].second);
      ys.push_back(r->axes[1].second);
      vs.push_back(wigner_rows ? r->axes[2].second : r->fidelity);
    }
    if (vs.empty()) throw Error(ErrorKind::kInvalidArgument, "nothing to plot: every row failed");
    return heatmap(xs, ys, vs, title, axis_label(rows.front().axes[0].first),
                   axis_label(rows.front().axes[1].first),
                   wigner_rows ? axis_label("W") : "F", wigner_rows);
  }

  // Series keyed by gate plus every axis after the first.
  std::vector<Series> series;
  std::map<std::string, std::size_t> index;
  for (const ResultRow* r : ok) {
    std::string key = r->gate;
    for (std::size_t k = 1; k < r->axes.size(); ++k) {
      key += (key.empty() ? "" : " ") + r->axes[k].first + "=" + num(r->axes[k].second);
    }
    auto [it, inserted] = index.emplace(key, series.size());
    if (inserted) series.push_back({key.empty() ? "F" : key, {}});
    series[it->second].points.emplace_back(r->axes.front().second, r->fidelity);
  }
  for (auto& s : series) std::sort(s.points.begin(), s.points.end());
  return lines(series, title, axis_label(rows.front().axes.front().first),
               axis_label("fidelity"));
}

std::filesystem::path emit_plot(const std::vector<ResultRow>& rows, const PlotSpec& spec) {
  const std::string svg = render_svg(rows, spec);
  std::ofstream out(spec.path, std::ios::binary);
  out << svg;
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + spec.path.string());
  return spec.path;
}

std::filesystem::path emit_wigner_plot(const WignerGrid& grid, const PlotSpec& spec) {
  if (grid.x.empty() || grid.p.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "nothing to plot: empty Wigner grid");
  }
  std::vector<double> xs, ys, vs;
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    for (std::size_t j = 0; j < grid.p.size(); ++j) {
      xs.push_back(grid.x[i]);
      ys.push_back(grid.p[j]);
      vs.push_back(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  const std::string svg = heatmap(xs, ys, vs, spec.title.empty() ? "Wigner function" : spec.title,
                                  "x", "p", axis_label("W"), true);
  std::ofstream out(spec.path, std::ios::binary);
  out << svg;
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + spec.path.string());
  return spec.path;
}

}  // namespace kpo

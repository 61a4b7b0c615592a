#include "effham/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "effham/sweep.hpp"

namespace effham {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMargin = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double frac(double v) const { return (v - lo) / (hi - lo); }
};

std::string num(double v) { return format_shortest(v); }

void axes(std::string& out, const std::string& title, const Range& rx,
          const Range& ry, const char* ylabel) {
  out += "<rect x='" + std::to_string(kMargin) + "' y='" +
         std::to_string(kMargin) + "' width='" +
         std::to_string(kWidth - 2 * kMargin) + "' height='" +
         std::to_string(kHeight - 2 * kMargin) +
         "' fill='none' stroke='black'/>\n";
  out += "<text x='" + std::to_string(kWidth / 2) +
         "' y='24' text-anchor='middle' font-size='15'>" + title + "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = i / 4.0;
    const double px = kMargin + fx * (kWidth - 2 * kMargin);
    const double py = kHeight - kMargin + fx * 0;
    out += "<text x='" + num(px) + "' y='" + std::to_string(kHeight - kMargin + 18) +
           "' text-anchor='middle' font-size='11'>" +
           num(rx.lo + fx * (rx.hi - rx.lo)) + "</text>\n";
    (void)py;
    const double fy = i / 4.0;
    const double qy = kHeight - kMargin - fy * (kHeight - 2 * kMargin);
    out += "<text x='" + std::to_string(kMargin - 6) + "' y='" + num(qy + 4) +
           "' text-anchor='end' font-size='11'>" +
           num(ry.lo + fy * (ry.hi - ry.lo)) + "</text>\n";
  }
  out += "<text x='16' y='" + std::to_string(kHeight / 2) +
         "' font-size='11' transform='rotate(-90 16 " +
         std::to_string(kHeight / 2) + ")' text-anchor='middle'>" + ylabel +
         "</text>\n";
}

}  // namespace

std::string svg_line_plot(const std::string& title,
                          const std::vector<SvgSeries>& series,
                          bool log_abs_y) {
  Range rx, ry;
  auto ty = [&](double v) {
    if (!log_abs_y) return v;
    const double a = std::abs(v);
    return a > 0.0 ? std::log10(a) : std::numeric_limits<double>::quiet_NaN();
  };
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      rx.add(s.x[i]);
      ry.add(ty(s.y[i]));
    }
  rx.pad();
  ry.pad();

  std::string out =
      "<svg xmlns='http://www.w3.org/2000/svg' width='" +
      std::to_string(kWidth) + "' height='" + std::to_string(kHeight) + "'>\n";
  axes(out, title, rx, ry, log_abs_y ? "log10 |value|" : "value");
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    std::string points;
    auto flush = [&] {
      if (!points.empty())
        out += "<polyline fill='none' stroke='" + std::string(color) +
               "' stroke-width='1.5' points='" + points + "'/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double yv = ty(s.y[i]);
      if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) {
        flush();
        continue;
      }
      const double px = kMargin + rx.frac(s.x[i]) * (kWidth - 2 * kMargin);
      const double py =
          kHeight - kMargin - ry.frac(yv) * (kHeight - 2 * kMargin);
      points += num(px) + "," + num(py) + " ";
    }
    flush();
    out += "<text x='" + std::to_string(kWidth - kMargin - 4) + "' y='" +
           std::to_string(kMargin + 16 + 16 * int(si)) +
           "' text-anchor='end' font-size='12' fill='" + color + "'>" +
           s.label + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string svg_heatmap(const std::string& title,
                        const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        const std::vector<std::vector<double>>& z,
                        bool log_abs) {
  Range rz;
  auto tz = [&](double v) {
    if (!log_abs) return v;
    const double a = std::abs(v);
    return a > 0.0 ? std::log10(a) : std::numeric_limits<double>::quiet_NaN();
  };
  for (const auto& row : z)
    for (double v : row) rz.add(tz(v));
  rz.pad();

  std::string out =
      "<svg xmlns='http://www.w3.org/2000/svg' width='" +
      std::to_string(kWidth) + "' height='" + std::to_string(kHeight) + "'>\n";
  Range rx, ry;
  for (double x : xs) rx.add(x);
  for (double y : ys) ry.add(y);
  rx.pad();
  ry.pad();
  axes(out, title, rx, ry, log_abs ? "log10 |z|" : "z");
  const double cw = double(kWidth - 2 * kMargin) / xs.size();
  const double ch = double(kHeight - 2 * kMargin) / ys.size();
  for (std::size_t r = 0; r < z.size(); ++r) {
    for (std::size_t c = 0; c < z[r].size(); ++c) {
      const double v = tz(z[r][c]);
      if (!std::isfinite(v)) continue;
      const double f = std::clamp(rz.frac(v), 0.0, 1.0);
      const int red = int(255 * f);
      const int blue = int(255 * (1.0 - f));
      const double px = kMargin + c * cw;
      const double py = kHeight - kMargin - (r + 1) * ch;
      out += "<rect x='" + num(px) + "' y='" + num(py) + "' width='" +
             num(cw + 0.5) + "' height='" + num(ch + 0.5) + "' fill='rgb(" +
             std::to_string(red) + ",60," + std::to_string(blue) + ")'/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace effham

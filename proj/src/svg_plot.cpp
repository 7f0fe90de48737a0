#include "optiverse/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace optiverse {

namespace {

std::string escape(std::string const &s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '&':
      out += "&amp;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

std::string px(double v)
{
  char buf[32];
  auto const res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return {buf, res.ptr};
}

std::string tick(double v)
{
  char buf[32];
  auto const res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return {buf, res.ptr};
}

constexpr std::array<char const *, 5> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

} // namespace

std::string svg_line_plot(PlotSpec const &spec)
{
  constexpr double width = 640, height = 420;
  constexpr double left = 80, right = 20, top = 40, bottom = 60;
  double const pw = width - left - right, ph = height - top - bottom;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (auto const &s : spec.series) {
    if (s.x.size() == 0)
      continue;
    xmin = std::min(xmin, s.x.minCoeff());
    xmax = std::max(xmax, s.x.maxCoeff());
    ymin = std::min(ymin, s.y.minCoeff());
    ymax = std::max(ymax, s.y.maxCoeff());
  }
  if (!std::isfinite(xmin)) {
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  if (xmax == xmin)
    xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymin -= 0.5 * std::max(1.0, std::abs(ymin));
    ymax += 0.5 * std::max(1.0, std::abs(ymax));
  }
  if (spec.equal_aspect) {
    double const scale = std::max((xmax - xmin) / pw, (ymax - ymin) / ph);
    double const cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    xmin = cx - 0.5 * scale * pw;
    xmax = cx + 0.5 * scale * pw;
    ymin = cy - 0.5 * scale * ph;
    ymax = cy + 0.5 * scale * ph;
  }
  auto X = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" + px(height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + px(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(spec.title) + "</text>\n";
  out += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" + px(pw) + "\" height=\"" + px(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    double const fx = xmin + (xmax - xmin) * i / 4.0;
    double const fy = ymin + (ymax - ymin) * i / 4.0;
    out += "<text x=\"" + px(X(fx)) + "\" y=\"" + px(top + ph + 18) + "\" text-anchor=\"middle\">" +
           tick(fx) + "</text>\n";
    out += "<text x=\"" + px(left - 6) + "\" y=\"" + px(Y(fy) + 4) + "\" text-anchor=\"end\">" +
           tick(fy) + "</text>\n";
  }
  out += "<text x=\"" + px(left + pw / 2) + "\" y=\"" + px(height - 14) + "\" text-anchor=\"middle\">" +
         escape(spec.x_label) + "</text>\n";
  out += "<text transform=\"translate(16," + px(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(spec.y_label) + "</text>\n";

  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    auto const &s = spec.series[k];
    char const *color = palette[k % palette.size()];
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
    for (Eigen::Index i = 0; i < s.x.size(); ++i)
      out += px(X(s.x(i))) + "," + px(Y(s.y(i))) + " ";
    out += "\"/>\n";
    double const ly = top + 16 + 16 * static_cast<double>(k);
    out += "<line x1=\"" + px(left + pw - 150) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" + px(left + pw - 130) +
           "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + px(left + pw - 124) + "\" y=\"" + px(ly) + "\">" + escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

} // namespace optiverse

#include "dfnls/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace dfnls::svg {

namespace {

constexpr double W = 640, H = 440, ML = 80, MR = 150, MT = 40, MB = 60;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

std::string render(const Plot& p) {
  auto tx = [&](double v) { return p.logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return p.logy ? std::log10(v) : v; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : p.series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if ((p.logx && !(s.x[i] > 0)) || (p.logy && !(s.y[i] > 0))) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double px = 0.05 * (x1 - x0), py = 0.05 * (y1 - y0);
  x0 -= px, x1 += px, y0 -= py, y1 += py;
  const double pw = W - ML - MR, ph = H - MT - MB;
  auto sx = [&](double v) { return ML + (tx(v) - x0) / (x1 - x0) * pw; };
  auto sy = [&](double v) { return MT + (1.0 - (ty(v) - y0) / (y1 - y0)) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!p.comment.empty()) {
    std::string c = p.comment;
    for (std::size_t k = c.find("--"); k != std::string::npos; k = c.find("--")) c.replace(k, 2, "- ");
    o << "<!--\n" << c << "\n-->\n";
  }
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << ML + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
    << esc(p.title) << "</text>\n";
  o << "<text x=\"" << ML + pw / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\">"
    << esc(p.xlabel) << "</text>\n";
  o << "<text x=\"18\" y=\"" << MT + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << MT + ph / 2 << ")\">" << esc(p.ylabel) << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double gx = x0 + (x1 - x0) * k / 4, gy = y0 + (y1 - y0) * k / 4;
    const double X = ML + pw * k / 4, Y = MT + ph * (1.0 - k / 4.0);
    o << "<line x1=\"" << X << "\" y1=\"" << MT + ph << "\" x2=\"" << X << "\" y2=\"" << MT + ph + 5
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << X << "\" y=\"" << MT + ph + 18 << "\" text-anchor=\"middle\">"
      << fmt(p.logx ? std::pow(10.0, gx) : gx) << "</text>\n";
    o << "<line x1=\"" << ML - 5 << "\" y1=\"" << Y << "\" x2=\"" << ML << "\" y2=\"" << Y
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << ML - 8 << "\" y=\"" << Y + 4 << "\" text-anchor=\"end\">"
      << fmt(p.logy ? std::pow(10.0, gy) : gy) << "</text>\n";
  }
  for (std::size_t s = 0; s < p.series.size(); ++s) {
    const auto& ser = p.series[s];
    const char* col = kColors[s % 6];
    std::ostringstream path;
    bool first = true;
    for (std::size_t i = 0; i < ser.x.size() && i < ser.y.size(); ++i) {
      if ((p.logx && !(ser.x[i] > 0)) || (p.logy && !(ser.y[i] > 0))) continue;
      path << (first ? "M" : " L") << sx(ser.x[i]) << "," << sy(ser.y[i]);
      first = false;
      if (ser.markers)
        o << "<circle cx=\"" << sx(ser.x[i]) << "\" cy=\"" << sy(ser.y[i]) << "\" r=\"3\" fill=\""
          << col << "\"/>\n";
    }
    if (ser.line && !first)
      o << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\"/>\n";
    const double ly = MT + 14 + 18 * s;
    o << "<line x1=\"" << W - MR + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - MR + 30 << "\" y2=\""
      << ly << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << W - MR + 34 << "\" y=\"" << ly + 4 << "\">" << esc(ser.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace dfnls::svg

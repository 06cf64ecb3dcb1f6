#include "lab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lab {

namespace {

constexpr int kW = 640, kH = 480, kPad = 48;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string header(const std::string& title) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kW) +
       "\" height=\"" + std::to_string(kH) + "\" viewBox=\"0 0 " + std::to_string(kW) + " " +
       std::to_string(kH) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + std::to_string(kW / 2) + "\" y=\"24\" text-anchor=\"middle\" "
       "font-family=\"monospace\" font-size=\"14\">" + title + "</text>\n";
  s += "<rect x=\"" + std::to_string(kPad) + "\" y=\"" + std::to_string(kPad) + "\" width=\"" +
       std::to_string(kW - 2 * kPad) + "\" height=\"" + std::to_string(kH - 2 * kPad) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  return s;
}

}  // namespace

std::string profile_svg(const std::vector<ProfilePoint>& profile, const std::string& title) {
  std::string s = header(title);
  std::vector<ProfilePoint> pos;
  for (const ProfilePoint& p : profile)
    if (p.scale > 0.0 && p.value > 0.0) pos.push_back(p);
  if (!pos.empty()) {
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const ProfilePoint& p : pos) {
      xlo = std::min(xlo, std::log10(p.scale));
      xhi = std::max(xhi, std::log10(p.scale));
      ylo = std::min(ylo, std::log10(p.value));
      yhi = std::max(yhi, std::log10(p.value));
    }
    if (xhi - xlo < 1e-12) xhi = xlo + 1.0;
    if (yhi - ylo < 1e-12) yhi = ylo + 1.0;
    std::string pts;
    for (const ProfilePoint& p : pos) {
      double x = kPad + (std::log10(p.scale) - xlo) / (xhi - xlo) * (kW - 2 * kPad);
      double y = kH - kPad - (std::log10(p.value) - ylo) / (yhi - ylo) * (kH - 2 * kPad);
      pts += num(x) + "," + num(y) + " ";
    }
    s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"" + pts +
         "\"/>\n";
    s += "<text x=\"" + std::to_string(kPad) + "\" y=\"" + std::to_string(kH - 12) +
         "\" font-family=\"monospace\" font-size=\"11\">log10 scale in [" + num(xlo) + ", " +
         num(xhi) + "], log10 value in [" + num(ylo) + ", " + num(yhi) + "]</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string curve_svg(const SampledCurve& c, const std::string& title) {
  std::string s = header(title);
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (Complex p : c.points()) {
    xlo = std::min(xlo, p.real());
    xhi = std::max(xhi, p.real());
    ylo = std::min(ylo, p.imag());
    yhi = std::max(yhi, p.imag());
  }
  double span = std::max(xhi - xlo, yhi - ylo);
  if (span <= 0) span = 1.0;
  std::string pts;
  for (Complex p : c.points()) {
    double x = kPad + (p.real() - xlo) / span * (kW - 2 * kPad);
    double y = kH - kPad - (p.imag() - ylo) / span * (kH - 2 * kPad);
    pts += num(x) + "," + num(y) + " ";
  }
  if (c.closed() && !c.points().empty()) {
    Complex p = c.points().front();
    double x = kPad + (p.real() - xlo) / span * (kW - 2 * kPad);
    double y = kH - kPad - (p.imag() - ylo) / span * (kH - 2 * kPad);
    pts += num(x) + "," + num(y);
  }
  s += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"" + pts + "\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace lab

#include "plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "micropolar/errors.hpp"

namespace micropolar::app {

namespace {

constexpr double W = 720, H = 480, L = 80, R = 160, T = 40, B = 60;

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os;
}

struct Axis {
  double lo, hi, a, b;  // data range -> pixel range
  double map(double v) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

}  // namespace

void write_loglog_svg(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0)) continue;
      x0 = std::min(x0, std::log10(s.x[i]));
      x1 = std::max(x1, std::log10(s.x[i]));
      y0 = std::min(y0, std::log10(s.y[i]));
      y1 = std::max(y1, std::log10(s.y[i]));
    }
  auto os = open(path);
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << esc(title) << "</text>\n";
  if (!std::isfinite(x0)) {
    os << "<text x=\"" << W / 2 << "\" y=\"" << H / 2 << "\" text-anchor=\"middle\">no positive data</text>\n</svg>\n";
    return;
  }
  x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1);
  y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1);
  const Axis ax{x0, x1, L, W - R}, ay{y0, y1, H - B, T};
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(x0); d <= static_cast<int>(x1); ++d)
    os << "<line x1=\"" << ax.map(d) << "\" y1=\"" << T << "\" x2=\"" << ax.map(d) << "\" y2=\"" << H - B
       << "\" stroke=\"#ddd\"/><text x=\"" << ax.map(d) << "\" y=\"" << H - B + 16
       << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  const int ystep = std::max(1, static_cast<int>((y1 - y0) / 10));
  for (int d = static_cast<int>(y0); d <= static_cast<int>(y1); d += ystep)
    os << "<line x1=\"" << L << "\" y1=\"" << ay.map(d) << "\" x2=\"" << W - R << "\" y2=\"" << ay.map(d)
       << "\" stroke=\"#ddd\"/><text x=\"" << L - 6 << "\" y=\"" << ay.map(d) + 4 << "\" text-anchor=\"end\">1e" << d
       << "</text>\n";
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\">" << esc(xlabel)
     << "</text>\n<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << (T + H - B) / 2 << ")\">" << esc(ylabel) << "</text>\n";
  double ly = T + 10;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\""
       << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (s.x[i] > 0 && s.y[i] > 0) os << ax.map(std::log10(s.x[i])) << ',' << ay.map(std::log10(s.y[i])) << ' ';
    os << "\"/>\n";
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 34 << "\" y2=\"" << ly
       << "\" stroke=\"" << s.color << "\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/><text x=\""
       << W - R + 40 << "\" y=\"" << ly + 4 << "\">" << esc(s.label) << "</text>\n";
    ly += 18;
  }
  os << "</svg>\n";
}

void write_spectrum_svg(const std::filesystem::path& path, const std::string& title,
                        const std::vector<std::complex<double>>& eigenvalues, double im_bound) {
  double re0 = 0, re1 = 0, im1 = im_bound;
  for (const auto& z : eigenvalues) {
    re0 = std::min(re0, z.real());
    re1 = std::max(re1, z.real());
    im1 = std::max(im1, std::abs(z.imag()));
  }
  // Symmetric log scale on the real axis so both the O(k^2) damping and the near-axis modes show.
  auto sl = [](double v) { return std::copysign(std::log10(1.0 + std::abs(v) * 1e6), v); };
  const double lo = sl(re0) - 0.5, hi = std::max(sl(re1), 0.0) + 0.5;
  im1 = std::max(im1, 1e-3) * 1.1;
  const Axis ax{lo, hi, L, W - R}, ay{-im1, im1, H - B, T};
  auto os = open(path);
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << esc(title) << "</text>\n";
  os << "<rect x=\"" << ax.map(lo) << "\" y=\"" << ay.map(im_bound) << "\" width=\"" << ax.map(0) - ax.map(lo)
     << "\" height=\"" << ay.map(-im_bound) - ay.map(im_bound) << "\" fill=\"#e6f0ff\" stroke=\"#7aa0e0\"/>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ax.map(0) << "\" y1=\"" << T << "\" x2=\"" << ax.map(0) << "\" y2=\"" << H - B
     << "\" stroke=\"black\" stroke-dasharray=\"3 3\"/>\n";
  for (const auto& z : eigenvalues)
    os << "<circle cx=\"" << ax.map(sl(z.real())) << "\" cy=\"" << ay.map(z.imag()) << "\" r=\"1.5\" fill=\""
       << (z.real() > 0 ? "#d62728" : "#1f3b73") << "\"/>\n";
  for (double v : {-1e0, -1e-2, -1e-4, 0.0, 1e-4, 1e-2}) {
    if (sl(v) < lo || sl(v) > hi) continue;
    os << "<text x=\"" << ax.map(sl(v)) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << v << "</text>\n";
  }
  os << "<text x=\"" << L - 6 << "\" y=\"" << T + 4 << "\" text-anchor=\"end\">" << im1 << "</text><text x=\"" << L - 6
     << "\" y=\"" << H - B << "\" text-anchor=\"end\">" << -im1 << "</text>\n";
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16
     << "\" text-anchor=\"middle\">Re z (symmetric log scale)</text>\n<text x=\"18\" y=\"" << (T + H - B) / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << (T + H - B) / 2 << ")\">Im z</text>\n";
  os << "<rect x=\"" << W - R + 10 << "\" y=\"" << T + 4 << "\" width=\"20\" height=\"10\" fill=\"#e6f0ff\" stroke=\"#7aa0e0\"/>"
     << "<text x=\"" << W - R + 36 << "\" y=\"" << T + 13 << "\">half-slab</text>\n</svg>\n";
}

}  // namespace micropolar::app

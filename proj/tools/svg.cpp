#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cli.hpp"
#include "lorhelix/error.hpp"

namespace lorhelix::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string fmt_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo;
  double hi;
};

}  // namespace

Projection parse_projection(const std::string& text) {
  if (text == "x1x2") return Projection::X1X2;
  if (text == "x1x3") return Projection::X1X3;
  if (text == "x2x3") return Projection::X2X3;
  throw Error(ErrorCode::InvalidArgument, "projection must be x1x2, x1x3 or x2x3");
}

SvgResult render_svg(const CurveSamples& samples, Projection projection, const std::string& title) {
  if (samples.size() == 0) throw Error(ErrorCode::InvalidArgument, "no samples to plot");
  std::size_t ia = 0;
  std::size_t ib = 1;
  if (projection == Projection::X1X3) ib = 2;
  if (projection == Projection::X2X3) {
    ia = 1;
    ib = 2;
  }
  const char* names[] = {"x1", "x2", "x3"};

  SvgResult res;
  auto range_of = [&](std::size_t c, const char* which) {
    Range r{samples.psi[0][c], samples.psi[0][c]};
    for (const auto& p : samples.psi) {
      r.lo = std::min(r.lo, p[c]);
      r.hi = std::max(r.hi, p[c]);
    }
    const double scale = std::max({1.0, std::abs(r.lo), std::abs(r.hi)});
    if (r.hi - r.lo <= 1e-12 * scale) {
      res.warnings.push_back(std::string("degenerate ") + which + " extent: " + names[c] +
                             " is constant at " + fmt_label(r.lo));
      r.lo -= 0.5;
      r.hi += 0.5;
    }
    return r;
  };
  const Range rx = range_of(ia, "horizontal");
  const Range ry = range_of(ib, "vertical");

  const double sx = (kWidth - 2.0 * kMargin) / (rx.hi - rx.lo);
  const double sy = (kHeight - 2.0 * kMargin) / (ry.hi - ry.lo);
  auto px = [&](double x) { return kMargin + (x - rx.lo) * sx; };
  auto py = [&](double y) { return kHeight - kMargin - (y - ry.lo) * sy; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<title>" << title << "</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
     << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
     << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"#888\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
     << names[ia] << "</text>\n"
     << "<text x=\"20\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << kHeight / 2 << ")\">" << names[ib] << "</text>\n"
     << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 18 << "\">" << fmt_label(rx.lo)
     << "</text>\n"
     << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 18
     << "\" text-anchor=\"end\">" << fmt_label(rx.hi) << "</text>\n"
     << "<text x=\"" << kMargin - 5 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\">"
     << fmt_label(ry.lo) << "</text>\n"
     << "<text x=\"" << kMargin - 5 << "\" y=\"" << kMargin + 5 << "\" text-anchor=\"end\">"
     << fmt_label(ry.hi) << "</text>\n"
     << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    os << (i ? " " : "") << fmt(px(samples.psi[i][ia])) << ',' << fmt(py(samples.psi[i][ib]));
  }
  os << "\"/>\n</svg>\n";
  res.svg = os.str();
  return res;
}

}  // namespace lorhelix::cli

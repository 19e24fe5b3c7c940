#include "atlas/svg.hpp"

#include <cstdio>
#include <string>

namespace atlas {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

// "--" may not appear inside an XML comment.
std::string comment(const Json& header) {
  std::string text = header.dump();
  for (std::size_t pos = text.find("--"); pos != std::string::npos; pos = text.find("--", pos)) {
    text.replace(pos, 2, "-\\u002d");
  }
  return "<!-- " + text + " -->\n";
}

std::string open_svg(double w, double h, const std::string& view) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
         "\" viewBox=\"" + view + "\">\n";
}

}  // namespace

std::string tiling_svg(const PlanarNetwork& net, const RectangleTiling& t, const Json& header,
                       const SvgOptions& options) {
  const double W = options.width;
  const double scale = W / t.eta;
  const double H = scale;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" + comment(header);
  out += open_svg(W, H, "0 0 " + fmt(W) + " " + fmt(H));
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) + "\" fill=\"white\"/>\n";
  out += "<g stroke=\"black\" stroke-width=\"0.5\">\n";
  auto piece = [&](double x0, double w, const Rect& r, bool to_boundary) {
    out += "<rect x=\"" + fmt(x0 * scale) + "\" y=\"" + fmt((1.0 - r.y_hi) * H) + "\" width=\"" + fmt(w * scale) +
           "\" height=\"" + fmt((r.y_hi - r.y_lo) * H) + "\" fill=\"" + (to_boundary ? "#c6dbef" : "#f0f0f0") +
           "\"/>\n";
  };
  for (EdgeId e = 0; e < t.rect.size(); ++e) {
    const Rect& r = t.rect[e];
    if (r.width <= 0.0 || !(r.y_hi > r.y_lo)) continue;
    const bool to_boundary = net.is_absorbing(net.head(r.up_dart));
    const double end = r.theta_start + r.width;
    if (end <= t.eta) {
      piece(r.theta_start, r.width, r, to_boundary);
    } else {
      piece(r.theta_start, t.eta - r.theta_start, r, to_boundary);
      piece(0.0, end - t.eta, r, to_boundary);
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string packing_svg(const PlanarNetwork& net, const CirclePacking& p, const Json& header,
                        const SvgOptions& options) {
  const double W = options.width;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" + comment(header);
  out += open_svg(W, W, "-1.05 -1.05 2.1 2.1");
  out += "<rect x=\"-1.05\" y=\"-1.05\" width=\"2.1\" height=\"2.1\" fill=\"white\"/>\n";
  out += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"gray\" stroke-width=\"0.004\" "
         "stroke-dasharray=\"0.02 0.02\"/>\n";
  out += "<g stroke=\"black\" stroke-width=\"0.002\">\n";
  for (VertexId v = 0; v < p.center.size(); ++v) {
    // SVG y grows downwards.
    out += "<circle cx=\"" + fmt(p.center[v].real()) + "\" cy=\"" + fmt(-p.center[v].imag()) + "\" r=\"" +
           fmt(p.radius[v]) + "\" fill=\"" + (net.is_absorbing(v) ? "#c6dbef" : "#f0f0f0") + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace atlas

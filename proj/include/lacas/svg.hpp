// SVG rendering of instances, explored arcs and solution paths.
#pragma once

#include <array>
#include <numbers>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lacas/geometry.hpp"
#include "lacas/search_tree.hpp"

namespace lacas {

struct LabeledPath {
  std::vector<Point> points;
  std::string label;
};

struct RenderOptions {
  std::vector<Segment> arcs;  // drawn as fine lines
  std::vector<LabeledPath> paths;
  double size_px = 800.0;
};

/// Parent-pointer arcs of every explored node.
inline std::vector<Segment> tree_arcs(const SearchTree& tree) {
  std::vector<Segment> arcs;
  const auto& ins = tree.instance();
  for (NodeId id = 0; id < tree.size(); ++id) {
    const auto& n = tree[id];
    if (n.parent != kNoNode) arcs.push_back({ins.at(tree[n.parent].loc), ins.at(n.loc)});
  }
  return arcs;
}

inline void render_svg(std::ostream& os, const ProblemInstance& ins,
                       const RenderOptions& opt = {}) {
  constexpr std::array<const char*, 6> kColors{"#E91E63", "#1AC938", "#023EFF",
                                               "#E8000B", "#FFC400", "#8B2BE2"};
  const double s = opt.size_px;
  const double margin = 0.1 * s;  // obstacles may reach 0.1 outside the square
  const auto X = [&](double x) { return margin + x * s; };
  const auto Y = [&](double y) { return margin + (1.0 - y) * s; };
  const double total = s + 2 * margin;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total << "\" height=\""
     << total << "\" viewBox=\"0 0 " << total << ' ' << total << "\">\n";
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << s << "\" height=\""
     << s << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

  os << "<g id=\"obstacles\" stroke=\"#808080\" stroke-width=\"3\" stroke-linecap=\"round\">\n";
  for (const auto& o : ins.obstacles)
    os << "<line x1=\"" << X(o.a.x) << "\" y1=\"" << Y(o.a.y) << "\" x2=\"" << X(o.b.x)
       << "\" y2=\"" << Y(o.b.y) << "\"/>\n";
  os << "</g>\n";

  os << "<g id=\"arcs\" stroke=\"#023EFF\" stroke-width=\"0.4\" stroke-opacity=\"0.6\">\n";
  for (const auto& a : opt.arcs)
    os << "<line x1=\"" << X(a.a.x) << "\" y1=\"" << Y(a.a.y) << "\" x2=\"" << X(a.b.x)
       << "\" y2=\"" << Y(a.b.y) << "\"/>\n";
  os << "</g>\n";

  const double r = ins.size() > 5000 ? 0.6 : 1.2;
  os << "<g id=\"locations\" fill=\"#404040\">\n";
  for (const auto& p : ins.locations)
    os << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"" << r << "\"/>\n";
  os << "</g>\n";

  os << "<g id=\"paths\" fill=\"none\" stroke-width=\"3\" stroke-linejoin=\"round\">\n";
  for (std::size_t i = 0; i < opt.paths.size(); ++i) {
    const auto& p = opt.paths[i];
    os << "<polyline class=\"solution\" stroke=\"" << kColors[i % kColors.size()] << "\" points=\"";
    for (std::size_t k = 0; k < p.points.size(); ++k)
      os << (k ? " " : "") << X(p.points[k].x) << ',' << Y(p.points[k].y);
    os << "\"><title>" << p.label << "</title></polyline>\n";
  }
  os << "</g>\n";

  const Point st = ins.at(ins.start);
  const Point gl = ins.at(ins.goal);
  os << "<circle id=\"start\" cx=\"" << X(st.x) << "\" cy=\"" << Y(st.y)
     << "\" r=\"8\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  os << "<polygon id=\"goal\" fill=\"#FFC400\" stroke=\"black\" points=\"";
  for (int k = 0; k < 10; ++k) {
    const double rad = (k % 2 == 0) ? 10.0 : 4.0;
    const double ang = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
    os << (k ? " " : "") << X(gl.x) + rad * std::cos(ang) << ',' << Y(gl.y) + rad * std::sin(ang);
  }
  os << "\"/>\n";
  os << "</svg>\n";
}

inline void render_svg(const std::string& path, const ProblemInstance& ins,
                       const RenderOptions& opt = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  render_svg(out, ins, opt);
}

}  // namespace lacas

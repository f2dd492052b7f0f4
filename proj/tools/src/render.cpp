#include "ehm/cli/render.hpp"

#include <cmath>
#include <sstream>

#include "ehm/errors.hpp"

namespace ehm::cli {
namespace {

constexpr double kScale = 40.0;
constexpr double kPad = 30.0;

struct View {
  long x0, x1, y0, y1;

  double px(double x) const { return kPad + (x - x0) * kScale; }
  double py(double y) const { return kPad + (y1 - y) * kScale; }
  double width() const { return 2 * kPad + (x1 - x0) * kScale; }
  double height() const { return 2 * kPad + (y1 - y0) * kScale; }
};

View view_of(std::span<const LatticeVector> window) {
  if (window.empty()) throw InputError("empty window");
  View v{window[0][0].get_si(), window[0][0].get_si(), window[0][1].get_si(), window[0][1].get_si()};
  for (const auto& w : window) {
    v.x0 = std::min(v.x0, w[0].get_si());
    v.x1 = std::max(v.x1, w[0].get_si());
    v.y0 = std::min(v.y0, w[1].get_si());
    v.y1 = std::max(v.y1, w[1].get_si());
  }
  return v;
}

void require_rank2(const MorseContext& ctx) {
  if (ctx.rank() != 2) throw UnsupportedType("drawing needs rank-2 data");
}

std::string header(const View& v) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << v.width() << "\" height=\"" << v.height()
     << "\" viewBox=\"0 0 " << v.width() << " " << v.height() << "\">\n"
     << "<defs><clipPath id=\"view\"><rect x=\"" << v.px(v.x0) << "\" y=\"" << v.py(v.y1) << "\" width=\""
     << (v.x1 - v.x0) * kScale << "\" height=\"" << (v.y1 - v.y0) * kScale << "\"/></clipPath></defs>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (long x = v.x0; x <= v.x1; ++x)
    for (long y = v.y0; y <= v.y1; ++y)
      os << "<circle cx=\"" << v.px(x) << "\" cy=\"" << v.py(y) << "\" r=\"1.5\" fill=\"#bbb\"/>\n";
  os << "<line x1=\"" << v.px(v.x0) << "\" y1=\"" << v.py(0) << "\" x2=\"" << v.px(v.x1) << "\" y2=\"" << v.py(0)
     << "\" stroke=\"#ddd\"/>\n";
  os << "<line x1=\"" << v.px(0) << "\" y1=\"" << v.py(v.y0) << "\" x2=\"" << v.px(0) << "\" y2=\"" << v.py(v.y1)
     << "\" stroke=\"#ddd\"/>\n";
  return os.str();
}

const char* degree_colour(std::size_t k) {
  static const char* colours[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
  return colours[k % 6];
}

}  // namespace

std::string svg_regions(const MorseContext& ctx, std::size_t chamber, std::span<const LatticeVector> window) {
  require_rank2(ctx);
  View v = view_of(window);
  std::ostringstream os;
  os << header(v);
  const double reach = 4.0 * static_cast<double>((v.x1 - v.x0) + (v.y1 - v.y0) + 1);
  os << "<g clip-path=\"url(#view)\">\n";
  for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p) {
    GammaRegion g = ctx.region(chamber, p);
    for (const auto& apex : g.apexes)
      for (const auto& gen : g.generators) {
        double dx = gen.direction[0].get_d(), dy = gen.direction[1].get_d();
        double len = std::hypot(dx, dy);
        double ax = apex[0].get_d(), ay = apex[1].get_d();
        os << "<line x1=\"" << v.px(ax) << "\" y1=\"" << v.py(ay) << "\" x2=\"" << v.px(ax + dx / len * reach)
           << "\" y2=\"" << v.py(ay + dy / len * reach) << "\" stroke=\"" << degree_colour(g.degree)
           << "\" stroke-width=\"1.5\"" << (gen.strict ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
      }
  }
  os << "</g>\n";
  for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p) {
    GammaRegion g = ctx.region(chamber, p);
    for (const auto& apex : g.apexes) {
      double ax = apex[0].get_d(), ay = apex[1].get_d();
      os << "<circle class=\"apex\" cx=\"" << v.px(ax) << "\" cy=\"" << v.py(ay) << "\" r=\"4\" fill=\""
         << degree_colour(g.degree) << "\"/>\n";
      os << "<text x=\"" << v.px(ax) + 6 << "\" y=\"" << v.py(ay) - 6 << "\" font-size=\"11\">" << g.point_label
         << " (n=" << g.degree << ")</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_verdicts(const MorseContext& ctx, std::span<const LatticeVector> window) {
  require_rank2(ctx);
  View v = view_of(window);
  std::ostringstream os;
  os << header(v);
  for (const auto& xi : window) {
    SupportVerdict sv = support_verdict(ctx, xi);
    bool obstructed = false, forced = false, all_excluded = true;
    std::size_t forced_degree = 0;
    for (std::size_t k = 0; k < sv.degrees.size(); ++k) {
      Verdict s = sv.degrees[k].status;
      obstructed = obstructed || s == Verdict::Obstructed;
      if (s == Verdict::Forced && !forced) {
        forced = true;
        forced_degree = k;
      }
      all_excluded = all_excluded && s == Verdict::Excluded;
    }
    double x = v.px(xi[0].get_d()), y = v.py(xi[1].get_d());
    if (obstructed) {
      os << "<circle class=\"obstructed\" cx=\"" << x << "\" cy=\"" << y << "\" r=\"9\" fill=\"none\" stroke=\"red\" "
         << "stroke-width=\"2\"/>\n<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"red\"/>\n"
         << "<text x=\"" << x + 10 << "\" y=\"" << y - 10 << "\" font-size=\"11\" fill=\"red\">" << xi.str()
         << "</text>\n";
    } else if (forced) {
      os << "<circle class=\"forced\" cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\""
         << degree_colour(forced_degree) << "\"/>\n";
    } else if (!all_excluded) {
      os << "<circle class=\"unknown\" cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"none\" stroke=\"#666\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string csv_character(const FormalCharacter& ch) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ch.rank(); ++i) os << "x" << i + 1 << ",";
  os << "coeff\n";
  for (const auto& [w, m] : ch.terms()) {
    for (const auto& c : w) os << c << ",";
    os << m << "\n";
  }
  return os.str();
}

std::string csv_verdicts(const MorseContext& ctx, std::span<const LatticeVector> window) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ctx.rank(); ++i) os << "x" << i + 1 << ",";
  os << "degree,verdict\n";
  for (const auto& xi : window) {
    SupportVerdict sv = support_verdict(ctx, xi);
    for (std::size_t k = 0; k < sv.degrees.size(); ++k) {
      for (const auto& c : xi) os << c << ",";
      os << k << "," << to_string(sv.degrees[k].status) << "\n";
    }
  }
  return os.str();
}

}  // namespace ehm::cli

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "mwisr/geom.hpp"
#include "mwisr/instance.hpp"
#include "mwisr/region.hpp"

namespace mwisr::svg {

// Minimal SVG emitter for instances, line sets, faces, and cut regions.
// Math orientation: y grows upward (the viewport is flipped once).
class Canvas {
 public:
  explicit Canvas(int n, double scale = 24.0) : n_(n), scale_(scale) {}

  void rect(double x1, double y1, double x2, double y2, const std::string& fill,
            const std::string& stroke = "none", double opacity = 1.0) {
    body_ << "<rect x=\"" << x1 * scale_ << "\" y=\"" << (n_ - y2) * scale_
          << "\" width=\"" << (x2 - x1) * scale_ << "\" height=\""
          << (y2 - y1) * scale_ << "\" fill=\"" << fill << "\" stroke=\""
          << stroke << "\" stroke-width=\"1\" fill-opacity=\"" << opacity
          << "\"/>\n";
  }

  void segment(const Segment& s, const std::string& color, double width = 2.0) {
    Point a = s.a(), b = s.b();
    body_ << "<line x1=\"" << a.x * scale_ << "\" y1=\"" << (n_ - a.y) * scale_
          << "\" x2=\"" << b.x * scale_ << "\" y2=\"" << (n_ - b.y) * scale_
          << "\" stroke=\"" << color << "\" stroke-width=\"" << width
          << "\" stroke-linecap=\"square\"/>\n";
  }

  void label(double x, double y, const std::string& text) {
    body_ << "<text x=\"" << x * scale_ << "\" y=\"" << (n_ - y) * scale_
          << "\" font-size=\"" << scale_ * 0.5 << "\" fill=\"#333\">" << text
          << "</text>\n";
  }

  void region(const Region& r, const std::string& fill, double opacity = 0.5) {
    for (int y = 0; y < r.grid_h(); ++y)
      for (int x = 0; x < r.grid_w(); ++x)
        if (r.cell(x, y)) rect(x, y, x + 1, y + 1, fill, "none", opacity);
  }

  void grid(int cell) {
    for (int c = 0; c <= n_; c += cell) {
      segment({Axis::Vertical, c, 0, n_}, "#dddddd", 0.5);
      segment({Axis::Horizontal, c, 0, n_}, "#dddddd", 0.5);
    }
  }

  std::string str() const {
    std::ostringstream out;
    double side = n_ * scale_;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side
        << "\" height=\"" << side << "\" viewBox=\"0 0 " << side << " " << side
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  int n_;
  double scale_;
  std::ostringstream body_;
};

inline std::string fill_for_id(std::int64_t id) {
  static const char* palette[] = {"#7eb3d4", "#f2a65e", "#9bc995", "#d49ac2",
                                  "#c9b27e", "#8fd0c9", "#e58a8a", "#b0a4e3"};
  return palette[std::uint64_t(id) % 8];
}

inline void draw_instance(Canvas& canvas, const Instance& inst) {
  for (const auto& r : inst.rects) {
    canvas.rect(r.x1, r.y1, r.x2, r.y2, fill_for_id(r.id), "#444444", 0.6);
    canvas.label(r.x1 + 0.2, r.y2 - 0.3, std::to_string(r.id));
  }
}

inline std::string render_instance(const Instance& inst) {
  Canvas canvas(std::max(inst.N, 1));
  draw_instance(canvas, inst);
  return canvas.str();
}

inline std::string render_lines(const Instance& inst,
                                const std::vector<Segment>& lines,
                                const std::string& color = "#202020") {
  Canvas canvas(std::max(inst.N, 1));
  draw_instance(canvas, inst);
  for (const auto& s : lines) canvas.segment(s, color);
  return canvas.str();
}

inline std::string render_cut(const Instance& inst, const Region& cut) {
  Canvas canvas(std::max(inst.N, 1));
  canvas.region(cut, "#ffd27e", 0.45);
  draw_instance(canvas, inst);
  return canvas.str();
}

}  // namespace mwisr::svg

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <string>

#include "wordsimplex/errors.hpp"
#include "wordsimplex/report.hpp"

namespace wordsimplex {
namespace {

void append_shortest(std::string& out, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

// RFC 4180 quoting; tokens may contain commas or quotes.
void append_csv_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv(const EmbeddingSpace& space, const TriangleProjection& proj, const Containment& inside) {
  std::string out = "token,x,y,inside_triangle,inside_incircle\n";
  out.reserve(space.size() * 48);
  for (std::size_t i = 0; i < space.size(); ++i) {
    append_csv_field(out, space.word(i));
    out += ',';
    append_shortest(out, proj.coords[i].x);
    out += ',';
    append_shortest(out, proj.coords[i].y);
    out += inside.inside_triangle[i] ? ",true" : ",false";
    out += inside.inside_incircle[i] ? ",true\n" : ",false\n";
  }
  return out;
}

std::string svg(const EmbeddingSpace& space, const std::array<std::size_t, 3>& triple,
                const TriangleProjection& proj, const Incircle& circle) {
  constexpr double kSize = 900.0;
  constexpr double kMargin = 60.0;

  double min_x = proj.tri2d[0].x, max_x = min_x, min_y = proj.tri2d[0].y, max_y = min_y;
  auto grow = [&](Point2 p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const auto& p : proj.tri2d) grow(p);
  for (const auto& p : proj.coords) grow(p);
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  const double scale = (kSize - 2.0 * kMargin) / span;
  auto sx = [&](double x) { return kMargin + (x - min_x) * scale; };
  auto sy = [&](double y) { return kSize - kMargin - (y - min_y) * scale; };

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                kSize, kSize, kSize, kSize);
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<g fill=\"#1f77b4\" fill-opacity=\"0.35\">\n";
  for (const auto& p : proj.coords) {
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.2\"/>\n", sx(p.x), sy(p.y));
    out += buf;
  }
  out += "</g>\n";
  std::snprintf(buf, sizeof(buf),
                "<polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\" fill=\"none\" stroke=\"#d62728\" "
                "stroke-width=\"1.5\"/>\n",
                sx(proj.tri2d[0].x), sy(proj.tri2d[0].y), sx(proj.tri2d[1].x), sy(proj.tri2d[1].y),
                sx(proj.tri2d[2].x), sy(proj.tri2d[2].y));
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" stroke=\"#2ca02c\" "
                "stroke-width=\"1.2\" stroke-dasharray=\"4 3\"/>\n",
                sx(circle.center.x), sy(circle.center.y), circle.radius * scale);
  out += buf;
  for (std::size_t v = 0; v < 3; ++v) {
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"14\" "
                  "fill=\"#d62728\">",
                  sx(proj.tri2d[v].x) + 4.0, sy(proj.tri2d[v].y) - 4.0);
    out += buf;
    out += xml_escape(space.word(triple[v]));
    out += "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string emit_projection(const EmbeddingSpace& space, const std::array<std::size_t, 3>& triple,
                            ProjectionFormat format) {
  const TriangleProjection proj = project_triple(space, triple[0], triple[1], triple[2]);
  const Incircle circle = incircle(proj.tri2d);
  if (format == ProjectionFormat::kSvg) return svg(space, triple, proj, circle);
  return csv(space, proj, classify(proj, circle));
}

}  // namespace wordsimplex

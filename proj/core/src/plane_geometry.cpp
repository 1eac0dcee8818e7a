#include "wordsimplex/plane_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "wordsimplex/errors.hpp"

namespace wordsimplex {
namespace {

constexpr const char* kModule = "plane_geometry";

[[noreturn]] void degenerate(const std::string& what) {
  throw Error(ErrorCode::kDegenerateTriangle, kModule, what);
}

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Rejects triangles whose doubled signed area is negligible relative to the
// squared longest edge.
double checked_doubled_area(const Triangle2& t) {
  const double scale =
      std::max({distance(t[0], t[1]), distance(t[1], t[2]), distance(t[2], t[0])});
  const double det = cross(t[0], t[1], t[2]);
  if (!(scale > 0.0) || std::abs(det) <= 1e-12 * scale * scale) degenerate("degenerate 2D triangle");
  return det;
}

// Validates the triangle once, then answers per-point containment queries.
class PointClassifier {
 public:
  PointClassifier(const Triangle2& tri, const Incircle& circle)
      : tri_(tri), det_(checked_doubled_area(tri)), circle_(circle),
        r2_(circle.radius * circle.radius) {}

  bool in_triangle(Point2 p) const {
    const double l2 = cross(tri_[0], p, tri_[2]) / det_;
    const double l3 = cross(tri_[0], tri_[1], p) / det_;
    return inside_triangle({1.0 - l2 - l3, l2, l3});
  }

  bool in_incircle(Point2 p) const {
    const double dx = p.x - circle_.center.x;
    const double dy = p.y - circle_.center.y;
    return dx * dx + dy * dy <= r2_;
  }

 private:
  Triangle2 tri_;
  double det_;
  Incircle circle_;
  double r2_;
};

void check_index(const EmbeddingSpace& space, std::size_t i) {
  if (i >= space.size()) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "word index " + std::to_string(i) + " out of range");
  }
}

}  // namespace

PlaneFrame plane_basis(const Vector& a, const Vector& b, const Vector& c) {
  if (a.size() != b.size() || a.size() != c.size()) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "plane_basis: dimension mismatch");
  }
  Vector ab = b - a;
  const double ab_norm = ab.norm();
  if (ab_norm < 1e-12) degenerate("coincident triangle vertices");
  PlaneFrame frame;
  frame.origin = a;
  frame.e1 = ab / ab_norm;
  const Vector ac = c - a;
  Vector residual = ac - ac.dot(frame.e1) * frame.e1;
  const double residual_norm = residual.norm();
  if (residual_norm < 1e-9 * ac.norm() || residual_norm == 0.0) degenerate("collinear triangle vertices");
  frame.e2 = residual / residual_norm;
  return frame;
}

std::vector<Point2> project_to_plane(const EmbeddingSpace& space, const PlaneFrame& frame) {
  if (static_cast<std::size_t>(frame.origin.size()) != space.dim()) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "frame dimension does not match the space");
  }
  Eigen::Matrix<double, Eigen::Dynamic, 2> basis(frame.e1.size(), 2);
  basis.col(0) = frame.e1;
  basis.col(1) = frame.e2;
  // (v - o) . e == v . e - o . e; one GEMM instead of materialising v - o.
  const Eigen::Matrix<double, Eigen::Dynamic, 2> xy = space.vectors() * basis;
  const double ox = frame.origin.dot(frame.e1);
  const double oy = frame.origin.dot(frame.e2);
  std::vector<Point2> coords(space.size());
  for (Eigen::Index i = 0; i < xy.rows(); ++i) coords[static_cast<std::size_t>(i)] = {xy(i, 0) - ox, xy(i, 1) - oy};
  return coords;
}

std::array<double, 3> barycentric(Point2 p, const Triangle2& tri) {
  const double det = checked_doubled_area(tri);
  const double l2 = cross(tri[0], p, tri[2]) / det;
  const double l3 = cross(tri[0], tri[1], p) / det;
  return {1.0 - l2 - l3, l2, l3};
}

bool inside_triangle(const std::array<double, 3>& lambda) noexcept {
  return std::min({lambda[0], lambda[1], lambda[2]}) >= -kInsideTolerance;
}

Incircle incircle(const Triangle2& tri) {
  const double det = checked_doubled_area(tri);
  const double alpha = distance(tri[1], tri[2]);  // opposite A
  const double beta = distance(tri[2], tri[0]);   // opposite B
  const double gamma = distance(tri[0], tri[1]);  // opposite C
  const double perimeter = alpha + beta + gamma;
  Incircle out;
  out.center = {(alpha * tri[0].x + beta * tri[1].x + gamma * tri[2].x) / perimeter,
                (alpha * tri[0].y + beta * tri[1].y + gamma * tri[2].y) / perimeter};
  out.radius = (0.5 * std::abs(det)) / (0.5 * perimeter);
  return out;
}

TriangleProjection project_triple(const EmbeddingSpace& space, std::size_t va, std::size_t vb,
                                  std::size_t vc) {
  check_index(space, va);
  check_index(space, vb);
  check_index(space, vc);
  const Vector a = space.row(va).transpose();
  const Vector b = space.row(vb).transpose();
  const Vector c = space.row(vc).transpose();
  TriangleProjection out;
  out.frame = plane_basis(a, b, c);
  const Vector ab = b - a;
  const Vector ac = c - a;
  out.tri2d = {Point2{0.0, 0.0}, Point2{ab.dot(out.frame.e1), ab.dot(out.frame.e2)},
               Point2{ac.dot(out.frame.e1), ac.dot(out.frame.e2)}};
  out.coords = project_to_plane(space, out.frame);
  return out;
}

Containment classify(const TriangleProjection& projection, const Incircle& circle) {
  const PointClassifier classifier(projection.tri2d, circle);
  Containment out;
  const std::size_t n = projection.coords.size();
  out.inside_triangle.resize(n);
  out.inside_incircle.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.inside_triangle[i] = classifier.in_triangle(projection.coords[i]);
    out.inside_incircle[i] = classifier.in_incircle(projection.coords[i]);
  }
  return out;
}

TripleStats triangle_stats(const EmbeddingSpace& space, std::size_t va, std::size_t vb,
                           std::size_t vc) {
  const TriangleProjection projection = project_triple(space, va, vb, vc);
  const Incircle circle = incircle(projection.tri2d);
  const PointClassifier classifier(projection.tri2d, circle);

  std::size_t inside = 0;
  std::size_t outside_circle = 0;
  for (const Point2& p : projection.coords) {
    if (classifier.in_triangle(p)) ++inside;
    if (!classifier.in_incircle(p)) ++outside_circle;
  }
  TripleStats stats;
  stats.total = projection.coords.size();
  stats.inside_triangle_count = inside;
  stats.outside_incircle_count = outside_circle;
  stats.inside_triangle_fraction = static_cast<double>(inside) / static_cast<double>(stats.total);
  stats.outside_incircle_fraction = static_cast<double>(outside_circle) / static_cast<double>(stats.total);
  stats.incenter = circle.center;
  stats.inradius = circle.radius;
  return stats;
}

}  // namespace wordsimplex

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "wordsimplex/embedding_io.hpp"
#include "wordsimplex/types.hpp"

namespace wordsimplex {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

using Triangle2 = std::array<Point2, 3>;

// Orthonormal frame of the affine plane through three points.
struct PlaneFrame {
  Vector origin;
  Vector e1;
  Vector e2;
};

struct TriangleProjection {
  PlaneFrame frame;
  Triangle2 tri2d;             // images of a, b, c; tri2d[0] == (0, 0)
  std::vector<Point2> coords;  // one per word, vocabulary order
};

struct Incircle {
  Point2 center;
  double radius = 0.0;
};

struct TripleStats {
  double inside_triangle_fraction = 0.0;
  double outside_incircle_fraction = 0.0;
  std::size_t inside_triangle_count = 0;
  std::size_t outside_incircle_count = 0;
  std::size_t total = 0;
  Point2 incenter;
  double inradius = 0.0;
};

/// Points whose smallest barycentric coordinate is at least -kInsideTolerance
/// count as inside, so vertices and edges are inside.
inline constexpr double kInsideTolerance = 1e-9;

/// Gram-Schmidt frame: e1 along b - a, e2 along the part of c - a orthogonal
/// to e1. Throws Error(kDegenerateTriangle) when |b - a| < 1e-12 or that
/// residual is below 1e-9 |c - a|.
PlaneFrame plane_basis(const Vector& a, const Vector& b, const Vector& c);

std::vector<Point2> project_to_plane(const EmbeddingSpace& space, const PlaneFrame& frame);

/// Solves p = l1 A + l2 B + l3 C with l1 + l2 + l3 = 1.
std::array<double, 3> barycentric(Point2 p, const Triangle2& tri);

bool inside_triangle(const std::array<double, 3>& lambda) noexcept;

Incircle incircle(const Triangle2& tri);

TriangleProjection project_triple(const EmbeddingSpace& space, std::size_t va, std::size_t vb,
                                  std::size_t vc);

/// Containment statistics of the whole cloud (vertices included) projected
/// onto the plane of words va, vb, vc.
TripleStats triangle_stats(const EmbeddingSpace& space, std::size_t va, std::size_t vb,
                           std::size_t vc);

/// Per-word containment verdicts for an already computed projection.
struct Containment {
  std::vector<bool> inside_triangle;
  std::vector<bool> inside_incircle;
};
Containment classify(const TriangleProjection& projection, const Incircle& circle);

}  // namespace wordsimplex

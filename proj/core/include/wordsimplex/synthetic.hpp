#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wordsimplex/embedding_io.hpp"
#include "wordsimplex/types.hpp"

namespace wordsimplex {

struct SyntheticParams {
  std::size_t dim = 50;
  std::size_t vertices = 12;
  std::size_t points = 20000;
  double alpha = 1.5;  // symmetric Dirichlet concentration; > 1 gives a dense centre
  double sigma = 0.0;  // isotropic Gaussian noise on non-corner points
  std::uint64_t seed = 0;
  bool irregular = false;  // random corner placement instead of a regular simplex

  void validate() const;
};

/// Point cloud filling a known simplex. Rows 0..V-1 are the exact corners.
struct SyntheticCloud {
  EmbeddingSpace space;
  std::vector<std::size_t> true_vertices;
  Matrix corners;  // V x D, same values as the first V rows
  SyntheticParams params;
};

/// Corners are the V canonical standard-simplex vertices, scaled to unit
/// edges, rotated by a seeded random orthogonal matrix and translated by a
/// seeded random offset. Remaining points are Dirichlet(alpha) mixtures of the
/// corners plus N(0, sigma^2) noise per coordinate. Weights and noise use
/// separate random streams, so changing sigma leaves the mixtures unchanged.
SyntheticCloud generate_simplex_cloud(const SyntheticParams& params);

/// Circumradius of the regular simplex with `vertices` corners and unit edges.
double regular_simplex_circumradius(std::size_t vertices);

/// Ground-truth sidecar: {"vertex_tokens", "vertex_indices", "gen_params"}.
std::string ground_truth_json(const SyntheticCloud& cloud);

struct GroundTruth {
  std::vector<std::string> vertex_tokens;
  SyntheticParams params;
};
GroundTruth parse_ground_truth_json(const std::string& text);

}  // namespace wordsimplex

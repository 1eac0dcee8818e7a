#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wordsimplex/embedding_io.hpp"
#include "wordsimplex/types.hpp"

namespace wordsimplex {

struct PcaModel {
  Vector mean;           // cloud centroid, length D
  Matrix axes;           // m x D, orthonormal rows, descending eigenvalue
  Vector eigenvalues;    // length m, non-increasing, clamped at 0
  double total_variance = 0.0;  // trace of the covariance (sum of all D eigenvalues)

  std::size_t num_axes() const noexcept { return static_cast<std::size_t>(axes.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(axes.cols()); }
};

/// Principal axes of the cloud from the explicit D x D covariance (1/N
/// convention). Each axis is oriented so that its largest-magnitude
/// coordinate is positive, ties going to the lower coordinate index.
///
/// Covariance is accumulated over fixed-size row blocks and reduced in block
/// order, so the model is bit-identical for any `threads` value.
PcaModel fit_pca(const EmbeddingSpace& space, std::size_t num_axes, unsigned threads = 1);

/// score[j] = (vectors[j] - mean) . axes[axis_index]
std::vector<double> project_onto_axis(const EmbeddingSpace& space, const PcaModel& pca,
                                      std::size_t axis_index);

/// Debug dump: {"dim", "num_axes", "total_variance", "mean", "eigenvalues", "axes"}.
std::string pca_to_json(const PcaModel& pca);

}  // namespace wordsimplex

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wordsimplex/embedding_io.hpp"
#include "wordsimplex/pca.hpp"

namespace wordsimplex {

enum class AxisEnd { kMin, kMax };

std::string_view axis_end_name(AxisEnd end) noexcept;

/// Raw extreme point of one PCA axis.
struct VertexCandidate {
  std::size_t word_index = 0;
  std::size_t axis_index = 0;
  AxisEnd end = AxisEnd::kMin;
  double score = 0.0;
};

/// Orders candidates by (axis_index, end) with min before max; word_index
/// breaks any remaining tie.
bool candidate_precedes(const VertexCandidate& a, const VertexCandidate& b) noexcept;

struct ExtractionParams {
  std::size_t num_axes = 50;
  std::size_t k = 100;             // neighbour-list size used for gluing
  double glue_threshold = 0.3;     // Jaccard index linking two candidates
  std::size_t trials = 20;         // random partner pairs per vertex
  double tau = 0.1;                // survivors have mean outside fraction <= tau
  double pool_tau = 0.1;           // admission threshold for the reference pool
  std::uint64_t seed = 0;

  /// Throws Error(kInvalidArgument) on out-of-range values.
  void validate() const;
};

struct Neighbor {
  std::size_t word_index = 0;
  double similarity = 0.0;
};

struct Vertex {
  std::size_t representative = 0;
  std::vector<VertexCandidate> members;  // sorted by candidate_precedes
  std::vector<std::size_t> neighbor_set; // top-K by cosine, representative first
  double outside_fraction = std::numeric_limits<double>::quiet_NaN();

  const VertexCandidate& lead() const { return members.front(); }
};

/// Argmin and argmax of every axis i < num_axes, in the order
/// (axis0-min, axis0-max, axis1-min, ...). Ties go to the lowest word index.
std::vector<VertexCandidate> find_candidates(const EmbeddingSpace& space, const PcaModel& pca,
                                             std::size_t num_axes);

/// Brute-force cosine ranking over a fixed space. Row norms are computed
/// once; queries are read-only and may run concurrently.
class CosineRanker {
 public:
  explicit CosineRanker(const EmbeddingSpace& space);

  std::vector<Neighbor> topk(const Vector& query, std::size_t k) const;
  /// Ranking of a vocabulary word's own vector with that word placed first.
  std::vector<Neighbor> topk_of_word(std::size_t word_index, std::size_t k) const;
  double cosine(std::size_t i, std::size_t j) const;

 private:
  std::vector<Neighbor> rank(const Vector& query, std::size_t k, std::size_t exclude) const;

  const EmbeddingSpace* space_;
  Vector norms_;
};

/// Exact top-K by cosine similarity, descending, ties to the lower word
/// index. Zero-norm rows get similarity 0 and rank after every nonzero row.
std::vector<Neighbor> topk_neighbors(const EmbeddingSpace& space, const Vector& query, std::size_t k);

/// Top-K neighbour indices of a vocabulary word with the word itself forced
/// into first place (matters only when other rows share its direction).
std::vector<std::size_t> neighbor_set_of(const EmbeddingSpace& space, std::size_t word_index,
                                         std::size_t k);

double jaccard_index(std::span<const std::size_t> a, std::span<const std::size_t> b);

/// Connected components of the graph linking candidates whose neighbour sets
/// have Jaccard index >= threshold. Returns component member lists as indices
/// into `candidates`, each sorted by candidate_precedes, components ordered by
/// their leading member. Independent of input order.
std::vector<std::vector<std::size_t>> glue_components(
    std::span<const VertexCandidate> candidates,
    std::span<const std::vector<std::size_t>> neighbor_sets, double threshold);

std::vector<Vertex> glue_candidates(const EmbeddingSpace& space,
                                    std::span<const VertexCandidate> candidates,
                                    const ExtractionParams& params, unsigned threads = 1);

struct FilterOutcome {
  std::vector<Vertex> survivors;
  std::vector<Vertex> rejected;
  std::vector<std::size_t> reference_pool;  // ranks (input positions) admitted to the pool
  std::vector<std::string> warnings;
};

/// Triangle-projection convexity filter.
///
/// Vertices are walked in input order. The first two seed a reference pool;
/// each later vertex joins the pool when its mean outside-triangle fraction
/// over `trials` pool pairs is <= pool_tau. Every vertex is then scored once
/// against `trials` pairs drawn from the pool (itself excluded; all other
/// vertices if the pool has fewer than three members) and survives iff the
/// mean is <= tau.
///
/// Pairs follow a balanced random schedule: partners are shuffled and paired
/// consecutively, round after round, with no unordered pair repeated.
/// Degenerate triples are skipped, up to 10 * trials scheduled pairs (or all
/// pairs, if fewer). A vertex left
/// with no usable triple raises Error(kNumericDegeneracy). Random pairs come
/// from a stream keyed by (seed, phase, rank), so results do not depend on
/// `threads`. With fewer than three vertices all pass through unscored.
FilterOutcome filter_false_vertices(const EmbeddingSpace& space, std::span<const Vertex> vertices,
                                    const ExtractionParams& params, unsigned threads = 1);

/// Top-K words of the representative, itself first.
std::vector<Neighbor> describe_vertex(const EmbeddingSpace& space, const Vertex& vertex,
                                      std::size_t k_desc = 5);

/// 1 - cos(word, representative) for each vertex, in vertex order.
std::vector<double> vertex_profile(const EmbeddingSpace& space, std::size_t word_index,
                                   std::span<const Vertex> vertices);

}  // namespace wordsimplex

#include "wordsimplex/simplex_extractor.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <tuple>

#include "wordsimplex/errors.hpp"
#include "wordsimplex/parallel.hpp"
#include "wordsimplex/plane_geometry.hpp"
#include "wordsimplex/rng.hpp"
#include "wordsimplex/union_find.hpp"

namespace wordsimplex {
namespace {

constexpr const char* kModule = "simplex_extractor";
constexpr std::uint64_t kPoolPhase = 0;
constexpr std::uint64_t kScorePhase = 1;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, kModule, what);
}

struct TrialPair {
  std::size_t a;
  std::size_t b;
};

// Balanced pair schedule over `others`: each round shuffles the partners and
// pairs them consecutively, so every partner appears about equally often and
// no unordered pair repeats. Stops at `limit` pairs or when all are used.
std::vector<TrialPair> balanced_pairs(std::span<const std::size_t> others, std::size_t limit,
                                      Rng& rng) {
  const std::size_t n = others.size();
  limit = std::min(limit, n * (n - 1) / 2);
  std::vector<TrialPair> pairs;
  pairs.reserve(limit);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::size_t> perm(others.begin(), others.end());
  while (pairs.size() < limit) {
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
    for (std::size_t k = 0; k + 1 < n && pairs.size() < limit; k += 2) {
      const auto key = std::minmax(perm[k], perm[k + 1]);
      if (seen.insert(key).second) pairs.push_back({perm[k], perm[k + 1]});
    }
  }
  return pairs;
}

// Mean outside-triangle fraction of `rank` against pairs of `partners` (rank
// itself excluded). Pairs come from a balanced schedule on the
// (seed, phase, rank) stream; the first `trials` non-degenerate ones are used.
// Returns nullopt when fewer than two partners exist or every scheduled
// triple is degenerate.
std::optional<double> mean_outside_fraction(const EmbeddingSpace& space,
                                            std::span<const Vertex> vertices, std::size_t rank,
                                            std::span<const std::size_t> partners,
                                            const ExtractionParams& params, std::uint64_t phase,
                                            unsigned threads) {
  std::vector<std::size_t> others;
  others.reserve(partners.size());
  for (auto p : partners) {
    if (p != rank) others.push_back(p);
  }
  if (others.size() < 2) return std::nullopt;

  Rng rng(params.seed, {phase, static_cast<std::uint64_t>(rank)});
  const std::vector<TrialPair> pairs = balanced_pairs(others, 10 * params.trials, rng);
  const std::size_t max_attempts = pairs.size();

  const std::size_t v = vertices[rank].representative;
  double sum = 0.0;
  std::size_t used = 0;
  std::vector<std::optional<double>> batch;
  for (std::size_t start = 0; start < max_attempts && used < params.trials;) {
    const std::size_t count = std::min(params.trials - used, max_attempts - start);
    batch.assign(count, std::nullopt);
    parallel_for(count, threads, [&](std::size_t t) {
      const TrialPair& pair = pairs[start + t];
      try {
        const TripleStats stats = triangle_stats(space, v, vertices[pair.a].representative,
                                                 vertices[pair.b].representative);
        batch[t] = 1.0 - stats.inside_triangle_fraction;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerateTriangle) throw;
      }
    });
    for (const auto& value : batch) {
      if (value) {
        sum += *value;
        ++used;
      }
    }
    start += count;
  }
  if (used == 0) return std::nullopt;
  return sum / static_cast<double>(used);
}

}  // namespace

std::string_view axis_end_name(AxisEnd end) noexcept { return end == AxisEnd::kMin ? "min" : "max"; }

bool candidate_precedes(const VertexCandidate& a, const VertexCandidate& b) noexcept {
  return std::tuple(a.axis_index, a.end == AxisEnd::kMax, a.word_index) <
         std::tuple(b.axis_index, b.end == AxisEnd::kMax, b.word_index);
}

void ExtractionParams::validate() const {
  if (num_axes < 1) invalid("num_axes must be >= 1");
  if (k < 1) invalid("k must be >= 1");
  if (!(glue_threshold >= 0.0 && glue_threshold <= 1.0)) invalid("glue_threshold must be in [0, 1]");
  if (trials < 1) invalid("trials must be >= 1");
  if (!(tau >= 0.0 && tau <= 1.0)) invalid("tau must be in [0, 1]");
  if (!(pool_tau >= 0.0 && pool_tau <= 1.0)) invalid("pool_tau must be in [0, 1]");
}

std::vector<VertexCandidate> find_candidates(const EmbeddingSpace& space, const PcaModel& pca,
                                             std::size_t num_axes) {
  if (num_axes > pca.num_axes()) {
    invalid("requested " + std::to_string(num_axes) + " axes but the model has " +
            std::to_string(pca.num_axes()));
  }
  std::vector<VertexCandidate> out;
  out.reserve(2 * num_axes);
  for (std::size_t axis = 0; axis < num_axes; ++axis) {
    const std::vector<double> scores = project_onto_axis(space, pca, axis);
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t j = 1; j < scores.size(); ++j) {
      if (scores[j] < scores[lo]) lo = j;
      if (scores[j] > scores[hi]) hi = j;
    }
    out.push_back({lo, axis, AxisEnd::kMin, scores[lo]});
    out.push_back({hi, axis, AxisEnd::kMax, scores[hi]});
  }
  return out;
}

std::vector<std::vector<std::size_t>> glue_components(
    std::span<const VertexCandidate> candidates,
    std::span<const std::vector<std::size_t>> neighbor_sets, double threshold) {
  const std::size_t n = candidates.size();
  if (neighbor_sets.size() != n) invalid("one neighbour set per candidate is required");

  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (jaccard_index(neighbor_sets[i], neighbor_sets[j]) >= threshold) uf.unite(i, j);
    }
  }

  std::vector<std::vector<std::size_t>> by_root(n);
  for (std::size_t i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);

  std::vector<std::vector<std::size_t>> components;
  auto precedes = [&](std::size_t a, std::size_t b) {
    return candidate_precedes(candidates[a], candidates[b]);
  };
  for (auto& members : by_root) {
    if (members.empty()) continue;
    std::sort(members.begin(), members.end(), precedes);
    components.push_back(std::move(members));
  }
  std::sort(components.begin(), components.end(),
            [&](const auto& a, const auto& b) { return precedes(a.front(), b.front()); });
  return components;
}

std::vector<Vertex> glue_candidates(const EmbeddingSpace& space,
                                    std::span<const VertexCandidate> candidates,
                                    const ExtractionParams& params, unsigned threads) {
  params.validate();
  if (candidates.empty()) invalid("no candidates to glue");
  const std::size_t k = std::min(params.k, space.size());

  const CosineRanker ranker(space);
  std::vector<std::vector<std::size_t>> sets(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    for (const auto& nb : ranker.topk_of_word(candidates[i].word_index, k)) sets[i].push_back(nb.word_index);
  });

  std::vector<Vertex> vertices;
  for (const auto& component : glue_components(candidates, sets, params.glue_threshold)) {
    Vertex v;
    v.representative = candidates[component.front()].word_index;
    v.neighbor_set = sets[component.front()];
    for (auto idx : component) v.members.push_back(candidates[idx]);
    vertices.push_back(std::move(v));
  }
  return vertices;
}

FilterOutcome filter_false_vertices(const EmbeddingSpace& space, std::span<const Vertex> vertices,
                                    const ExtractionParams& params, unsigned threads) {
  params.validate();
  FilterOutcome out;
  const std::size_t n = vertices.size();
  if (n < 3) {
    out.warnings.push_back("triangle filter needs at least 3 vertices; " + std::to_string(n) +
                           " passed through unfiltered");
    out.survivors.assign(vertices.begin(), vertices.end());
    for (std::size_t r = 0; r < n; ++r) out.reference_pool.push_back(r);
    return out;
  }

  std::vector<std::size_t> pool = {0, 1};
  for (std::size_t r = 2; r < n; ++r) {
    const auto score = mean_outside_fraction(space, vertices, r, pool, params, kPoolPhase, threads);
    if (score && *score <= params.pool_tau) pool.push_back(r);
  }

  std::vector<std::size_t> partners = pool;
  if (pool.size() < 3) {
    out.warnings.push_back("reference pool has fewer than 3 vertices; scoring against all vertices");
    partners.resize(n);
    for (std::size_t r = 0; r < n; ++r) partners[r] = r;
  }

  std::vector<double> scores(n);
  parallel_for(n, threads, [&](std::size_t r) {
    const auto score = mean_outside_fraction(space, vertices, r, partners, params, kScorePhase, 1);
    if (!score) {
      throw Error(ErrorCode::kNumericDegeneracy, kModule,
                  "every sampled triangle is degenerate for vertex '" +
                      space.word(vertices[r].representative) + "'");
    }
    scores[r] = *score;
  });

  for (std::size_t r = 0; r < n; ++r) {
    Vertex v = vertices[r];
    v.outside_fraction = scores[r];
    (scores[r] <= params.tau ? out.survivors : out.rejected).push_back(std::move(v));
  }
  out.reference_pool = std::move(pool);
  return out;
}

std::vector<Neighbor> describe_vertex(const EmbeddingSpace& space, const Vertex& vertex,
                                      std::size_t k_desc) {
  if (k_desc < 1) invalid("k_desc must be >= 1");
  return CosineRanker(space).topk_of_word(vertex.representative, std::min(k_desc, space.size()));
}

std::vector<double> vertex_profile(const EmbeddingSpace& space, std::size_t word_index,
                                   std::span<const Vertex> vertices) {
  if (word_index >= space.size()) invalid("word index out of range");
  if (space.row(word_index).norm() == 0.0) {
    invalid("word '" + space.word(word_index) + "' has a zero vector");
  }
  const CosineRanker ranker(space);
  std::vector<double> out;
  out.reserve(vertices.size());
  for (const auto& v : vertices) out.push_back(1.0 - ranker.cosine(word_index, v.representative));
  return out;
}

}  // namespace wordsimplex

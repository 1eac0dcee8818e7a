#include <algorithm>
#include <numeric>

#include "wordsimplex/errors.hpp"
#include "wordsimplex/simplex_extractor.hpp"

namespace wordsimplex {
namespace {

constexpr const char* kModule = "simplex_extractor";
constexpr std::size_t kNoExclusion = static_cast<std::size_t>(-1);

}  // namespace

CosineRanker::CosineRanker(const EmbeddingSpace& space)
    : space_(&space), norms_(space.vectors().rowwise().norm()) {}

double CosineRanker::cosine(std::size_t i, std::size_t j) const {
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  if (norms_(ii) == 0.0 || norms_(jj) == 0.0) return 0.0;
  if (i == j) return 1.0;
  const double c = space_->row(i).dot(space_->row(j)) / (norms_(ii) * norms_(jj));
  return std::clamp(c, -1.0, 1.0);
}

std::vector<Neighbor> CosineRanker::rank(const Vector& query, std::size_t k,
                                         std::size_t exclude) const {
  const std::size_t n = space_->size();
  if (static_cast<std::size_t>(query.size()) != space_->dim()) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "query dimension does not match the space");
  }
  const double qnorm = query.norm();
  if (qnorm == 0.0) throw Error(ErrorCode::kInvalidArgument, kModule, "zero query vector");

  const Vector dots = space_->vectors() * query;
  std::vector<double> sim(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rn = norms_(static_cast<Eigen::Index>(i));
    sim[i] = rn == 0.0 ? 0.0 : std::clamp(dots(static_cast<Eigen::Index>(i)) / (rn * qnorm), -1.0, 1.0);
  }

  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != exclude) order.push_back(i);
  }
  const std::size_t take = std::min(k, order.size());
  // Zero rows last, then similarity descending, then index ascending.
  auto better = [&](std::size_t a, std::size_t b) {
    const bool za = norms_(static_cast<Eigen::Index>(a)) == 0.0;
    const bool zb = norms_(static_cast<Eigen::Index>(b)) == 0.0;
    if (za != zb) return zb;
    if (sim[a] != sim[b]) return sim[a] > sim[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);

  std::vector<Neighbor> out(take);
  for (std::size_t r = 0; r < take; ++r) out[r] = {order[r], sim[order[r]]};
  return out;
}

std::vector<Neighbor> CosineRanker::topk(const Vector& query, std::size_t k) const {
  if (k > space_->size()) {
    throw Error(ErrorCode::kInvalidArgument, kModule,
                "k = " + std::to_string(k) + " exceeds vocabulary size " + std::to_string(space_->size()));
  }
  return rank(query, k, kNoExclusion);
}

std::vector<Neighbor> CosineRanker::topk_of_word(std::size_t word_index, std::size_t k) const {
  if (word_index >= space_->size()) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "word index out of range");
  }
  if (k == 0 || k > space_->size()) {
    throw Error(ErrorCode::kInvalidArgument, kModule,
                "k = " + std::to_string(k) + " must be in [1, " + std::to_string(space_->size()) + "]");
  }
  const Vector query = space_->row(word_index).transpose();
  std::vector<Neighbor> rest = rank(query, k - 1, word_index);
  std::vector<Neighbor> out;
  out.reserve(k);
  out.push_back({word_index, cosine(word_index, word_index)});
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<Neighbor> topk_neighbors(const EmbeddingSpace& space, const Vector& query, std::size_t k) {
  return CosineRanker(space).topk(query, k);
}

std::vector<std::size_t> neighbor_set_of(const EmbeddingSpace& space, std::size_t word_index,
                                         std::size_t k) {
  std::vector<std::size_t> out;
  for (const auto& nb : CosineRanker(space).topk_of_word(word_index, k)) out.push_back(nb.word_index);
  return out;
}

double jaccard_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::vector<std::size_t> sa(a.begin(), a.end());
  std::vector<std::size_t> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  std::sort(sb.begin(), sb.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  std::size_t common = 0;
  for (std::size_t i = 0, j = 0; i < sa.size() && j < sb.size();) {
    if (sa[i] == sb[j]) {
      ++common;
      ++i;
      ++j;
    } else if (sa[i] < sb[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = sa.size() + sb.size() - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

}  // namespace wordsimplex

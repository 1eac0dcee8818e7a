#include "wordsimplex/pca.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <json.hpp>

#include "wordsimplex/errors.hpp"
#include "wordsimplex/parallel.hpp"

namespace wordsimplex {
namespace {

constexpr const char* kModule = "linalg_pca";
constexpr Eigen::Index kBlockRows = 2048;

struct BlockRange {
  Eigen::Index begin;
  Eigen::Index rows;
};

std::vector<BlockRange> row_blocks(Eigen::Index n) {
  std::vector<BlockRange> blocks;
  for (Eigen::Index b = 0; b < n; b += kBlockRows) blocks.push_back({b, std::min(kBlockRows, n - b)});
  return blocks;
}

}  // namespace

PcaModel fit_pca(const EmbeddingSpace& space, std::size_t num_axes, unsigned threads) {
  const std::size_t n = space.size();
  const std::size_t d = space.dim();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, kModule, "PCA needs at least 2 points");
  if (num_axes < 1 || num_axes > d) {
    throw Error(ErrorCode::kInvalidArgument, kModule,
                "num_axes must be in [1, " + std::to_string(d) + "], got " + std::to_string(num_axes));
  }

  const Matrix& x = space.vectors();
  const auto blocks = row_blocks(x.rows());
  const auto dd = static_cast<Eigen::Index>(d);

  std::vector<Vector> partial_sums(blocks.size());
  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    partial_sums[b] = x.middleRows(blocks[b].begin, blocks[b].rows).colwise().sum().transpose();
  });
  Vector mean = Vector::Zero(dd);
  for (const auto& s : partial_sums) mean += s;
  mean /= static_cast<double>(n);

  std::vector<Eigen::MatrixXd> partial_cov(blocks.size());
  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    Eigen::MatrixXd centered = x.middleRows(blocks[b].begin, blocks[b].rows);
    centered.rowwise() -= mean.transpose();
    partial_cov[b].noalias() = centered.transpose() * centered;
  });
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dd, dd);
  for (const auto& c : partial_cov) cov += c;
  cov /= static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumeric, kModule, "symmetric eigensolver did not converge");
  }

  PcaModel model;
  model.mean = std::move(mean);
  model.total_variance = cov.trace();
  const auto m = static_cast<Eigen::Index>(num_axes);
  model.axes.resize(m, dd);
  model.eigenvalues.resize(m);
  // Eigen returns ascending eigenvalues.
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index src = dd - 1 - k;
    model.eigenvalues(k) = std::max(0.0, solver.eigenvalues()(src));
    Vector axis = solver.eigenvectors().col(src);
    Eigen::Index pivot = 0;
    for (Eigen::Index j = 1; j < dd; ++j) {
      if (std::abs(axis(j)) > std::abs(axis(pivot))) pivot = j;
    }
    if (axis(pivot) < 0.0) axis = -axis;
    model.axes.row(k) = axis.transpose();
  }
  return model;
}

std::vector<double> project_onto_axis(const EmbeddingSpace& space, const PcaModel& pca,
                                      std::size_t axis_index) {
  if (axis_index >= pca.num_axes()) {
    throw Error(ErrorCode::kInvalidArgument, kModule,
                "axis index " + std::to_string(axis_index) + " out of range (model has " +
                    std::to_string(pca.num_axes()) + " axes)");
  }
  if (pca.dim() != space.dim()) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "PCA model dimension does not match the space");
  }
  const Vector axis = pca.axes.row(static_cast<Eigen::Index>(axis_index)).transpose();
  const double offset = pca.mean.dot(axis);
  Vector scores = space.vectors() * axis;
  scores.array() -= offset;
  return {scores.data(), scores.data() + scores.size()};
}

std::string pca_to_json(const PcaModel& pca) {
  nlohmann::ordered_json j;
  j["dim"] = pca.dim();
  j["num_axes"] = pca.num_axes();
  j["total_variance"] = pca.total_variance;
  j["mean"] = std::vector<double>(pca.mean.data(), pca.mean.data() + pca.mean.size());
  j["eigenvalues"] =
      std::vector<double>(pca.eigenvalues.data(), pca.eigenvalues.data() + pca.eigenvalues.size());
  auto axes = nlohmann::ordered_json::array();
  for (Eigen::Index k = 0; k < pca.axes.rows(); ++k) {
    Vector row = pca.axes.row(k).transpose();
    axes.push_back(std::vector<double>(row.data(), row.data() + row.size()));
  }
  j["axes"] = std::move(axes);
  return j.dump(2) + "\n";
}

}  // namespace wordsimplex

#include "wordsimplex/synthetic.hpp"

#include <Eigen/QR>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "wordsimplex/errors.hpp"
#include "wordsimplex/rng.hpp"

namespace wordsimplex {
namespace {

constexpr const char* kModule = "synthetic_bench";

// Stream keys; one per independent quantity.
constexpr std::uint64_t kRotationStream = 1;
constexpr std::uint64_t kTranslationStream = 2;
constexpr std::uint64_t kWeightStream = 3;
constexpr std::uint64_t kNoiseStream = 4;
constexpr std::uint64_t kIrregularStream = 5;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, kModule, what);
}

// Row i is standard basis vector e_i of R^V expressed in the Helmert basis of
// the hyperplane sum(x) = 0, i.e. the canonical simplex centred at the origin
// in V - 1 coordinates. Pairwise distances are sqrt(2).
Matrix helmert_simplex(std::size_t v) {
  const auto rows = static_cast<Eigen::Index>(v);
  Matrix c = Matrix::Zero(rows, rows - 1);
  for (Eigen::Index k = 0; k < rows - 1; ++k) {
    const double kk = static_cast<double>(k + 1);
    const double norm = std::sqrt(kk * (kk + 1.0));
    for (Eigen::Index i = 0; i <= k; ++i) c(i, k) = 1.0 / norm;
    c(k + 1, k) = -kk / norm;
  }
  return c;
}

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs
// of R's diagonal folded into Q.
Eigen::MatrixXd random_orthogonal(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

std::string token_name(std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "w%0*zu", width, i);
  return buf;
}

}  // namespace

void SyntheticParams::validate() const {
  if (dim < 2) invalid("dim must be >= 2");
  if (vertices < 3 || vertices > dim + 1) {
    invalid("vertex count must be in [3, dim + 1], got " + std::to_string(vertices));
  }
  if (points < vertices) invalid("points must be >= vertices");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) invalid("alpha must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) invalid("sigma must be >= 0");
}

double regular_simplex_circumradius(std::size_t vertices) {
  const double n = static_cast<double>(vertices) - 1.0;
  return std::sqrt(n / (2.0 * (n + 1.0)));
}

SyntheticCloud generate_simplex_cloud(const SyntheticParams& params) {
  params.validate();
  const auto d = static_cast<Eigen::Index>(params.dim);
  const auto v = static_cast<Eigen::Index>(params.vertices);
  const auto n = static_cast<Eigen::Index>(params.points);

  Matrix corners(v, d);
  if (!params.irregular) {
    Rng rot_rng(params.seed, {kRotationStream});
    const Eigen::MatrixXd q = random_orthogonal(params.dim, rot_rng);
    Matrix padded = Matrix::Zero(v, d);
    padded.leftCols(v - 1) = helmert_simplex(params.vertices) / std::sqrt(2.0);
    corners = padded * q.transpose();
  } else {
    Rng irr_rng(params.seed, {kIrregularStream});
    const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(params.dim));
    for (Eigen::Index i = 0; i < v; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) corners(i, j) = scale * irr_rng.normal();
    }
  }
  Rng shift_rng(params.seed, {kTranslationStream});
  Vector shift(d);
  const double shift_scale = 1.0 / std::sqrt(static_cast<double>(params.dim));
  for (Eigen::Index j = 0; j < d; ++j) shift(j) = shift_scale * shift_rng.normal();
  corners.rowwise() += shift.transpose();

  Matrix cloud(n, d);
  cloud.topRows(v) = corners;
  Rng weight_rng(params.seed, {kWeightStream});
  Rng noise_rng(params.seed, {kNoiseStream});
  Eigen::RowVectorXd w(v);
  for (Eigen::Index i = v; i < n; ++i) {
    double total = 0.0;
    for (Eigen::Index c = 0; c < v; ++c) {
      w(c) = weight_rng.gamma(params.alpha);
      total += w(c);
    }
    w /= total;
    cloud.row(i) = w * corners;
    if (params.sigma > 0.0) {
      for (Eigen::Index j = 0; j < d; ++j) cloud(i, j) += params.sigma * noise_rng.normal();
    }
  }

  const int width = std::max(6, static_cast<int>(std::to_string(params.points).size()));
  std::vector<std::string> words;
  words.reserve(params.points);
  for (std::size_t i = 1; i <= params.points; ++i) words.push_back(token_name(i, width));

  std::vector<std::size_t> truth(params.vertices);
  for (std::size_t i = 0; i < params.vertices; ++i) truth[i] = i;
  return SyntheticCloud{EmbeddingSpace(std::move(words), std::move(cloud)), std::move(truth),
                        std::move(corners), params};
}

std::string ground_truth_json(const SyntheticCloud& cloud) {
  nlohmann::ordered_json j;
  auto tokens = nlohmann::ordered_json::array();
  for (auto idx : cloud.true_vertices) tokens.push_back(cloud.space.word(idx));
  j["vertex_tokens"] = std::move(tokens);
  j["vertex_indices"] = cloud.true_vertices;
  const SyntheticParams& p = cloud.params;
  j["gen_params"] = {{"dim", p.dim},     {"vertices", p.vertices}, {"points", p.points},
                     {"alpha", p.alpha}, {"sigma", p.sigma},       {"seed", p.seed},
                     {"irregular", p.irregular}};
  return j.dump(2) + "\n";
}

GroundTruth parse_ground_truth_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    GroundTruth out;
    out.vertex_tokens = j.at("vertex_tokens").get<std::vector<std::string>>();
    const auto& g = j.at("gen_params");
    out.params.dim = g.at("dim").get<std::size_t>();
    out.params.vertices = g.at("vertices").get<std::size_t>();
    out.params.points = g.at("points").get<std::size_t>();
    out.params.alpha = g.at("alpha").get<double>();
    out.params.sigma = g.at("sigma").get<double>();
    out.params.seed = g.at("seed").get<std::uint64_t>();
    out.params.irregular = g.at("irregular").get<bool>();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, kModule, std::string("ground-truth sidecar: ") + e.what());
  }
}

}  // namespace wordsimplex

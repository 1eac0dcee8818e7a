#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "wordsimplex/errors.hpp"
#include "wordsimplex/pca.hpp"
#include "wordsimplex/plane_geometry.hpp"
#include "wordsimplex/simplex_extractor.hpp"
#include "wordsimplex/synthetic.hpp"

namespace ws = wordsimplex;

namespace {

const ws::SyntheticCloud& small_cloud() {
  static const ws::SyntheticCloud cloud = [] {
    ws::SyntheticParams p;
    p.dim = 20;
    p.vertices = 8;
    p.points = 3000;
    p.seed = 4;
    return ws::generate_simplex_cloud(p);
  }();
  return cloud;
}

ws::Vertex vertex_at(std::size_t word, std::size_t axis = 0) {
  ws::Vertex v;
  v.representative = word;
  v.members.push_back({word, axis, ws::AxisEnd::kMin, 0.0});
  return v;
}

std::size_t centroid_nearest(const ws::SyntheticCloud& cloud) {
  const Eigen::VectorXd centroid = cloud.corners.colwise().mean().transpose();
  std::size_t best = 0;
  double best_d = INFINITY;
  for (std::size_t i = 0; i < cloud.space.size(); ++i) {
    const double d = (cloud.space.row(i).transpose() - centroid).norm();
    if (d < best_d) best_d = d, best = i;
  }
  return best;
}

// Direct inside-triangle count using orientation signs in the plane frame.
double oracle_outside_fraction(const ws::EmbeddingSpace& space, std::size_t a, std::size_t b,
                               std::size_t c) {
  const Eigen::VectorXd o = space.row(a).transpose();
  Eigen::VectorXd e1 = space.row(b).transpose() - o;
  e1.normalize();
  Eigen::VectorXd e2 = space.row(c).transpose() - o;
  e2 -= e2.dot(e1) * e1;
  e2.normalize();
  auto proj = [&](std::size_t i) {
    const Eigen::VectorXd d = space.row(i).transpose() - o;
    return Eigen::Vector2d(d.dot(e1), d.dot(e2));
  };
  const Eigen::Vector2d A = proj(a), B = proj(b), C = proj(c);
  auto cross = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& r) {
    return (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
  };
  const double area = cross(A, B, C);
  std::size_t outside = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Eigen::Vector2d p = proj(i);
    const double s1 = cross(A, B, p) / area, s2 = cross(B, C, p) / area, s3 = cross(C, A, p) / area;
    if (std::min({s1, s2, s3}) < -1e-9) ++outside;
  }
  return static_cast<double>(outside) / static_cast<double>(space.size());
}

// Connected components by breadth-first search over an explicit adjacency matrix.
std::vector<std::vector<std::size_t>> bfs_components(const std::vector<std::vector<bool>>& adj) {
  const std::size_t n = adj.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::deque<std::size_t> q{s};
    comp[s] = static_cast<int>(out.size() - 1);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      out.back().push_back(u);
      for (std::size_t v = 0; v < n; ++v) {
        if (adj[u][v] && comp[v] < 0) {
          comp[v] = comp[s];
          q.push_back(v);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

}  // namespace

TEST(ExtractionParams, Validation) {
  ws::ExtractionParams p;
  EXPECT_NO_THROW(p.validate());
  auto bad = [](auto mutate) {
    ws::ExtractionParams q;
    mutate(q);
    EXPECT_THROW(q.validate(), ws::Error);
  };
  bad([](auto& q) { q.k = 0; });
  bad([](auto& q) { q.trials = 0; });
  bad([](auto& q) { q.tau = 1.5; });
  bad([](auto& q) { q.tau = -0.1; });
  bad([](auto& q) { q.glue_threshold = 1.01; });
  bad([](auto& q) { q.pool_tau = -1; });
  bad([](auto& q) { q.num_axes = 0; });
}

TEST(FindCandidates, RhombusLongDiagonal) {
  // Rhombus with diagonals 4 and 2 along the 45 degree lines.
  const double r = 1.0 / std::sqrt(2.0);
  const auto space = ws::testing::space_from_rows(
      {{2 * r, 2 * r}, {-r, r}, {-2 * r, -2 * r}, {r, -r}});
  const auto pca = ws::fit_pca(space, 2);
  const auto cands = ws::find_candidates(space, pca, 1);
  ASSERT_EQ(cands.size(), 2u);
  std::vector<std::size_t> words{cands[0].word_index, cands[1].word_index};
  std::sort(words.begin(), words.end());
  EXPECT_EQ(words, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(cands[0].end, ws::AxisEnd::kMin);
  EXPECT_EQ(cands[1].end, ws::AxisEnd::kMax);
  EXPECT_LT(cands[0].score, cands[1].score);
}

TEST(FindCandidates, TwoPerAxisInAxisOrder) {
  const auto space = ws::testing::gaussian_space(2000, 30, 12);
  const auto pca = ws::fit_pca(space, 25);
  const auto cands = ws::find_candidates(space, pca, 25);
  ASSERT_EQ(cands.size(), 50u);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    EXPECT_EQ(cands[i].axis_index, i / 2);
    EXPECT_EQ(cands[i].end, i % 2 == 0 ? ws::AxisEnd::kMin : ws::AxisEnd::kMax);
  }
  EXPECT_THROW(ws::find_candidates(space, pca, 26), ws::Error);
}

TEST(FindCandidates, MatchesBruteForceExtremes) {
  for (std::size_t n : {500u, 10000u}) {
    const ws::Matrix x = ws::testing::gaussian_matrix(n, 12, n);
    const ws::EmbeddingSpace space(ws::testing::numbered_words(n), x);
    const auto pca = ws::fit_pca(space, 12);
    const auto cands = ws::find_candidates(space, pca, 12);
    for (std::size_t a = 0; a < 12; ++a) {
      const Eigen::VectorXd axis = pca.axes.row(static_cast<Eigen::Index>(a)).transpose();
      std::size_t lo = 0, hi = 0;
      double lo_v = INFINITY, hi_v = -INFINITY;
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (Eigen::Index k = 0; k < x.cols(); ++k) s += (x(j, k) - pca.mean(k)) * axis(k);
        if (s < lo_v) lo_v = s, lo = j;
        if (s > hi_v) hi_v = s, hi = j;
      }
      EXPECT_EQ(cands[2 * a].word_index, lo);
      EXPECT_EQ(cands[2 * a + 1].word_index, hi);
      EXPECT_NEAR(cands[2 * a].score, lo_v, 1e-9);
      EXPECT_NEAR(cands[2 * a + 1].score, hi_v, 1e-9);
    }
  }
}

TEST(FindCandidates, TiesGoToLowestWordIndex) {
  const auto space = ws::testing::space_from_rows({{0, 0}, {5, 0}, {5, 0.0}, {-5, 0}, {-5, 0}});
  ws::PcaModel pca;
  pca.mean = Eigen::Vector2d::Zero();
  pca.axes = ws::Matrix::Identity(2, 2);
  pca.eigenvalues = Eigen::Vector2d(1, 0);
  const auto cands = ws::find_candidates(space, pca, 1);
  EXPECT_EQ(cands[0].word_index, 3u);
  EXPECT_EQ(cands[1].word_index, 1u);
}

TEST(FindCandidates, LeadingAxesHitSimplexCorners) {
  const auto& cloud = small_cloud();
  const auto pca = ws::fit_pca(cloud.space, 4);
  const auto cands = ws::find_candidates(cloud.space, pca, 4);  // ceil(8 / 2)
  for (const auto& c : cands) {
    const Eigen::VectorXd p = cloud.space.row(c.word_index).transpose();
    double nearest = INFINITY;
    for (Eigen::Index v = 0; v < cloud.corners.rows(); ++v)
      nearest = std::min(nearest, (cloud.corners.row(v).transpose() - p).norm());
    EXPECT_LT(nearest, 1e-9) << "axis " << c.axis_index;
  }
}

TEST(GlueComponents, ChainAgainstBfsOracle) {
  // K = 33 for all three: |A&B| = |B&C| = 22 gives Jaccard 0.5; |A&C| = 11 gives 0.2.
  std::vector<std::size_t> a, b(33), c;
  std::iota(b.begin(), b.end(), 0);
  for (std::size_t i = 0; i < 22; ++i) a.push_back(i);
  for (std::size_t i = 100; i < 111; ++i) a.push_back(i);
  for (std::size_t i = 11; i < 33; ++i) c.push_back(i);
  for (std::size_t i = 200; i < 211; ++i) c.push_back(i);
  const std::vector<std::vector<std::size_t>> sets{a, b, c, {500, 501, 502}};
  ASSERT_EQ(a.size(), 33u);
  ASSERT_EQ(c.size(), 33u);

  std::vector<std::vector<bool>> adj(4, std::vector<bool>(4, false));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      std::vector<std::size_t> si = sets[i], sj = sets[j], inter, uni;
      std::sort(si.begin(), si.end());
      std::sort(sj.begin(), sj.end());
      std::set_intersection(si.begin(), si.end(), sj.begin(), sj.end(), std::back_inserter(inter));
      std::set_union(si.begin(), si.end(), sj.begin(), sj.end(), std::back_inserter(uni));
      const double jac = static_cast<double>(inter.size()) / static_cast<double>(uni.size());
      if (i == 0 && j == 1) EXPECT_DOUBLE_EQ(jac, 0.5);
      if (i == 1 && j == 2) EXPECT_DOUBLE_EQ(jac, 0.5);
      if (i == 0 && j == 2) EXPECT_DOUBLE_EQ(jac, 0.2);
      adj[i][j] = jac >= 0.3;
    }

  std::vector<ws::VertexCandidate> cands;
  for (std::size_t i = 0; i < 4; ++i) cands.push_back({1000 + i, i, ws::AxisEnd::kMin, 0.0});
  const auto got = ws::glue_components(cands, sets, 0.3);
  EXPECT_EQ(got, bfs_components(adj));
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(GlueComponents, RandomGraphsMatchOracleAndIgnoreInputOrder) {
  std::mt19937_64 gen(99);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 12;
    std::vector<std::vector<std::size_t>> sets(n);
    std::uniform_int_distribution<std::size_t> pick(0, 40);
    for (auto& s : sets) {
      while (s.size() < 10) {
        const std::size_t w = pick(gen);
        if (std::find(s.begin(), s.end(), w) == s.end()) s.push_back(w);
      }
    }
    std::vector<ws::VertexCandidate> cands;
    for (std::size_t i = 0; i < n; ++i)
      cands.push_back({i, i / 2, i % 2 ? ws::AxisEnd::kMax : ws::AxisEnd::kMin, 0.0});
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) adj[i][j] = ws::jaccard_index(sets[i], sets[j]) >= 0.25;
    const auto got = ws::glue_components(cands, sets, 0.25);
    EXPECT_EQ(got, bfs_components(adj));

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<ws::VertexCandidate> pc;
    std::vector<std::vector<std::size_t>> ps;
    for (auto p : perm) pc.push_back(cands[p]), ps.push_back(sets[p]);
    auto shuffled = ws::glue_components(pc, ps, 0.25);
    for (auto& comp : shuffled)
      for (auto& i : comp) i = perm[i];
    for (auto& comp : shuffled) std::sort(comp.begin(), comp.end());
    EXPECT_EQ(shuffled, got);
  }
}

TEST(GlueCandidates, SameWordMergesIntoOneVertex) {
  const auto space = ws::testing::gaussian_space(200, 6, 5);
  std::vector<ws::VertexCandidate> cands{{17, 0, ws::AxisEnd::kMax, 2.0},
                                         {17, 3, ws::AxisEnd::kMin, -1.0}};
  ws::ExtractionParams p;
  p.k = 20;
  const auto vertices = ws::glue_candidates(space, cands, p);
  ASSERT_EQ(vertices.size(), 1u);
  EXPECT_EQ(vertices[0].members.size(), 2u);
  EXPECT_EQ(vertices[0].representative, 17u);
  EXPECT_EQ(vertices[0].neighbor_set.size(), 20u);
  EXPECT_EQ(vertices[0].neighbor_set.front(), 17u);
}

TEST(GlueCandidates, DisjointNeighborhoodsStaySeparate) {
  // Two well separated directions, each with its own tight bundle.
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({1.0, 0.01 * i, 0.0});
  for (int i = 0; i < 10; ++i) rows.push_back({0.0, 0.01 * i, 1.0});
  const auto space = ws::testing::space_from_rows(rows);
  std::vector<ws::VertexCandidate> cands{{15, 1, ws::AxisEnd::kMin, 0.0},
                                         {2, 0, ws::AxisEnd::kMax, 0.0}};
  ws::ExtractionParams p;
  p.k = 5;
  const auto vertices = ws::glue_candidates(space, cands, p);
  ASSERT_EQ(vertices.size(), 2u);
  EXPECT_EQ(vertices[0].representative, 2u);  // ordered by representative's axis
  EXPECT_EQ(vertices[1].representative, 15u);
}

TEST(GlueCandidates, RepresentativeIsLowestAxisMinFirst) {
  const auto space = ws::testing::space_from_rows({{1, 0}, {1, 1e-6}, {1, 2e-6}, {0, 1}});
  std::vector<ws::VertexCandidate> cands{{2, 4, ws::AxisEnd::kMin, 0.0},
                                         {1, 1, ws::AxisEnd::kMax, 0.0},
                                         {0, 1, ws::AxisEnd::kMin, 0.0}};
  ws::ExtractionParams p;
  p.k = 3;
  const auto vertices = ws::glue_candidates(space, cands, p);
  ASSERT_EQ(vertices.size(), 1u);
  EXPECT_EQ(vertices[0].representative, 0u);
  EXPECT_EQ(vertices[0].lead().axis_index, 1u);
  EXPECT_EQ(vertices[0].lead().end, ws::AxisEnd::kMin);
  EXPECT_TRUE(std::is_sorted(vertices[0].members.begin(), vertices[0].members.end(),
                             ws::candidate_precedes));
}

TEST(GlueCandidates, ThreadCountDoesNotMatter) {
  const auto& cloud = small_cloud();
  const auto pca = ws::fit_pca(cloud.space, 10);
  const auto cands = ws::find_candidates(cloud.space, pca, 10);
  ws::ExtractionParams p;
  const auto a = ws::glue_candidates(cloud.space, cands, p, 1);
  const auto b = ws::glue_candidates(cloud.space, cands, p, 3);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_LE(a.size(), cands.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].representative, b[i].representative);
    EXPECT_EQ(a[i].neighbor_set, b[i].neighbor_set);
  }
}

TEST(FilterFalseVertices, TrueCornersScoreZero) {
  const auto& cloud = small_cloud();
  std::vector<ws::Vertex> vertices;
  for (auto w : cloud.true_vertices) vertices.push_back(vertex_at(w));
  const auto out = ws::filter_false_vertices(cloud.space, vertices, ws::ExtractionParams{});
  ASSERT_EQ(out.survivors.size(), vertices.size());
  EXPECT_TRUE(out.rejected.empty());
  for (const auto& v : out.survivors) EXPECT_NEAR(v.outside_fraction, 0.0, 1e-12);
}

TEST(FilterFalseVertices, CentroidWordIsRejected) {
  const auto& cloud = small_cloud();
  const std::size_t fake = centroid_nearest(cloud);
  std::vector<ws::Vertex> vertices;
  for (auto w : cloud.true_vertices) vertices.push_back(vertex_at(w));
  vertices.push_back(vertex_at(fake, 99));
  ws::ExtractionParams p;
  const auto out = ws::filter_false_vertices(cloud.space, vertices, p);
  ASSERT_EQ(out.rejected.size(), 1u);
  EXPECT_EQ(out.rejected[0].representative, fake);
  // Every possible partner pair leaves more than tau outside, so any sample mean does too.
  double lowest = INFINITY;
  for (std::size_t i = 0; i < cloud.true_vertices.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.true_vertices.size(); ++j)
      lowest = std::min(lowest, oracle_outside_fraction(cloud.space, fake, cloud.true_vertices[i],
                                                        cloud.true_vertices[j]));
  EXPECT_GT(lowest, p.tau);
  EXPECT_GE(out.rejected[0].outside_fraction, lowest - 1e-12);
}

TEST(FilterFalseVertices, FewerThanThreePassThrough) {
  const auto& cloud = small_cloud();
  std::vector<ws::Vertex> vertices{vertex_at(cloud.true_vertices[0]), vertex_at(100)};
  const auto out = ws::filter_false_vertices(cloud.space, vertices, ws::ExtractionParams{});
  ASSERT_EQ(out.survivors.size(), 2u);
  EXPECT_TRUE(out.rejected.empty());
  EXPECT_FALSE(out.warnings.empty());
  EXPECT_TRUE(std::isnan(out.survivors[0].outside_fraction));
}

TEST(FilterFalseVertices, AllDegenerateRaises) {
  const auto space = ws::testing::space_from_rows({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}});
  std::vector<ws::Vertex> vertices{vertex_at(0), vertex_at(1), vertex_at(2)};
  try {
    ws::filter_false_vertices(space, vertices, ws::ExtractionParams{});
    FAIL();
  } catch (const ws::Error& e) {
    EXPECT_EQ(e.code(), ws::ErrorCode::kNumericDegeneracy);
  }
}

TEST(FilterFalseVertices, DeterministicAndMonotoneInTau) {
  const auto& cloud = small_cloud();
  const auto pca = ws::fit_pca(cloud.space, 19);
  const auto cands = ws::find_candidates(cloud.space, pca, 19);
  ws::ExtractionParams p;
  p.seed = 5;
  const auto vertices = ws::glue_candidates(cloud.space, cands, p);
  const auto a = ws::filter_false_vertices(cloud.space, vertices, p, 1);
  const auto b = ws::filter_false_vertices(cloud.space, vertices, p, 4);
  ASSERT_EQ(a.survivors.size(), b.survivors.size());
  for (std::size_t i = 0; i < a.survivors.size(); ++i)
    EXPECT_EQ(a.survivors[i].outside_fraction, b.survivors[i].outside_fraction);

  std::vector<std::size_t> previous;
  for (double tau : {0.0, 0.05, 0.1, 0.2, 0.4, 0.7, 1.0}) {
    p.tau = tau;
    const auto out = ws::filter_false_vertices(cloud.space, vertices, p);
    std::vector<std::size_t> kept;
    for (const auto& v : out.survivors) kept.push_back(v.representative);
    for (auto w : previous) EXPECT_NE(std::find(kept.begin(), kept.end(), w), kept.end());
    previous = kept;
  }
  EXPECT_EQ(previous.size(), vertices.size());
}

TEST(DescribeVertex, MatchesRankingWithSelfFirst) {
  const auto space = ws::testing::gaussian_space(400, 10, 6);
  const auto v = vertex_at(33);
  const auto desc = ws::describe_vertex(space, v, 5);
  ASSERT_EQ(desc.size(), 5u);
  EXPECT_EQ(desc[0].word_index, 33u);
  EXPECT_DOUBLE_EQ(desc[0].similarity, 1.0);
  const auto ref = ws::topk_neighbors(space, space.row(33).transpose(), 5);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(desc[i].word_index, ref[i].word_index);
}

TEST(VertexProfile, DistancesToRepresentatives) {
  const auto space = ws::testing::gaussian_space(100, 5, 7);
  std::vector<ws::Vertex> vertices{vertex_at(3), vertex_at(8), vertex_at(50)};
  const auto prof = ws::vertex_profile(space, 8, vertices);
  ASSERT_EQ(prof.size(), 3u);
  EXPECT_EQ(prof[1], 0.0);
  for (double d : prof) {
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0);
  }
  const Eigen::VectorXd x = space.row(8).transpose(), y = space.row(50).transpose();
  EXPECT_NEAR(prof[2], 1.0 - x.dot(y) / (x.norm() * y.norm()), 1e-12);

  const auto with_zero = ws::testing::space_from_rows({{0, 0}, {1, 0}});
  EXPECT_THROW(ws::vertex_profile(with_zero, 0, std::vector<ws::Vertex>{vertex_at(1)}), ws::Error);
}

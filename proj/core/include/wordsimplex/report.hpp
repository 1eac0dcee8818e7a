#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordsimplex/embedding_io.hpp"
#include "wordsimplex/plane_geometry.hpp"
#include "wordsimplex/simplex_extractor.hpp"

namespace wordsimplex {

inline constexpr std::string_view kToolName = "wordsimplex";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct AnalysisConfig {
  std::string input_path;
  std::optional<EmbeddingFormat> format;
  std::size_t max_words = 50000;
  bool normalize = false;
  ExtractionParams extraction;
  std::size_t describe_k = 5;
  std::size_t triple_samples = 100;
  unsigned threads = 1;  // never recorded in the report
};

struct ReportWord {
  std::string token;
  double similarity = 0.0;
};

struct ReportMember {
  std::string token;
  std::size_t axis = 0;
  AxisEnd end = AxisEnd::kMin;
  double score = 0.0;
};

struct ReportVertex {
  std::string representative;
  std::size_t word_index = 0;
  std::vector<ReportMember> members;
  std::vector<ReportWord> description;
  double outside_fraction = std::numeric_limits<double>::quiet_NaN();
  bool in_reference_pool = false;
};

struct ReportTriple {
  std::array<std::string, 3> tokens;
  TripleStats stats;
};

struct ReportAggregates {
  std::size_t sample_size = 0;
  double mean_inside_triangle_fraction = std::numeric_limits<double>::quiet_NaN();
  double mean_outside_incircle_fraction = std::numeric_limits<double>::quiet_NaN();
};

struct ReportInput {
  std::string path;
  std::string format;
  std::size_t num_words = 0;
  std::size_t dim = 0;
  bool normalized = false;
};

struct AnalysisReport {
  std::string tool_version{kToolVersion};
  ReportInput input;
  ExtractionParams params;
  std::size_t max_words = 0;
  std::size_t describe_k = 5;
  std::size_t triple_samples = 0;
  std::size_t axes_examined = 0;
  std::size_t num_candidates = 0;
  std::vector<ReportVertex> vertices;
  std::vector<ReportVertex> rejected;
  std::vector<ReportTriple> triple_sample;
  ReportAggregates aggregates;
  std::vector<std::string> warnings;
  bool warning = false;
};

/// Triple containment statistics over a vertex list.
struct TripleSample {
  std::vector<ReportTriple> triples;
  ReportAggregates aggregates;
  std::vector<std::string> warnings;
};

/// Every triple when C(n, 3) <= samples, otherwise `samples` distinct random
/// triples drawn from a seeded stream. Degenerate triples are skipped.
/// Aggregate means are computed from the integer tallies, so they equal the
/// exact mean of the per-triple fractions.
TripleSample sample_triples(const EmbeddingSpace& space, std::span<const std::size_t> vertex_words,
                            std::size_t samples, std::uint64_t seed, unsigned threads = 1);

/// parse -> fit_pca -> find_candidates -> glue -> filter -> describe -> triples.
AnalysisReport run_analysis(const AnalysisConfig& config);
AnalysisReport run_analysis(const EmbeddingSpace& space, const AnalysisConfig& config,
                            ReportInput input = {});

enum class ReportFormat { kJson, kText };

/// JSON: fixed key order, 6 significant digits, LF newlines.
std::string emit_report(const AnalysisReport& report, ReportFormat format);
AnalysisReport parse_report_json(std::string_view json);

std::string emit_triple_sample_json(const TripleSample& sample);

enum class ProjectionFormat { kCsv, kSvg };

/// CSV: "token,x,y,inside_triangle,inside_incircle", one row per word in
/// vocabulary order, shortest round-trip coordinates. SVG: scatter plot with
/// the triangle, its incircle and the three vertex labels.
std::string emit_projection(const EmbeddingSpace& space, const std::array<std::size_t, 3>& triple,
                            ProjectionFormat format);

/// Rounds to 6 significant digits, the precision used by the JSON report.
double round_significant(double value);

}  // namespace wordsimplex

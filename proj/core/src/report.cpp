#include "wordsimplex/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <set>
#include <sstream>

#include "wordsimplex/errors.hpp"
#include "wordsimplex/parallel.hpp"
#include "wordsimplex/pca.hpp"
#include "wordsimplex/rng.hpp"

namespace wordsimplex {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kModule = "cli_report";
constexpr std::uint64_t kTripleStream = 7;

Json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return round_significant(value);
}

double number_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

ReportAggregates aggregate(const std::vector<ReportTriple>& triples) {
  ReportAggregates agg;
  agg.sample_size = triples.size();
  if (triples.empty()) return agg;
  std::size_t inside = 0;
  std::size_t outside = 0;
  std::size_t total = 0;
  for (const auto& t : triples) {
    inside += t.stats.inside_triangle_count;
    outside += t.stats.outside_incircle_count;
    total += t.stats.total;
  }
  agg.mean_inside_triangle_fraction = static_cast<double>(inside) / static_cast<double>(total);
  agg.mean_outside_incircle_fraction = static_cast<double>(outside) / static_cast<double>(total);
  return agg;
}

ReportVertex describe(const EmbeddingSpace& space, const Vertex& v, std::size_t describe_k,
                      bool in_pool) {
  ReportVertex out;
  out.representative = space.word(v.representative);
  out.word_index = v.representative;
  for (const auto& m : v.members) out.members.push_back({space.word(m.word_index), m.axis_index, m.end, m.score});
  for (const auto& nb : describe_vertex(space, v, describe_k)) {
    out.description.push_back({space.word(nb.word_index), nb.similarity});
  }
  out.outside_fraction = v.outside_fraction;
  out.in_reference_pool = in_pool;
  return out;
}

Json vertex_json(const ReportVertex& v) {
  Json j;
  j["representative"] = v.representative;
  j["word_index"] = v.word_index;
  j["outside_fraction"] = number(v.outside_fraction);
  j["in_reference_pool"] = v.in_reference_pool;
  auto members = Json::array();
  for (const auto& m : v.members) {
    members.push_back({{"token", m.token},
                       {"axis", m.axis},
                       {"end", std::string(axis_end_name(m.end))},
                       {"score", number(m.score)}});
  }
  j["members"] = std::move(members);
  auto desc = Json::array();
  for (const auto& w : v.description) desc.push_back({{"token", w.token}, {"similarity", number(w.similarity)}});
  j["description"] = std::move(desc);
  return j;
}

ReportVertex vertex_from(const Json& j) {
  ReportVertex v;
  v.representative = j.at("representative").get<std::string>();
  v.word_index = j.at("word_index").get<std::size_t>();
  v.outside_fraction = number_from(j.at("outside_fraction"));
  v.in_reference_pool = j.at("in_reference_pool").get<bool>();
  for (const auto& m : j.at("members")) {
    v.members.push_back({m.at("token").get<std::string>(), m.at("axis").get<std::size_t>(),
                         m.at("end").get<std::string>() == "max" ? AxisEnd::kMax : AxisEnd::kMin,
                         number_from(m.at("score"))});
  }
  for (const auto& w : j.at("description")) {
    v.description.push_back({w.at("token").get<std::string>(), number_from(w.at("similarity"))});
  }
  return v;
}

Json triple_json(const ReportTriple& t) {
  Json j;
  j["vertices"] = {t.tokens[0], t.tokens[1], t.tokens[2]};
  j["inside_triangle_fraction"] = number(t.stats.inside_triangle_fraction);
  j["outside_incircle_fraction"] = number(t.stats.outside_incircle_fraction);
  j["inside_triangle_count"] = t.stats.inside_triangle_count;
  j["outside_incircle_count"] = t.stats.outside_incircle_count;
  j["total"] = t.stats.total;
  j["incenter"] = {number(t.stats.incenter.x), number(t.stats.incenter.y)};
  j["inradius"] = number(t.stats.inradius);
  return j;
}

ReportTriple triple_from(const Json& j) {
  ReportTriple t;
  const auto& names = j.at("vertices");
  for (std::size_t i = 0; i < 3; ++i) t.tokens[i] = names.at(i).get<std::string>();
  t.stats.inside_triangle_fraction = number_from(j.at("inside_triangle_fraction"));
  t.stats.outside_incircle_fraction = number_from(j.at("outside_incircle_fraction"));
  t.stats.inside_triangle_count = j.at("inside_triangle_count").get<std::size_t>();
  t.stats.outside_incircle_count = j.at("outside_incircle_count").get<std::size_t>();
  t.stats.total = j.at("total").get<std::size_t>();
  t.stats.incenter = {number_from(j.at("incenter").at(0)), number_from(j.at("incenter").at(1))};
  t.stats.inradius = number_from(j.at("inradius"));
  return t;
}

Json aggregates_json(const ReportAggregates& a) {
  Json j;
  j["sample_size"] = a.sample_size;
  j["mean_inside_triangle_fraction"] = number(a.mean_inside_triangle_fraction);
  j["mean_outside_incircle_fraction"] = number(a.mean_outside_incircle_fraction);
  return j;
}

std::string fixed(double value, int digits) {
  if (!std::isfinite(value)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string text_report(const AnalysisReport& r) {
  std::ostringstream out;
  out << kToolName << ' ' << r.tool_version << '\n';
  out << "input: " << (r.input.path.empty() ? "<memory>" : r.input.path) << " (" << r.input.format
      << ", " << r.input.num_words << " words, " << r.input.dim << " dims"
      << (r.input.normalized ? ", normalized" : "") << ")\n";
  out << "axes examined: " << r.axes_examined << ", candidates: " << r.num_candidates
      << ", vertices: " << r.vertices.size() << " kept / " << r.rejected.size() << " rejected\n\n";

  auto table = [&](const std::vector<ReportVertex>& vs, const char* title) {
    out << title << '\n';
    if (vs.empty()) {
      out << "  (none)\n";
      return;
    }
    std::size_t width = 14;
    for (const auto& v : vs) width = std::max(width, v.representative.size());
    char head[160];
    std::snprintf(head, sizeof(head), "  %3s  %-*s  %7s  %s\n", "#", static_cast<int>(width),
                  "vertex", "outside", "top words");
    out << head;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto& v = vs[i];
      std::string words;
      for (std::size_t w = 0; w < v.description.size(); ++w) {
        if (w) words += ", ";
        words += v.description[w].token + " (" + fixed(v.description[w].similarity, 3) + ")";
      }
      char line[160];
      std::snprintf(line, sizeof(line), "  %3zu  %-*s  %7s  ", i + 1, static_cast<int>(width),
                    v.representative.c_str(), fixed(v.outside_fraction, 3).c_str());
      out << line << words << '\n';
    }
  };
  table(r.vertices, "simplex vertices:");
  out << '\n';
  table(r.rejected, "rejected candidates:");
  out << '\n';
  out << "triples sampled: " << r.aggregates.sample_size
      << ", mean inside-triangle fraction: " << fixed(r.aggregates.mean_inside_triangle_fraction, 4)
      << ", mean outside-incircle fraction: " << fixed(r.aggregates.mean_outside_incircle_fraction, 4)
      << '\n';
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace

double round_significant(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return std::strtod(buf, nullptr);
}

TripleSample sample_triples(const EmbeddingSpace& space, std::span<const std::size_t> vertex_words,
                            std::size_t samples, std::uint64_t seed, unsigned threads) {
  TripleSample out;
  const std::size_t n = vertex_words.size();
  if (n < 3) {
    out.warnings.push_back("fewer than 3 vertices; no triples sampled");
    out.aggregates = aggregate(out.triples);
    return out;
  }
  if (samples == 0) {
    out.aggregates = aggregate(out.triples);
    return out;
  }

  std::vector<std::array<std::size_t, 3>> order;  // positions into vertex_words
  const std::uint64_t available = choose3(n);
  if (available <= samples) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) order.push_back({a, b, c});
  } else {
    // Up to 4x the request in distinct triples; degenerate ones are skipped.
    const std::size_t wanted = static_cast<std::size_t>(std::min<std::uint64_t>(available, 4 * samples));
    Rng rng(seed, {kTripleStream});
    std::set<std::array<std::size_t, 3>> seen;
    for (std::size_t draws = 0; order.size() < wanted && draws < 64 * wanted; ++draws) {
      std::array<std::size_t, 3> t{rng.uniform_index(n), rng.uniform_index(n - 1), rng.uniform_index(n - 2)};
      if (t[1] >= t[0]) ++t[1];
      // Map the third draw onto the n - 2 positions not yet taken.
      const std::size_t lo = std::min(t[0], t[1]);
      const std::size_t hi = std::max(t[0], t[1]);
      if (t[2] >= lo) ++t[2];
      if (t[2] >= hi) ++t[2];
      std::sort(t.begin(), t.end());
      if (seen.insert(t).second) order.push_back(t);
    }
  }

  std::size_t skipped = 0;
  std::vector<std::optional<TripleStats>> batch;
  for (std::size_t start = 0; start < order.size() && out.triples.size() < samples;) {
    const std::size_t count = std::min(samples - out.triples.size(), order.size() - start);
    batch.assign(count, std::nullopt);
    parallel_for(count, threads, [&](std::size_t i) {
      const auto& t = order[start + i];
      try {
        batch[i] = triangle_stats(space, vertex_words[t[0]], vertex_words[t[1]], vertex_words[t[2]]);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerateTriangle) throw;
      }
    });
    for (std::size_t i = 0; i < count; ++i) {
      if (!batch[i]) {
        ++skipped;
        continue;
      }
      const auto& t = order[start + i];
      out.triples.push_back({{space.word(vertex_words[t[0]]), space.word(vertex_words[t[1]]),
                              space.word(vertex_words[t[2]])},
                             *batch[i]});
    }
    start += count;
  }
  if (skipped > 0) out.warnings.push_back(std::to_string(skipped) + " degenerate triples skipped");
  out.aggregates = aggregate(out.triples);
  return out;
}

AnalysisReport run_analysis(const AnalysisConfig& config) {
  ParseDiagnostics diag;
  const EmbeddingSpace space = load_embeddings(config.input_path, config.format, config.max_words, &diag);
  ReportInput input;
  input.path = config.input_path;
  input.format = std::string(format_name(diag.format));
  AnalysisReport report = run_analysis(space, config, input);
  if (diag.duplicates_dropped > 0) {
    report.warnings.insert(report.warnings.begin(),
                           std::to_string(diag.duplicates_dropped) + " duplicate tokens dropped");
    report.warning = true;
  }
  return report;
}

AnalysisReport run_analysis(const EmbeddingSpace& raw_space, const AnalysisConfig& config,
                            ReportInput input) {
  config.extraction.validate();
  if (config.describe_k < 1) throw Error(ErrorCode::kInvalidArgument, kModule, "describe_k must be >= 1");

  std::optional<EmbeddingSpace> normalized;
  if (config.normalize) normalized = raw_space.normalized();
  const EmbeddingSpace& space = normalized ? *normalized : raw_space;

  AnalysisReport report;
  report.input = std::move(input);
  if (report.input.format.empty()) report.input.format = std::string(format_name(EmbeddingFormat::kGloveText));
  report.input.num_words = space.size();
  report.input.dim = space.dim();
  report.input.normalized = config.normalize;
  report.params = config.extraction;
  report.max_words = config.max_words;
  report.describe_k = config.describe_k;
  report.triple_samples = config.triple_samples;

  const std::size_t axes = std::min(config.extraction.num_axes, space.dim());
  report.axes_examined = axes;
  const PcaModel pca = fit_pca(space, axes, config.threads);
  const auto candidates = find_candidates(space, pca, axes);
  report.num_candidates = candidates.size();
  const auto vertices = glue_candidates(space, candidates, config.extraction, config.threads);
  const FilterOutcome filtered = filter_false_vertices(space, vertices, config.extraction, config.threads);
  report.warnings = filtered.warnings;

  std::set<std::size_t> pool_words;
  for (auto rank : filtered.reference_pool) pool_words.insert(vertices[rank].representative);
  auto in_pool = [&](const Vertex& v) { return pool_words.count(v.representative) > 0; };
  for (const auto& v : filtered.survivors) report.vertices.push_back(describe(space, v, config.describe_k, in_pool(v)));
  for (const auto& v : filtered.rejected) report.rejected.push_back(describe(space, v, config.describe_k, in_pool(v)));

  std::vector<std::size_t> words;
  for (const auto& v : filtered.survivors) words.push_back(v.representative);
  TripleSample sample = sample_triples(space, words, config.triple_samples, config.extraction.seed, config.threads);
  report.triple_sample = std::move(sample.triples);
  report.aggregates = sample.aggregates;
  report.warnings.insert(report.warnings.end(), sample.warnings.begin(), sample.warnings.end());
  report.warning = !report.warnings.empty();
  return report;
}

std::string emit_report(const AnalysisReport& r, ReportFormat format) {
  if (format == ReportFormat::kText) return text_report(r);
  Json j;
  j["tool"] = {{"name", std::string(kToolName)}, {"version", r.tool_version}};
  j["input"] = {{"path", r.input.path},
                {"format", r.input.format},
                {"num_words", r.input.num_words},
                {"dim", r.input.dim},
                {"normalized", r.input.normalized}};
  j["params"] = {{"max_words", r.max_words},
                 {"num_axes", r.params.num_axes},
                 {"k", r.params.k},
                 {"glue_threshold", number(r.params.glue_threshold)},
                 {"trials", r.params.trials},
                 {"tau", number(r.params.tau)},
                 {"pool_tau", number(r.params.pool_tau)},
                 {"seed", r.params.seed},
                 {"describe_k", r.describe_k},
                 {"triple_samples", r.triple_samples}};
  j["axes_examined"] = r.axes_examined;
  j["num_candidates"] = r.num_candidates;
  j["warning"] = r.warning;
  j["warnings"] = r.warnings;
  auto vertices = Json::array();
  for (const auto& v : r.vertices) vertices.push_back(vertex_json(v));
  j["vertices"] = std::move(vertices);
  auto rejected = Json::array();
  for (const auto& v : r.rejected) rejected.push_back(vertex_json(v));
  j["rejected"] = std::move(rejected);
  auto triples = Json::array();
  for (const auto& t : r.triple_sample) triples.push_back(triple_json(t));
  j["triple_sample"] = std::move(triples);
  j["aggregates"] = aggregates_json(r.aggregates);
  return j.dump(2) + "\n";
}

AnalysisReport parse_report_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    AnalysisReport r;
    r.tool_version = j.at("tool").at("version").get<std::string>();
    const auto& in = j.at("input");
    r.input = {in.at("path").get<std::string>(), in.at("format").get<std::string>(),
               in.at("num_words").get<std::size_t>(), in.at("dim").get<std::size_t>(),
               in.at("normalized").get<bool>()};
    const auto& p = j.at("params");
    r.max_words = p.at("max_words").get<std::size_t>();
    r.params.num_axes = p.at("num_axes").get<std::size_t>();
    r.params.k = p.at("k").get<std::size_t>();
    r.params.glue_threshold = p.at("glue_threshold").get<double>();
    r.params.trials = p.at("trials").get<std::size_t>();
    r.params.tau = p.at("tau").get<double>();
    r.params.pool_tau = p.at("pool_tau").get<double>();
    r.params.seed = p.at("seed").get<std::uint64_t>();
    r.describe_k = p.at("describe_k").get<std::size_t>();
    r.triple_samples = p.at("triple_samples").get<std::size_t>();
    r.axes_examined = j.at("axes_examined").get<std::size_t>();
    r.num_candidates = j.at("num_candidates").get<std::size_t>();
    r.warning = j.at("warning").get<bool>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const auto& v : j.at("vertices")) r.vertices.push_back(vertex_from(v));
    for (const auto& v : j.at("rejected")) r.rejected.push_back(vertex_from(v));
    for (const auto& t : j.at("triple_sample")) r.triple_sample.push_back(triple_from(t));
    const auto& a = j.at("aggregates");
    r.aggregates.sample_size = a.at("sample_size").get<std::size_t>();
    r.aggregates.mean_inside_triangle_fraction = number_from(a.at("mean_inside_triangle_fraction"));
    r.aggregates.mean_outside_incircle_fraction = number_from(a.at("mean_outside_incircle_fraction"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, kModule, std::string("report JSON: ") + e.what());
  }
}

std::string emit_triple_sample_json(const TripleSample& sample) {
  Json j;
  j["warning"] = !sample.warnings.empty();
  j["warnings"] = sample.warnings;
  auto triples = Json::array();
  for (const auto& t : sample.triples) triples.push_back(triple_json(t));
  j["triple_sample"] = std::move(triples);
  j["aggregates"] = aggregates_json(sample.aggregates);
  return j.dump(2) + "\n";
}

}  // namespace wordsimplex

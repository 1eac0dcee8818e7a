// wordsimplex: find and inspect the simplex shape of a word-embedding cloud.
//
//   wordsimplex synth   --dim 50 --vertices 12 --points 20000 -o cloud.txt --truth truth.json
//   wordsimplex analyze cloud.txt --format text
//   wordsimplex project cloud.txt --triple w000001,w000002,w000003 --format svg -o plot.svg
//   wordsimplex stats   cloud.txt --vertex-file report.json

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wordsimplex/embedding_io.hpp"
#include "wordsimplex/errors.hpp"
#include "wordsimplex/report.hpp"
#include "wordsimplex/synthetic.hpp"

namespace ws = wordsimplex;

namespace {

struct InputOptions {
  std::string path;
  std::string format;  // empty = auto-detect
  std::size_t max_words = 50000;
  bool normalize = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "Embedding file (GloVe or word2vec text), '-' for stdin")->required();
  cmd->add_option("--input-format", in.format, "glove_text or w2v_text (default: detect)")
      ->check(CLI::IsMember({"glove_text", "w2v_text"}));
  cmd->add_option("--max-words", in.max_words, "Keep the first N unique words")->check(CLI::PositiveNumber);
  cmd->add_flag("--normalize", in.normalize, "Scale every vector to unit length before analysis");
}

std::optional<ws::EmbeddingFormat> format_hint(const InputOptions& in) {
  if (in.format.empty()) return std::nullopt;
  return ws::parse_format_name(in.format);
}

ws::EmbeddingSpace load(const InputOptions& in, ws::ParseDiagnostics* diag) {
  ws::EmbeddingSpace space = in.path == "-"
                                 ? ws::parse_embeddings(std::cin, format_hint(in), in.max_words, diag)
                                 : ws::load_embeddings(in.path, format_hint(in), in.max_words, diag);
  if (diag != nullptr) {
    for (const auto& w : diag->warnings) std::cerr << "warning: " << w << '\n';
  }
  return in.normalize ? space.normalized() : space;
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ws::Error(ws::ErrorCode::kIo, "cli", "cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::string> split_tokens(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : list) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t lookup(const ws::EmbeddingSpace& space, const std::string& token) {
  auto idx = space.find(token);
  if (!idx) throw ws::Error(ws::ErrorCode::kInvalidArgument, "cli", "token '" + token + "' is not in the vocabulary");
  return *idx;
}

// A vertex file is either a report JSON (its surviving vertices are used) or
// plain text with one token per line.
std::vector<std::string> read_vertex_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ws::Error(ws::ErrorCode::kIo, "cli", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<std::string> tokens;
  if (first != std::string::npos && text[first] == '{') {
    for (const auto& v : ws::parse_report_json(text).vertices) tokens.push_back(v.representative);
    return tokens;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) tokens.push_back(line);
  }
  return tokens;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect and describe the simplex shape of a word-embedding cloud"};
  app.set_version_flag("--version", std::string(ws::kToolVersion));
  app.require_subcommand(1);

  // analyze
  InputOptions analyze_in;
  ws::AnalysisConfig cfg;
  std::string analyze_format = "json";
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Run the full vertex-extraction pipeline and emit a report");
  add_input_options(analyze, analyze_in);
  analyze->add_option("--axes", cfg.extraction.num_axes, "Number of PCA axes scanned")->check(CLI::PositiveNumber);
  analyze->add_option("--k", cfg.extraction.k, "Neighbour-list size for gluing")->check(CLI::PositiveNumber);
  analyze->add_option("--glue-threshold", cfg.extraction.glue_threshold, "Jaccard threshold for gluing")
      ->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--trials", cfg.extraction.trials, "Random partner pairs per vertex")->check(CLI::PositiveNumber);
  analyze->add_option("--tau", cfg.extraction.tau, "Maximum mean outside-triangle fraction of a vertex")
      ->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--pool-tau", cfg.extraction.pool_tau, "Admission threshold of the reference pool")
      ->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--triple-samples", cfg.triple_samples, "Vertex triples sampled for aggregates");
  analyze->add_option("--describe-k", cfg.describe_k, "Words listed per vertex")->check(CLI::PositiveNumber);
  analyze->add_option("--seed", cfg.extraction.seed, "Random seed");
  analyze->add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--format", analyze_format, "json or text")->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("-o,--output", analyze_out, "Output file (default stdout)");

  // project
  InputOptions project_in;
  std::string triple_arg;
  std::string project_format = "csv";
  std::string project_out;
  auto* project = app.add_subcommand("project", "Project the cloud onto the plane of three vertex words");
  add_input_options(project, project_in);
  project->add_option("--triple", triple_arg, "Three comma-separated tokens")->required();
  project->add_option("--format", project_format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  project->add_option("-o,--output", project_out, "Output file (default stdout)");

  // synth
  ws::SyntheticParams synth_params;
  std::string synth_out;
  std::string synth_truth;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic simplex cloud with ground truth");
  synth->add_option("--dim", synth_params.dim, "Dimension D");
  synth->add_option("--vertices", synth_params.vertices, "Corner count V (3 <= V <= D + 1)");
  synth->add_option("--points", synth_params.points, "Total points N, corners included");
  synth->add_option("--alpha", synth_params.alpha, "Dirichlet concentration");
  synth->add_option("--sigma", synth_params.sigma, "Gaussian noise scale");
  synth->add_option("--seed", synth_params.seed, "Random seed");
  synth->add_flag("--irregular", synth_params.irregular, "Random corner placement (no exactness guarantee)");
  synth->add_option("-o,--output", synth_out, "Cloud in glove_text (default stdout)");
  synth->add_option("--truth", synth_truth, "Ground-truth JSON sidecar path");

  // stats
  InputOptions stats_in;
  std::string stats_vertices;
  std::string stats_vertex_file;
  std::size_t stats_samples = 100;
  std::uint64_t stats_seed = 0;
  std::string stats_out;
  unsigned stats_threads = 1;
  auto* stats = app.add_subcommand("stats", "Triangle/incircle aggregates for a given vertex list");
  add_input_options(stats, stats_in);
  auto* vopt = stats->add_option("--vertices", stats_vertices, "Comma-separated vertex tokens");
  auto* fopt = stats->add_option("--vertex-file", stats_vertex_file, "Report JSON or one token per line");
  vopt->excludes(fopt);
  stats->add_option("--triple-samples", stats_samples, "Vertex triples sampled");
  stats->add_option("--seed", stats_seed, "Random seed");
  stats->add_option("--threads", stats_threads, "Worker threads")->check(CLI::PositiveNumber);
  stats->add_option("-o,--output", stats_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 1;
  }

  try {
    if (analyze->parsed()) {
      cfg.max_words = analyze_in.max_words;
      cfg.normalize = analyze_in.normalize;
      ws::ParseDiagnostics diag;
      const ws::EmbeddingSpace space = analyze_in.path == "-"
          ? ws::parse_embeddings(std::cin, format_hint(analyze_in), analyze_in.max_words, &diag)
          : ws::load_embeddings(analyze_in.path, format_hint(analyze_in), analyze_in.max_words, &diag);
      ws::ReportInput input;
      input.path = analyze_in.path;
      input.format = std::string(ws::format_name(diag.format));
      ws::AnalysisReport report = ws::run_analysis(space, cfg, input);
      if (diag.duplicates_dropped > 0) {
        report.warnings.insert(report.warnings.begin(),
                               std::to_string(diag.duplicates_dropped) + " duplicate tokens dropped");
        report.warning = true;
      }
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      write_output(analyze_out, ws::emit_report(report, analyze_format == "text" ? ws::ReportFormat::kText
                                                                                 : ws::ReportFormat::kJson));
    } else if (project->parsed()) {
      const ws::EmbeddingSpace space = load(project_in, nullptr);
      const auto tokens = split_tokens(triple_arg);
      if (tokens.size() != 3) {
        throw ws::Error(ws::ErrorCode::kInvalidArgument, "cli", "--triple needs exactly three tokens");
      }
      const std::array<std::size_t, 3> triple{lookup(space, tokens[0]), lookup(space, tokens[1]),
                                              lookup(space, tokens[2])};
      write_output(project_out, ws::emit_projection(space, triple, project_format == "svg"
                                                                       ? ws::ProjectionFormat::kSvg
                                                                       : ws::ProjectionFormat::kCsv));
    } else if (synth->parsed()) {
      const ws::SyntheticCloud cloud = ws::generate_simplex_cloud(synth_params);
      std::ostringstream text;
      ws::write_glove_text(text, cloud.space);
      write_output(synth_out, text.str());
      if (!synth_truth.empty()) write_output(synth_truth, ws::ground_truth_json(cloud));
    } else if (stats->parsed()) {
      const ws::EmbeddingSpace space = load(stats_in, nullptr);
      std::vector<std::string> tokens;
      if (!stats_vertex_file.empty()) {
        tokens = read_vertex_file(stats_vertex_file);
      } else if (!stats_vertices.empty()) {
        tokens = split_tokens(stats_vertices);
      } else {
        throw ws::Error(ws::ErrorCode::kInvalidArgument, "cli", "stats needs --vertices or --vertex-file");
      }
      std::vector<std::size_t> words;
      for (const auto& t : tokens) words.push_back(lookup(space, t));
      const ws::TripleSample sample = ws::sample_triples(space, words, stats_samples, stats_seed, stats_threads);
      for (const auto& w : sample.warnings) std::cerr << "warning: " << w << '\n';
      write_output(stats_out, ws::emit_triple_sample_json(sample));
    }
  } catch (const ws::Error& e) {
    std::cerr << "error: " << ws::error_code_name(e.code()) << ": " << e.module() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#include "wordsimplex/embedding_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "wordsimplex/errors.hpp"

namespace wordsimplex {
namespace {

constexpr const char* kModule = "embedding_io";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_positive_integer(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && out > 0;
}

// Splits "token c1 c2 ..." on single spaces. Returns the token; coordinates
// are appended to `coords`.
std::string_view split_row(std::string_view line, std::size_t line_no, std::vector<double>& coords) {
  const auto first = line.find(' ');
  if (first == 0) fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": empty token");
  const std::string_view token = line.substr(0, first);
  if (first == std::string_view::npos) return token;
  std::size_t pos = first + 1;
  while (pos <= line.size()) {
    auto next = line.find(' ', pos);
    if (next == std::string_view::npos) next = line.size();
    const std::string_view field = line.substr(pos, next - pos);
    double value = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": non-numeric coordinate '" +
                                  std::string(field) + "'");
    }
    if (!std::isfinite(value)) {
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": non-finite coordinate '" +
                                  std::string(field) + "'");
    }
    coords.push_back(value);
    pos = next + 1;
  }
  return token;
}

}  // namespace

std::string_view format_name(EmbeddingFormat format) noexcept {
  return format == EmbeddingFormat::kW2vText ? "w2v_text" : "glove_text";
}

std::optional<EmbeddingFormat> parse_format_name(std::string_view name) noexcept {
  if (name == "glove_text" || name == "glove") return EmbeddingFormat::kGloveText;
  if (name == "w2v_text" || name == "w2v" || name == "vec") return EmbeddingFormat::kW2vText;
  return std::nullopt;
}

EmbeddingSpace::EmbeddingSpace(std::vector<std::string> words, Matrix vectors)
    : words_(std::move(words)), vectors_(std::move(vectors)) {
  if (words_.empty()) throw Error(ErrorCode::kInvalidArgument, kModule, "embedding space is empty");
  if (static_cast<std::size_t>(vectors_.rows()) != words_.size()) {
    throw Error(ErrorCode::kInvalidArgument, kModule,
                "vocabulary has " + std::to_string(words_.size()) + " words but matrix has " +
                    std::to_string(vectors_.rows()) + " rows");
  }
  if (vectors_.cols() < 1) throw Error(ErrorCode::kInvalidArgument, kModule, "dimension must be positive");
  if (!vectors_.allFinite()) throw Error(ErrorCode::kInvalidArgument, kModule, "non-finite coordinate");
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument, kModule, "duplicate token '" + words_[i] + "'");
    }
  }
}

std::optional<std::size_t> EmbeddingSpace::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingSpace EmbeddingSpace::normalized() const {
  Matrix out = vectors_;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (norm > 0.0) out.row(i) /= norm;
  }
  return EmbeddingSpace(words_, std::move(out));
}

EmbeddingFormat detect_format(std::string_view first_line) {
  const std::string_view line = trim_right(first_line);
  if (line.empty()) fail(ErrorCode::kMalformedInput, "empty first line");
  const auto space = line.find(' ');
  if (space == std::string_view::npos) return EmbeddingFormat::kGloveText;
  std::size_t count = 0;
  std::size_t dim = 0;
  if (parse_positive_integer(line.substr(0, space), count) &&
      parse_positive_integer(line.substr(space + 1), dim)) {
    return EmbeddingFormat::kW2vText;
  }
  return EmbeddingFormat::kGloveText;
}

EmbeddingSpace parse_embeddings(std::istream& source, std::optional<EmbeddingFormat> format,
                                std::size_t max_words, ParseDiagnostics* diagnostics) {
  if (max_words == 0) fail(ErrorCode::kInvalidArgument, "max_words must be positive");

  std::string line;
  std::size_t line_no = 0;
  // Skip leading blank lines so the first real line decides the format.
  while (std::getline(source, line)) {
    ++line_no;
    if (!trim_right(line).empty()) break;
  }
  if (trim_right(line).empty()) fail(ErrorCode::kEmptyInput, "input contains no data rows");

  const EmbeddingFormat fmt = format.value_or(detect_format(line));
  std::size_t dim = 0;
  bool have_pending_row = true;
  if (fmt == EmbeddingFormat::kW2vText) {
    const std::string_view header = trim_right(line);
    const auto space = header.find(' ');
    std::size_t count = 0;
    if (space == std::string_view::npos || !parse_positive_integer(header.substr(0, space), count) ||
        !parse_positive_integer(header.substr(space + 1), dim)) {
      fail(ErrorCode::kMalformedInput, "line 1: expected 'count dim' header for w2v_text");
    }
    have_pending_row = false;
  }

  std::vector<std::string> words;
  std::vector<double> flat;
  std::unordered_set<std::string> seen;
  std::vector<double> coords;
  std::size_t duplicates = 0;
  std::vector<std::string> warnings;

  auto consume = [&](std::string_view raw) {
    const std::string_view row = trim_right(raw);
    if (row.empty()) return;
    coords.clear();
    const std::string_view token = split_row(row, line_no, coords);
    if (dim == 0) {
      if (coords.empty()) fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": row has no coordinates");
      dim = coords.size();
    }
    if (coords.size() != dim) {
      fail(ErrorCode::kDimensionMismatch, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(dim) + " coordinates, got " +
                                              std::to_string(coords.size()));
    }
    std::string key(token);
    if (!seen.insert(key).second) {
      ++duplicates;
      warnings.push_back("line " + std::to_string(line_no) + ": duplicate token '" + key +
                         "' dropped (first occurrence kept)");
      return;
    }
    words.push_back(std::move(key));
    flat.insert(flat.end(), coords.begin(), coords.end());
  };

  if (have_pending_row) consume(line);
  while (words.size() < max_words && std::getline(source, line)) {
    ++line_no;
    consume(line);
  }
  if (words.empty()) fail(ErrorCode::kEmptyInput, "input contains no data rows");

  const auto rows = static_cast<Eigen::Index>(words.size());
  Matrix vectors = Eigen::Map<const Matrix>(flat.data(), rows, static_cast<Eigen::Index>(dim));
  if (diagnostics != nullptr) {
    diagnostics->format = fmt;
    diagnostics->duplicates_dropped = duplicates;
    diagnostics->warnings = std::move(warnings);
  }
  return EmbeddingSpace(std::move(words), std::move(vectors));
}

EmbeddingSpace load_embeddings(const std::filesystem::path& path,
                               std::optional<EmbeddingFormat> format, std::size_t max_words,
                               ParseDiagnostics* diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, kModule, "cannot open '" + path.string() + "'");
  return parse_embeddings(in, format, max_words, diagnostics);
}

void write_glove_text(std::ostream& out, const EmbeddingSpace& space) {
  char buf[64];
  std::string line;
  const Matrix& v = space.vectors();
  for (std::size_t i = 0; i < space.size(); ++i) {
    line = space.word(i);
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v(static_cast<Eigen::Index>(i), j));
      line.push_back(' ');
      line.append(buf, ptr);
    }
    line.push_back('\n');
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

}  // namespace wordsimplex

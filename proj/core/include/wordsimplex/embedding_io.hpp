#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wordsimplex/types.hpp"

namespace wordsimplex {

enum class EmbeddingFormat {
  kGloveText,  // "token c1 ... cD" rows, no header
  kW2vText,    // word2vec / fastText .vec: "N D" header, then GloVe-style rows
};

std::string_view format_name(EmbeddingFormat format) noexcept;
std::optional<EmbeddingFormat> parse_format_name(std::string_view name) noexcept;

/// Vocabulary in frequency (file) order together with its N x D coordinate
/// matrix. Immutable once constructed; safe to share across threads.
class EmbeddingSpace {
 public:
  /// Throws Error(kInvalidArgument) if words are duplicated, the row count
  /// disagrees with the vocabulary, the space is empty or any coordinate is
  /// non-finite.
  EmbeddingSpace(std::vector<std::string> words, Matrix vectors);

  std::size_t size() const noexcept { return words_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors_.cols()); }

  const std::vector<std::string>& words() const noexcept { return words_; }
  const std::string& word(std::size_t i) const { return words_.at(i); }
  const Matrix& vectors() const noexcept { return vectors_; }
  auto row(std::size_t i) const { return vectors_.row(static_cast<Eigen::Index>(i)); }

  std::optional<std::size_t> find(std::string_view token) const;

  /// Copy with every nonzero row scaled to unit length.
  EmbeddingSpace normalized() const;

 private:
  std::vector<std::string> words_;
  Matrix vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Classifies an input by its first line: exactly two positive integers is a
/// word2vec/fastText header, anything else is a GloVe data row.
EmbeddingFormat detect_format(std::string_view first_line);

struct ParseDiagnostics {
  EmbeddingFormat format = EmbeddingFormat::kGloveText;
  std::size_t duplicates_dropped = 0;
  std::vector<std::string> warnings;
};

/// Reads at most `max_words` unique tokens in file order. Later duplicates of
/// a token are dropped without consuming a slot. Reading stops as soon as the
/// quota is filled, so rows past the cutoff are never validated.
EmbeddingSpace parse_embeddings(std::istream& source, std::optional<EmbeddingFormat> format,
                                std::size_t max_words, ParseDiagnostics* diagnostics = nullptr);

EmbeddingSpace load_embeddings(const std::filesystem::path& path,
                               std::optional<EmbeddingFormat> format, std::size_t max_words,
                               ParseDiagnostics* diagnostics = nullptr);

/// Writes glove_text with shortest round-trip coordinates, so re-parsing the
/// output reproduces every coordinate bit for bit.
void write_glove_text(std::ostream& out, const EmbeddingSpace& space);

}  // namespace wordsimplex

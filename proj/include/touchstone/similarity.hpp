#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace touchstone::similarity {

// Sparse trigram counts for the lexical backend, dense reals for the
// external one. Exactly one representation is populated.
struct EmbeddingVector {
  std::map<std::string, double> features;
  std::vector<double> dense;

  bool empty() const { return features.empty() && dense.empty(); }
};

// ASCII lowercase, whitespace runs collapsed to single spaces, trimmed.
std::string normalize_text(std::string_view text);

// Character trigrams over the normalized string (byte windows, so
// multi-byte UTF-8 sequences span features); a normalized string
// shorter than three bytes becomes a single feature.
EmbeddingVector embed(std::string_view text);

// 0 when either vector is empty; clamped to [0,1].
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// cosine(embed(a), embed(b)) >= theta, lexical backend.
bool text_similar(std::string_view a, std::string_view b, double theta);

enum class Backend { lexical, external };

struct SimilarityConfig {
  Backend backend = Backend::lexical;
  double theta_screen = 0.85;
  double theta_textbox = 0.85;
  std::optional<std::string> external_endpoint;
};

// Backend-dispatching embedder. The lexical path is pure; the external
// path POSTs {"texts": [...]} to <endpoint>/embed and expects
// {"vectors": [[...], ...]} back within 5 s, no retries.
// raises ExternalServiceUnavailable
class Embedder {
 public:
  explicit Embedder(SimilarityConfig config);

  EmbeddingVector embed_text(const std::string& text) const;
  std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) const;
  bool similar(const std::string& a, const std::string& b, double theta) const;
  double score(const std::string& a, const std::string& b) const;

  const SimilarityConfig& config() const { return config_; }

 private:
  SimilarityConfig config_;
};

}  // namespace touchstone::similarity

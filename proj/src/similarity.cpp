#include "touchstone/similarity.hpp"

#include <algorithm>
#include <cmath>

#include <httplib.h>
#include <json.hpp>

#include "touchstone/error.hpp"

namespace touchstone::similarity {

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c;
  }
  return out;
}

EmbeddingVector embed(std::string_view text) {
  EmbeddingVector vec;
  std::string s = normalize_text(text);
  if (s.empty()) return vec;
  if (s.size() < 3) {
    vec.features[s] = 1.0;
    return vec;
  }
  for (std::size_t i = 0; i + 3 <= s.size(); ++i) {
    vec.features[s.substr(i, 3)] += 1.0;
  }
  return vec;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  if (!a.dense.empty() || !b.dense.empty()) {
    if (a.dense.empty() || b.dense.empty()) return 0.0;  // incomparable spaces
    std::size_t overlap = std::min(a.dense.size(), b.dense.size());
    for (std::size_t i = 0; i < overlap; ++i) dot += a.dense[i] * b.dense[i];
    for (double v : a.dense) na += v * v;
    for (double v : b.dense) nb += v * v;
  } else {
    for (const auto& [feature, count] : a.features) {
      auto it = b.features.find(feature);
      if (it != b.features.end()) dot += count * it->second;
      na += count * count;
    }
    for (const auto& [feature, count] : b.features) nb += count * count;
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

bool text_similar(std::string_view a, std::string_view b, double theta) {
  return cosine(embed(a), embed(b)) >= theta;
}

Embedder::Embedder(SimilarityConfig config) : config_(std::move(config)) {
  if (config_.backend == Backend::external && !config_.external_endpoint) {
    fail(Errc::config_error, "external similarity backend requires an endpoint");
  }
}

std::vector<EmbeddingVector> Embedder::embed_batch(
    const std::vector<std::string>& texts) const {
  if (config_.backend == Backend::lexical) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const std::string& text : texts) out.push_back(embed(text));
    return out;
  }

  httplib::Client client(*config_.external_endpoint);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(5, 0);
  nlohmann::json body;
  body["texts"] = texts;
  auto res = client.Post("/embed", body.dump(), "application/json");
  if (!res || res->status != 200) {
    fail(Errc::external_service_unavailable,
         "POST " + *config_.external_endpoint + "/embed failed" +
             (res ? " with status " + std::to_string(res->status) : ""));
  }
  nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("vectors") ||
      !reply["vectors"].is_array() || reply["vectors"].size() != texts.size()) {
    fail(Errc::external_service_unavailable, "malformed /embed response");
  }
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& item : reply["vectors"]) {
    EmbeddingVector vec;
    vec.dense = item.get<std::vector<double>>();
    out.push_back(std::move(vec));
  }
  return out;
}

EmbeddingVector Embedder::embed_text(const std::string& text) const {
  return embed_batch({text}).front();
}

double Embedder::score(const std::string& a, const std::string& b) const {
  if (config_.backend == Backend::lexical) return cosine(embed(a), embed(b));
  auto vectors = embed_batch({a, b});
  return cosine(vectors[0], vectors[1]);
}

bool Embedder::similar(const std::string& a, const std::string& b,
                       double theta) const {
  return score(a, b) >= theta;
}

}  // namespace touchstone::similarity

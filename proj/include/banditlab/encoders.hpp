#pragma once

// Context encoders: map a context's text to a fixed-dimension embedding.
// Three interchangeable kinds behind one interface:
//
//   hash   - deterministic token-hash embedding; needs no data or network
//   table  - exact lookup from a JSONL file of precomputed vectors
//   remote - HTTP embedding service with a persistent on-disk cache
//
// Table file format, one JSON object per line:
//   {"text": "<context>", "vector": [<embedding_dim> reals]}
// Cache files use the same line format plus "model" and "fetched_at".
//
// Remote protocol: POST <endpoint> with body {"model": "...", "input": "..."}.
// The response must contain exactly one array of embedding_dim finite reals
// (a bare array, {"embedding": [...]}, and OpenAI-style
// {"data": [{"embedding": [...]}]} all qualify). The credential is read from
// the BANDITLAB_API_KEY environment variable and is never logged or written
// to any output. A failed fetch aborts the run; there is no silent fallback
// to another encoder kind.

#include <sys/file.h>
#include <unistd.h>

#if defined(BANDITLAB_USE_OPENSSL)
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/json_io.hpp"

namespace banditlab {

struct UnknownContext : BanditError {
  using BanditError::BanditError;
};
struct RemoteUnavailable : BanditError {
  using BanditError::BanditError;
};
struct SchemaError : BanditError {
  using BanditError::BanditError;
};

struct RemoteConfig {
  std::string endpoint;
  std::string model;
  int timeout_ms = 10000;
  int max_retries = 3;   // total attempts
  int backoff_ms = 100;  // doubles after each failed attempt
  std::string cache_path;
};

struct EncoderConfig {
  std::string kind = "hash";  // hash | table | remote
  int embedding_dim = 64;
  std::uint64_t hash_salt = 0;
  std::string table_path;
  RemoteConfig remote;

  void validate() const {
    if (kind != "hash" && kind != "table" && kind != "remote") {
      throw ConfigError("encoder.kind must be hash, table, or remote (got \"" +
                        kind + "\")");
    }
    if (embedding_dim < 2) {
      throw ConfigError("encoder.embedding_dim must be >= 2");
    }
    if (kind == "table" && table_path.empty()) {
      throw ConfigError("encoder.kind=table requires table_path");
    }
    if (kind == "remote" && (remote.endpoint.empty() || remote.model.empty())) {
      throw ConfigError("encoder.kind=remote requires remote.endpoint and remote.model");
    }
  }

  static EncoderConfig from_json(const json& j) {
    EncoderConfig cfg;
    check_keys(j, {"kind", "embedding_dim", "hash_salt", "table_path", "remote"},
               "encoder");
    cfg.kind = field_or<std::string>(j, "kind", cfg.kind, "encoder");
    cfg.embedding_dim =
        field_or<int>(j, "embedding_dim", cfg.embedding_dim, "encoder");
    cfg.hash_salt =
        field_or<std::uint64_t>(j, "hash_salt", cfg.hash_salt, "encoder");
    cfg.table_path =
        field_or<std::string>(j, "table_path", cfg.table_path, "encoder");
    if (auto it = j.find("remote"); it != j.end()) {
      check_keys(*it,
                 {"endpoint", "model", "timeout_ms", "max_retries",
                  "backoff_ms", "cache_path"},
                 "encoder.remote");
      cfg.remote.endpoint =
          field_or<std::string>(*it, "endpoint", "", "encoder.remote");
      cfg.remote.model = field_or<std::string>(*it, "model", "", "encoder.remote");
      cfg.remote.timeout_ms =
          field_or<int>(*it, "timeout_ms", cfg.remote.timeout_ms, "encoder.remote");
      cfg.remote.max_retries = field_or<int>(*it, "max_retries",
                                             cfg.remote.max_retries, "encoder.remote");
      cfg.remote.backoff_ms =
          field_or<int>(*it, "backoff_ms", cfg.remote.backoff_ms, "encoder.remote");
      cfg.remote.cache_path =
          field_or<std::string>(*it, "cache_path", "", "encoder.remote");
    }
    return cfg;
  }

  json to_json() const {
    json j{{"kind", kind}, {"embedding_dim", embedding_dim}};
    if (kind == "hash") j["hash_salt"] = hash_salt;
    if (kind == "table") j["table_path"] = table_path;
    if (kind == "remote") {
      j["remote"] = json{{"endpoint", remote.endpoint},
                         {"model", remote.model},
                         {"timeout_ms", remote.timeout_ms},
                         {"max_retries", remote.max_retries},
                         {"backoff_ms", remote.backoff_ms},
                         {"cache_path", remote.cache_path}};
    }
    return j;
  }
};

class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual EmbeddingVector encode(const std::string& text) = 0;
  virtual int embedding_dim() const = 0;
  virtual std::string name() const = 0;
};

// Deterministic stand-in encoder. Tokenization is lowercase whitespace
// splitting with duplicates dropped, so texts sharing tokens get correlated
// embeddings ("sunny and windy" overlaps "sunny"). Component i is the sum
// over tokens of a stable 64-bit hash of (salt, i, token) mapped into
// [-1, 1); the vector is then normalized to unit Euclidean norm.
inline EmbeddingVector hash_encode(std::string_view text, int n,
                                   std::uint64_t salt) {
  if (n < 2) throw ConfigError("hash_encode: embedding dimension must be >= 2");
  std::set<std::string> tokens;
  std::string tok;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      if (!tok.empty()) tokens.insert(tok);
      tok.clear();
    } else {
      tok.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!tok.empty()) tokens.insert(tok);
  if (tokens.empty()) tokens.insert("");  // whitespace-only input

  EmbeddingVector v = EmbeddingVector::Zero(n);
  const std::uint64_t salt_mix = splitmix64(salt);
  for (const auto& token : tokens) {
    const std::uint64_t token_hash = fnv1a64(token) ^ salt_mix;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t h = splitmix64(
          token_hash ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(i + 1)));
      v[i] += static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
    }
  }
  const double norm = v.norm();
  if (norm == 0.0) {  // unreachable for any real token set; keep a fixed answer
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / norm;
}

class HashEncoder final : public Encoder {
 public:
  HashEncoder(int embedding_dim, std::uint64_t salt)
      : dim_(embedding_dim), salt_(salt) {
    if (dim_ < 2) throw ConfigError("embedding_dim must be >= 2");
  }

  EmbeddingVector encode(const std::string& text) override {
    return hash_encode(text, dim_, salt_);
  }
  int embedding_dim() const override { return dim_; }
  std::string name() const override { return "hash"; }

 private:
  int dim_;
  std::uint64_t salt_;
};

// Exact-match lookup. Unknown text is an error, never a fabricated vector.
class TableEncoder final : public Encoder {
 public:
  static TableEncoder load(const std::string& path, int embedding_dim) {
    TableEncoder enc;
    enc.dim_ = embedding_dim;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open embedding table: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const std::string where = path + ":" + std::to_string(lineno);
      json j = parse_json(line, where);
      if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
      const auto text = require_field<std::string>(j, "text", where);
      const auto values = require_field<std::vector<double>>(j, "vector", where);
      if (static_cast<int>(values.size()) != embedding_dim) {
        throw DimensionMismatch(where + ": vector length " +
                                std::to_string(values.size()) +
                                " != embedding_dim " +
                                std::to_string(embedding_dim));
      }
      for (double x : values) {
        if (!std::isfinite(x)) throw ParseError(where + ": non-finite component");
      }
      if (enc.table_.count(text)) {
        throw ParseError(where + ": duplicate text \"" + text + "\"");
      }
      enc.table_.emplace(text,
                         Eigen::Map<const EmbeddingVector>(
                             values.data(), static_cast<Eigen::Index>(values.size())));
    }
    if (enc.table_.empty()) throw ParseError(path + ": empty embedding table");
    return enc;
  }

  EmbeddingVector encode(const std::string& text) override {
    auto it = table_.find(text);
    if (it == table_.end()) {
      throw UnknownContext("text not in embedding table: \"" + text + "\"");
    }
    return it->second;
  }
  int embedding_dim() const override { return dim_; }
  std::string name() const override { return "table"; }

 private:
  int dim_ = 0;
  std::map<std::string, EmbeddingVector> table_;
};

struct HttpRequest {
  std::string url;
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
  int timeout_ms = 10000;
};

// status 0 means the transport itself failed (connect error, timeout).
struct HttpResponse {
  int status = 0;
  std::string body;
  std::string error;
};

using HttpTransport = std::function<HttpResponse(const HttpRequest&)>;

// POSTs over HTTP via cpp-httplib. HTTPS endpoints work when built with
// BANDITLAB_USE_OPENSSL (the CLI is); otherwise they fail with a clear
// transport error. Tests inject stub transports instead of using this.
inline HttpTransport default_transport() {
  return [](const HttpRequest& req) -> HttpResponse {
    const auto scheme_end = req.url.find("://");
    if (scheme_end == std::string::npos) {
      return {0, "", "malformed endpoint URL: " + req.url};
    }
    const auto path_start = req.url.find('/', scheme_end + 3);
    const std::string base =
        path_start == std::string::npos ? req.url : req.url.substr(0, path_start);
    const std::string path =
        path_start == std::string::npos ? "/" : req.url.substr(path_start);
#if !defined(BANDITLAB_USE_OPENSSL)
    if (base.rfind("https://", 0) == 0) {
      return {0, "", "https endpoint requires a TLS-enabled build"};
    }
#endif
    httplib::Client client(base);
    client.set_connection_timeout(std::chrono::milliseconds(req.timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(req.timeout_ms));
    client.set_write_timeout(std::chrono::milliseconds(req.timeout_ms));
    httplib::Headers headers;
    std::string content_type = "application/json";
    for (const auto& [key, value] : req.headers) {
      if (key == "Content-Type") {
        content_type = value;
      } else {
        headers.emplace(key, value);
      }
    }
    auto result = client.Post(path, headers, req.body, content_type);
    if (!result) {
      return {0, "", httplib::to_string(result.error())};
    }
    return {result->status, result->body, ""};
  };
}

// Embedding service client. Lookups hit the in-memory cache first (loaded
// from cache_path at construction); a miss fetches with bounded retries and
// appends the entry to the cache file before returning, so a warm cache
// short-circuits the network entirely and runs can complete offline.
// Cache entries are keyed by (model, exact text); no text normalization.
//
// Reads are safe from concurrent threads; misses serialize on an internal
// lock and cache-file appends take an exclusive flock.
class RemoteEncoder final : public Encoder {
 public:
  explicit RemoteEncoder(EncoderConfig config,
                         HttpTransport transport = default_transport())
      : cfg_(std::move(config)), transport_(std::move(transport)) {
    cfg_.validate();
    if (cfg_.kind != "remote") throw ConfigError("RemoteEncoder requires kind=remote");
    if (cfg_.remote.max_retries < 1) {
      throw ConfigError("encoder.remote.max_retries must be >= 1");
    }
    load_cache();
  }

  EmbeddingVector encode(const std::string& text) override {
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(text); it != cache_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = cache_.find(text); it != cache_.end()) return it->second;
    EmbeddingVector vec = fetch(text);
    append_cache_entry(text, vec);
    cache_.emplace(text, vec);
    return vec;
  }

  int embedding_dim() const override { return cfg_.embedding_dim; }
  std::string name() const override { return "remote:" + cfg_.remote.model; }

  std::size_t cached_entries() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
  }

 private:
  void load_cache() {
    if (cfg_.remote.cache_path.empty()) return;
    std::ifstream probe(cfg_.remote.cache_path);
    if (!probe) return;  // no cache yet
    std::ifstream in(cfg_.remote.cache_path, std::ios::binary);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const std::string where =
          cfg_.remote.cache_path + ":" + std::to_string(lineno);
      json j = parse_json(line, where);
      const auto model = require_field<std::string>(j, "model", where);
      if (model != cfg_.remote.model) continue;  // other models share the file
      const auto text = require_field<std::string>(j, "text", where);
      const auto values = require_field<std::vector<double>>(j, "vector", where);
      if (static_cast<int>(values.size()) != cfg_.embedding_dim) {
        throw DimensionMismatch(where + ": cached vector length " +
                                std::to_string(values.size()) +
                                " != embedding_dim " +
                                std::to_string(cfg_.embedding_dim));
      }
      cache_[text] = Eigen::Map<const EmbeddingVector>(
          values.data(), static_cast<Eigen::Index>(values.size()));
    }
  }

  void append_cache_entry(const std::string& text, const EmbeddingVector& vec) {
    if (cfg_.remote.cache_path.empty()) return;
    json entry{{"text", text},
               {"vector", std::vector<double>(vec.data(), vec.data() + vec.size())},
               {"model", cfg_.remote.model},
               {"fetched_at", utc_now()}};
    const std::string line = entry.dump() + "\n";
    FILE* f = std::fopen(cfg_.remote.cache_path.c_str(), "ab");
    if (!f) throw BanditError("cannot open cache file: " + cfg_.remote.cache_path);
    flock(fileno(f), LOCK_EX);
    std::fwrite(line.data(), 1, line.size(), f);
    std::fflush(f);
    flock(fileno(f), LOCK_UN);
    std::fclose(f);
  }

  EmbeddingVector fetch(const std::string& text) {
    const char* key = std::getenv("BANDITLAB_API_KEY");
    if (key == nullptr || *key == '\0') {
      throw ConfigError(
          "remote encoder needs BANDITLAB_API_KEY in the environment "
          "(cache-complete runs do not)");
    }
    HttpRequest req;
    req.url = cfg_.remote.endpoint;
    req.body = json{{"model", cfg_.remote.model}, {"input", text}}.dump();
    req.headers = {{"Content-Type", "application/json"},
                   {"Authorization", std::string("Bearer ") + key}};
    req.timeout_ms = cfg_.remote.timeout_ms;

    std::string last_error;
    for (int attempt = 1; attempt <= cfg_.remote.max_retries; ++attempt) {
      if (attempt > 1 && cfg_.remote.backoff_ms > 0) {
        const auto delay = std::chrono::milliseconds(
            static_cast<long long>(cfg_.remote.backoff_ms) << (attempt - 2));
        std::this_thread::sleep_for(delay);
      }
      HttpResponse resp = transport_(req);
      if (resp.status >= 200 && resp.status < 300) {
        return parse_embedding_response(resp.body, cfg_.embedding_dim);
      }
      last_error = resp.status == 0
                       ? "transport failure: " + resp.error
                       : "HTTP " + std::to_string(resp.status);
    }
    throw RemoteUnavailable("embedding request failed after " +
                            std::to_string(cfg_.remote.max_retries) +
                            " attempts (" + last_error + ")");
  }

  static void collect_numeric_arrays(const json& j, std::vector<const json*>& out) {
    if (j.is_array()) {
      bool numeric = !j.empty();
      for (const auto& el : j) {
        if (!el.is_number()) {
          numeric = false;
          break;
        }
      }
      if (numeric) {
        out.push_back(&j);
        return;
      }
      for (const auto& el : j) collect_numeric_arrays(el, out);
    } else if (j.is_object()) {
      for (const auto& [k, v] : j.items()) {
        (void)k;
        collect_numeric_arrays(v, out);
      }
    }
  }

  static EmbeddingVector parse_embedding_response(const std::string& body,
                                                  int expected_dim) {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error& e) {
      throw SchemaError(std::string("embedding response is not JSON: ") + e.what());
    }
    std::vector<const json*> arrays;
    collect_numeric_arrays(j, arrays);
    if (arrays.size() != 1) {
      throw SchemaError("embedding response must contain exactly one numeric "
                        "array, found " + std::to_string(arrays.size()));
    }
    const auto values = arrays.front()->get<std::vector<double>>();
    if (static_cast<int>(values.size()) != expected_dim) {
      throw SchemaError("embedding has length " + std::to_string(values.size()) +
                        ", configured embedding_dim is " +
                        std::to_string(expected_dim) +
                        "; refusing to truncate or pad");
    }
    for (double x : values) {
      if (!std::isfinite(x)) throw SchemaError("embedding has non-finite component");
    }
    return Eigen::Map<const EmbeddingVector>(
        values.data(), static_cast<Eigen::Index>(values.size()));
  }

  static std::string utc_now() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  EncoderConfig cfg_;
  HttpTransport transport_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, EmbeddingVector> cache_;
};

inline std::unique_ptr<Encoder> make_encoder(const EncoderConfig& cfg,
                                             HttpTransport transport = nullptr) {
  cfg.validate();
  if (cfg.kind == "hash") {
    return std::make_unique<HashEncoder>(cfg.embedding_dim, cfg.hash_salt);
  }
  if (cfg.kind == "table") {
    return std::make_unique<TableEncoder>(
        TableEncoder::load(cfg.table_path, cfg.embedding_dim));
  }
  return std::make_unique<RemoteEncoder>(
      cfg, transport ? std::move(transport) : default_transport());
}

}  // namespace banditlab

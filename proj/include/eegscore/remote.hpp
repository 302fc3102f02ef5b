#pragma once
// Client for a model-based tagger speaking the entity wire protocol
// (docs/protocol.md):
//   POST {endpoint}/v1/entities  {"text": str}
//     -> 200 {"entities": [{"start": int, "end": int, "label": str}]}
//   GET  {endpoint}/v1/health    -> 200 {"status": "ok"}
// Offsets count Unicode scalar values in the request text.

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "eegscore/errors.hpp"
#include "eegscore/gazetteer.hpp"
#include "eegscore/log.hpp"
#include "eegscore/model.hpp"
#include "eegscore/negation.hpp"

namespace eegscore {

enum class TaggerMode { GazetteerOnly, RemoteOnly, RemotePreferredWithFallback };

inline std::string_view to_string(TaggerMode m) {
  switch (m) {
    case TaggerMode::GazetteerOnly: return "gazetteer";
    case TaggerMode::RemoteOnly: return "remote";
    case TaggerMode::RemotePreferredWithFallback: return "remote-fallback";
  }
  return "?";
}

inline std::optional<TaggerMode> parse_tagger_mode(std::string_view s) {
  auto l = to_lower_ascii(trim(s));
  if (l == "gazetteer" || l == "gazetteeronly") return TaggerMode::GazetteerOnly;
  if (l == "remote" || l == "remoteonly") return TaggerMode::RemoteOnly;
  if (l == "remote-fallback" || l == "remotepreferredwithfallback")
    return TaggerMode::RemotePreferredWithFallback;
  return std::nullopt;
}

inline std::map<std::string, EntityKind> default_wire_labels() {
  return {{"problem", EntityKind::Problem},
          {"test", EntityKind::Test},
          {"treatment", EntityKind::Treatment},
          {"drug", EntityKind::MedicationName},
          {"dose", EntityKind::MedicationDose},
          {"frequency", EntityKind::MedicationFrequency},
          {"duration", EntityKind::MedicationDuration},
          {"reason", EntityKind::MedicationReason}};
}

inline std::string_view wire_label(EntityKind k) {
  switch (k) {
    case EntityKind::Problem: return "problem";
    case EntityKind::Test: return "test";
    case EntityKind::Treatment: return "treatment";
    case EntityKind::MedicationName: return "drug";
    case EntityKind::MedicationDose: return "dose";
    case EntityKind::MedicationFrequency: return "frequency";
    case EntityKind::MedicationDuration: return "duration";
    case EntityKind::MedicationReason: return "reason";
  }
  return "?";
}

struct TaggerConfig {
  TaggerMode mode = TaggerMode::GazetteerOnly;
  std::optional<std::string> remote_endpoint;
  std::chrono::milliseconds timeout{5000};
  int max_retries = 3;  // total attempts per request
  std::map<std::string, EntityKind> labels = default_wire_labels();

  void validate() const {
    if (mode != TaggerMode::GazetteerOnly && (!remote_endpoint || remote_endpoint->empty()))
      throw ConfigError("tagger mode '" + std::string(to_string(mode)) +
                        "' requires a remote endpoint");
    if (max_retries < 1) throw ConfigError("max_retries must be at least 1");
    if (timeout.count() <= 0) throw ConfigError("timeout must be positive");
  }
};

struct WireEntity {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;
  friend bool operator==(const WireEntity&, const WireEntity&) = default;
};

inline std::string encode_entity_request(std::string_view text) {
  return nlohmann::json{{"text", std::string(text)}}.dump();
}

inline std::string encode_entity_response(const std::vector<WireEntity>& entities) {
  auto arr = nlohmann::json::array();
  for (const auto& e : entities)
    arr.push_back({{"start", e.start}, {"end", e.end}, {"label", e.label}});
  return nlohmann::json{{"entities", arr}}.dump();
}

/// Parses and checks a response body against a text of `text_length` characters.
inline std::vector<WireEntity> decode_entity_response(std::string_view body,
                                                      std::size_t text_length,
                                                      const std::map<std::string, EntityKind>& labels) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("entities") || !j["entities"].is_array())
    throw ProtocolError("response lacks an 'entities' array");
  std::vector<WireEntity> out;
  for (const auto& item : j["entities"]) {
    if (!item.is_object() || !item.contains("start") || !item.contains("end") ||
        !item.contains("label") || !item["start"].is_number_integer() ||
        !item["end"].is_number_integer() || !item["label"].is_string())
      throw ProtocolError("malformed entity: " + item.dump());
    auto start = item["start"].get<long long>();
    auto end = item["end"].get<long long>();
    if (start < 0 || end <= start || static_cast<std::size_t>(end) > text_length)
      throw ProtocolError("entity offsets out of range: " + item.dump());
    auto label = item["label"].get<std::string>();
    if (!labels.count(label)) throw ProtocolError("unknown entity label '" + label + "'");
    out.push_back({static_cast<std::size_t>(start), static_cast<std::size_t>(end), label});
  }
  return out;
}

/// Splits "http://host:port/prefix" into the client base and the path prefix.
inline std::pair<std::string, std::string> split_endpoint(std::string_view endpoint) {
  std::string ep(endpoint);
  while (!ep.empty() && ep.back() == '/') ep.pop_back();
  auto scheme = ep.find("://");
  std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  auto slash = ep.find('/', host_start);
  if (slash == std::string::npos) return {ep, ""};
  return {ep.substr(0, slash), ep.substr(slash)};
}

class RemoteTagger {
 public:
  explicit RemoteTagger(TaggerConfig config) : config_(std::move(config)) {
    if (!config_.remote_endpoint) throw ConfigError("remote tagger requires an endpoint");
    std::tie(base_, prefix_) = split_endpoint(*config_.remote_endpoint);
  }

  const TaggerConfig& config() const noexcept { return config_; }

  /// Raw wire entities for `text`; one request, retried on transport failure.
  std::vector<WireEntity> request(std::string_view text, std::size_t text_length) const {
    const auto body = encode_entity_request(text);
    const int attempts = std::max(1, config_.max_retries);
    std::string last_error;
    for (int attempt = 1; attempt <= attempts; ++attempt) {
      auto client = make_client();
      auto res = client.Post(prefix_ + "/v1/entities", body, "application/json");
      if (!res) {
        last_error = httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200)
        throw ProtocolError("entity service returned HTTP " + std::to_string(res->status));
      return decode_entity_response(res->body, text_length, config_.labels);
    }
    throw TransportError("entity service at " + *config_.remote_endpoint +
                             " unreachable: " + last_error,
                         attempts);
  }

  std::vector<Entity> tag(const SegmentedReport& seg,
                          const NegationDetector& negation = default_negation()) const {
    auto wire = request(seg.report.text(), seg.report.size());
    std::vector<Candidate> cands;
    for (const auto& w : wire) cands.push_back({{w.start, w.end}, config_.labels.at(w.label), {}});
    std::vector<Entity> out;
    for (const auto& c : resolve_overlaps(std::move(cands)))
      out.push_back(make_entity(seg, c.kind, c.span, EntitySource::Remote, negation));
    return out;
  }

  bool healthy() const {
    auto client = make_client();
    auto res = client.Get(prefix_ + "/v1/health");
    if (!res || res->status != 200) return false;
    try {
      auto j = nlohmann::json::parse(res->body);
      return j.value("status", "") == "ok";
    } catch (const nlohmann::json::exception&) {
      return false;
    }
  }

 private:
  httplib::Client make_client() const {
    httplib::Client client(base_);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    return client;
  }

  TaggerConfig config_;
  std::string base_;
  std::string prefix_;
};

inline std::vector<Entity> remote_tag(const SegmentedReport& seg, const TaggerConfig& config,
                                      const NegationDetector& negation = default_negation()) {
  return RemoteTagger(config).tag(seg, negation);
}

/// Mode dispatch between the gazetteer and the remote service.
class EntityTagger {
 public:
  EntityTagger(TaggerConfig config, const std::vector<Lexicon>& lexicons)
      : config_(std::move(config)), gazetteer_(lexicons) {
    config_.validate();
    if (config_.mode != TaggerMode::GazetteerOnly) remote_.emplace(config_);
  }

  const TaggerConfig& config() const noexcept { return config_; }

  std::vector<Entity> tag(const SegmentedReport& seg, const NegationDetector& negation) const {
    switch (config_.mode) {
      case TaggerMode::GazetteerOnly: return gazetteer_.tag(seg, negation);
      case TaggerMode::RemoteOnly: return remote_->tag(seg, negation);
      case TaggerMode::RemotePreferredWithFallback:
        try {
          return remote_->tag(seg, negation);
        } catch (const TransportError& e) {
          log::warn(seg.report.record_id() + ": remote tagger failed, using gazetteer: " + e.what());
        } catch (const ProtocolError& e) {
          log::warn(seg.report.record_id() + ": remote tagger failed, using gazetteer: " + e.what());
        }
        return gazetteer_.tag(seg, negation);
    }
    return {};
  }

 private:
  TaggerConfig config_;
  Gazetteer gazetteer_;
  std::optional<RemoteTagger> remote_;
};

}  // namespace eegscore

#pragma once
// Replays the recorded entity-service responses for the fixture corpus.

#include <map>
#include <memory>
#include <string>

#include "json.hpp"

#include "eegscore/io.hpp"
#include "support/fixtures.hpp"
#include "support/stub_server.hpp"

namespace eegscore::testing {

/// Map from request text to recorded response body.
inline std::map<std::string, std::string> recorded_corpus_responses() {
  std::map<std::string, std::string> out;
  std::istringstream in(read_file(fixture_dir() / "protocol" / "corpus_responses.jsonl"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    auto id = j["record_id"].get<std::string>();
    out[fixture_report(id).text()] = j["response"].dump();
  }
  return out;
}

inline std::unique_ptr<StubServer> recorded_stub() {
  auto responses = std::make_shared<std::map<std::string, std::string>>(recorded_corpus_responses());
  return std::make_unique<StubServer>([responses](const httplib::Request& req, httplib::Response& res) {
    auto text = nlohmann::json::parse(req.body).at("text").get<std::string>();
    auto it = responses->find(text);
    if (it == responses->end()) {
      res.status = 404;
      res.set_content(R"({"error":"no recording"})", "application/json");
      return;
    }
    res.set_content(it->second, "application/json");
  });
}

}  // namespace eegscore::testing

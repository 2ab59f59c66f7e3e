// gagap/manifest.hpp
//
// Copyright 2026 Gagap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAGAP_MANIFEST_HPP
#define GAGAP_MANIFEST_HPP

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gagap/disfluency.hpp"
#include "gagap/errors.hpp"

// Dataset manifest: JSON-lines, one record per line, UTF-8, schema
// versioned. Each record pairs the four content components (original and
// stuttered text and audio) with the split assignment and synthesis
// metadata. nlohmann::json orders keys alphabetically, so serialization is
// byte-stable across runs and worker counts.

namespace gagap {

struct ManifestRecord {
  int schema_version = 1;
  std::string id;
  std::string split;  // train / dev / test
  std::string original_text;
  std::string original_audio;
  std::string stuttered_text;
  std::string stuttered_audio;
  std::vector<DisfluencyEvent> events;  // empty iff strategy == "llm"
  std::string voice;
  double speed = 1.0;
  std::string strategy;  // rule / llm

  bool operator==(const ManifestRecord&) const = default;
};

inline nlohmann::json to_json(const DisfluencyEvent& e) {
  return {{"kind", to_string(e.kind)},
          {"word_index", e.word_index},
          {"original", e.original},
          {"rendered", e.rendered}};
}

inline nlohmann::json to_json(const ManifestRecord& r) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : r.events) events.push_back(to_json(e));
  return {{"schema_version", r.schema_version},
          {"id", r.id},
          {"split", r.split},
          {"original_text", r.original_text},
          {"original_audio", r.original_audio},
          {"stuttered_text", r.stuttered_text},
          {"stuttered_audio", r.stuttered_audio},
          {"events", events},
          {"voice", r.voice},
          {"speed", r.speed},
          {"strategy", r.strategy}};
}

inline std::string to_manifest_line(const ManifestRecord& r) {
  return to_json(r).dump();
}

inline DisfluencyEvent event_from_json(const nlohmann::json& j) {
  DisfluencyEvent e;
  auto kind = kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw SchemaError("manifest: unknown event kind");
  e.kind = *kind;
  e.word_index = j.at("word_index").get<std::size_t>();
  e.original = j.at("original").get<std::string>();
  e.rendered = j.at("rendered").get<std::string>();
  return e;
}

inline ManifestRecord record_from_json(const nlohmann::json& j) {
  ManifestRecord r;
  try {
    r.schema_version = j.at("schema_version").get<int>();
    r.id = j.at("id").get<std::string>();
    r.split = j.at("split").get<std::string>();
    r.original_text = j.at("original_text").get<std::string>();
    r.original_audio = j.at("original_audio").get<std::string>();
    r.stuttered_text = j.at("stuttered_text").get<std::string>();
    r.stuttered_audio = j.at("stuttered_audio").get<std::string>();
    for (const auto& e : j.at("events")) r.events.push_back(event_from_json(e));
    r.voice = j.at("voice").get<std::string>();
    r.speed = j.at("speed").get<double>();
    r.strategy = j.at("strategy").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("manifest record: ") + e.what());
  }
  return r;
}

inline ManifestRecord parse_manifest_line(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) throw SchemaError("manifest: line is not valid JSON");
  return record_from_json(j);
}

// Ids already present in a (possibly absent) manifest file; used to resume.
inline std::set<std::string> read_manifest_ids(const std::string& path) {
  std::set<std::string> ids;
  std::ifstream in(path, std::ios::binary);
  if (!in) return ids;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ids.insert(parse_manifest_line(line).id);
  }
  return ids;
}

}  // namespace gagap

#endif  // GAGAP_MANIFEST_HPP

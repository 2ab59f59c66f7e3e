// gagap/config.hpp
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

#ifndef GAGAP_CONFIG_HPP
#define GAGAP_CONFIG_HPP

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gagap/disfluency.hpp"
#include "gagap/errors.hpp"

// Config file schema (JSON, human-editable; all keys optional unless noted):
//
// {
//   "seed": 42,
//   "corpus_tsv": "data/sample_corpus.tsv",      // required for `build`
//   "out_dir": "dataset",
//   "strategy_mix": 0.5,          // fraction of utterances rewritten by LLM
//   "offline": true,
//   "workers": 1,
//   "augmentation": {
//     "p_disfluency": 0.3,
//     "kind_weights": { "repetition_syllable": 1.0, "repetition_word": 1.0,
//                       "prolongation": 1.0, "interjection_short": 1.0,
//                       "interjection_thinking": 1.0 },
//     "repetition_copies": [1, 3],
//     "prolongation_length": [2, 4],
//     "p_prolongation_onset": 0.5,
//     "short_fillers": ["emm", "hmm", "anu", "eee"],
//     "thinking_fillers": ["apa ya…?", "sebentar…"],
//     "discourse_markers": ["jadi", "terus", "lalu", "kemudian", "nah"]
//   },
//   "synthesis": {
//     "voices": ["ardi", "bima", "citra", "dewi", "eka", "farah"],
//     "tts_endpoint": "",           // e.g. "http://localhost:8080"
//     "rewrite_endpoint": "",
//     "tts_surface": "normalized",  // or "raw"
//     "rewrite_prompt_file": "",    // template with a {{text}} slot
//     "style_prompt_file": "",
//     "retry": { "max_attempts": 3, "initial_backoff_ms": 100,
//                "max_backoff_ms": 2000, "backoff_multiplier": 2.0 },
//     "rate_limit": { "capacity": 10, "refill_per_second": 5 }  // omit to disable
//   },
//   "audio": { "sample_rate": 16000, "window_seconds": 30 },
//   "split": { "train": 0.82, "dev": 0.09, "test": 0.09 }
//     // values summing to <= 1.0 are ratios; larger values are absolute counts
// }
//
// Credentials are never part of the config: the HTTP clients read
// GAGAP_API_KEY from the environment.

namespace gagap {

struct RetryConfig {
  int max_attempts = 3;
  int initial_backoff_ms = 100;
  int max_backoff_ms = 2000;
  double backoff_multiplier = 2.0;
};

struct RateLimitConfig {
  bool enabled = false;
  double capacity = 10.0;
  double refill_per_second = 5.0;
};

struct SynthesisConfig {
  std::vector<std::string> voices{"ardi", "bima", "citra",
                                  "dewi", "eka",  "farah"};
  std::string tts_endpoint;
  std::string rewrite_endpoint;
  std::string tts_surface = "normalized";
  std::string rewrite_prompt_file;
  std::string style_prompt_file;
  RetryConfig retry;
  RateLimitConfig rate_limit;
};

struct AudioConfig {
  int sample_rate = 16000;
  double window_seconds = 30.0;
};

// Targets are ratios when they sum to <= 1 (plus rounding slack), absolute
// utterance counts otherwise.
struct SplitConfig {
  double train = 0.82;
  double dev = 0.09;
  double test = 0.09;
};

struct PipelineConfig {
  std::uint64_t seed = 42;
  std::string corpus_tsv;
  std::string out_dir = "dataset";
  double strategy_mix = 0.5;
  bool offline = true;
  int workers = 1;
  AugmentationConfig augmentation;
  SynthesisConfig synthesis;
  AudioConfig audio;
  SplitConfig split;

  void validate() const {
    augmentation.validate();
    if (!(strategy_mix >= 0.0 && strategy_mix <= 1.0)) {
      throw ConfigError("strategy_mix must be in [0,1]");
    }
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (audio.sample_rate <= 0) throw ConfigError("audio.sample_rate must be positive");
    if (audio.window_seconds <= 0) throw ConfigError("audio.window_seconds must be positive");
    if (synthesis.voices.empty()) throw ConfigError("synthesis.voices must be non-empty");
    if (synthesis.tts_surface != "normalized" && synthesis.tts_surface != "raw") {
      throw ConfigError("synthesis.tts_surface must be \"normalized\" or \"raw\"");
    }
    if (split.train < 0 || split.dev < 0 || split.test < 0) {
      throw ConfigError("split targets must be non-negative");
    }
    if (split.train + split.dev + split.test <= 0) {
      throw ConfigError("split targets must not all be zero");
    }
    if (!offline) {
      if (synthesis.tts_endpoint.empty()) {
        throw ConfigError("online mode requires synthesis.tts_endpoint");
      }
      if (strategy_mix > 0.0 && synthesis.rewrite_endpoint.empty()) {
        throw ConfigError("online mode with strategy_mix > 0 requires synthesis.rewrite_endpoint");
      }
    }
  }
};

namespace config_detail {

using nlohmann::json;

inline ConfigError key_error(const std::string& path, const std::string& what) {
  return ConfigError("config: " + path + ": " + what);
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw key_error(key, e.what());
  }
}

inline void read_range(const json& j, const char* key, IntRange& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer()) {
    throw key_error(key, "expected [min, max]");
  }
  out.min = v[0].get<int>();
  out.max = v[1].get<int>();
}

inline void parse_augmentation(const json& j, AugmentationConfig& out) {
  read(j, "p_disfluency", out.p_disfluency);
  if (j.contains("kind_weights")) {
    const json& w = j.at("kind_weights");
    read(w, "repetition_syllable", out.kind_weights.repetition_syllable);
    read(w, "repetition_word", out.kind_weights.repetition_word);
    read(w, "prolongation", out.kind_weights.prolongation);
    read(w, "interjection_short", out.kind_weights.interjection_short);
    read(w, "interjection_thinking", out.kind_weights.interjection_thinking);
  }
  read_range(j, "repetition_copies", out.repetition_copies);
  read_range(j, "prolongation_length", out.prolongation_length);
  read(j, "p_prolongation_onset", out.p_prolongation_onset);
  read(j, "short_fillers", out.short_fillers);
  read(j, "thinking_fillers", out.thinking_fillers);
  read(j, "discourse_markers", out.discourse_markers);
  read(j, "seed", out.seed);
}

inline void parse_synthesis(const json& j, SynthesisConfig& out) {
  read(j, "voices", out.voices);
  read(j, "tts_endpoint", out.tts_endpoint);
  read(j, "rewrite_endpoint", out.rewrite_endpoint);
  read(j, "tts_surface", out.tts_surface);
  read(j, "rewrite_prompt_file", out.rewrite_prompt_file);
  read(j, "style_prompt_file", out.style_prompt_file);
  if (j.contains("retry")) {
    const json& r = j.at("retry");
    read(r, "max_attempts", out.retry.max_attempts);
    read(r, "initial_backoff_ms", out.retry.initial_backoff_ms);
    read(r, "max_backoff_ms", out.retry.max_backoff_ms);
    read(r, "backoff_multiplier", out.retry.backoff_multiplier);
  }
  if (j.contains("rate_limit")) {
    const json& r = j.at("rate_limit");
    out.rate_limit.enabled = true;
    read(r, "capacity", out.rate_limit.capacity);
    read(r, "refill_per_second", out.rate_limit.refill_per_second);
  }
}

}  // namespace config_detail

inline PipelineConfig parse_pipeline_config(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: invalid JSON");
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  PipelineConfig out;
  using config_detail::read;
  read(j, "seed", out.seed);
  read(j, "corpus_tsv", out.corpus_tsv);
  read(j, "out_dir", out.out_dir);
  read(j, "strategy_mix", out.strategy_mix);
  read(j, "offline", out.offline);
  read(j, "workers", out.workers);
  if (j.contains("augmentation")) {
    config_detail::parse_augmentation(j.at("augmentation"), out.augmentation);
  }
  if (j.contains("synthesis")) {
    config_detail::parse_synthesis(j.at("synthesis"), out.synthesis);
  }
  if (j.contains("audio")) {
    read(j.at("audio"), "sample_rate", out.audio.sample_rate);
    read(j.at("audio"), "window_seconds", out.audio.window_seconds);
  }
  if (j.contains("split")) {
    read(j.at("split"), "train", out.split.train);
    read(j.at("split"), "dev", out.split.dev);
    read(j.at("split"), "test", out.split.test);
  }
  // The augmentation seed follows the global seed unless set explicitly.
  if (!(j.contains("augmentation") && j.at("augmentation").contains("seed"))) {
    out.augmentation.seed = out.seed;
  }
  out.validate();
  return out;
}

inline PipelineConfig load_pipeline_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pipeline_config(ss.str());
}

}  // namespace gagap

#endif  // GAGAP_CONFIG_HPP

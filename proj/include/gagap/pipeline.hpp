// gagap/pipeline.hpp
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

#ifndef GAGAP_PIPELINE_HPP
#define GAGAP_PIPELINE_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gagap/audio.hpp"
#include "gagap/config.hpp"
#include "gagap/disfluency.hpp"
#include "gagap/errors.hpp"
#include "gagap/log.hpp"
#include "gagap/manifest.hpp"
#include "gagap/metrics.hpp"
#include "gagap/normalize.hpp"
#include "gagap/rng.hpp"
#include "gagap/synthesis.hpp"
#include "gagap/wav.hpp"

// End-to-end orchestration: Common Voice ingestion, normalization,
// augmentation (rule or LLM per configured mix), clean + stuttered speech
// synthesis, audio preparation, speaker-stratified splitting, and manifest
// emission.
//
// Determinism: every per-utterance decision is seeded from
// (global seed, utterance id), and manifest records are emitted in corpus
// order regardless of worker count, so an N-worker run is byte-identical to
// a serial run. Per-utterance failures are quarantined to rejects.jsonl;
// the pipeline aborts only on configuration or I/O-level errors.

namespace gagap {

struct Utterance {
  std::string id;
  std::string speaker_id;
  std::string text;        // raw sentence
  std::string audio_path;  // optional source clip path
};

struct IngestStats {
  std::size_t rows = 0;
  std::size_t utterances = 0;
  std::size_t skipped_empty = 0;
  std::size_t skipped_duplicate = 0;
};

// ---------------------------------------------------------------------------
// Common Voice ingestion
// ---------------------------------------------------------------------------

namespace pipeline_detail {

inline std::vector<std::string> split_tsv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  if (!cells.empty() && !cells.back().empty() && cells.back().back() == '\r') {
    cells.back().pop_back();
  }
  return cells;
}

inline std::string path_stem(const std::string& path) {
  std::filesystem::path p(path);
  std::string stem = p.stem().string();
  return stem.empty() ? path : stem;
}

}  // namespace pipeline_detail

// Header-driven TSV parse; column order does not matter. Requires
// client_id, path and sentence columns. Rows with an empty sentence are
// skipped and counted; duplicate ids likewise.
inline std::pair<std::vector<Utterance>, IngestStats> ingest_commonvoice_stream(
    std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw SchemaError("commonvoice: empty file");
  std::vector<std::string> columns = pipeline_detail::split_tsv_row(header);

  const auto find_col = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    return std::nullopt;
  };
  auto client_col = find_col("client_id");
  auto path_col = find_col("path");
  auto sentence_col = find_col("sentence");
  if (!client_col || !path_col || !sentence_col) {
    throw SchemaError(
        "commonvoice: header must contain client_id, path and sentence");
  }

  std::vector<Utterance> out;
  IngestStats stats;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    ++stats.rows;
    std::vector<std::string> cells = pipeline_detail::split_tsv_row(line);
    const auto cell = [&](std::size_t i) -> std::string {
      return i < cells.size() ? cells[i] : std::string();
    };
    Utterance u;
    u.speaker_id = cell(*client_col);
    u.audio_path = cell(*path_col);
    u.text = cell(*sentence_col);
    if (u.text.empty()) {
      ++stats.skipped_empty;
      continue;
    }
    u.id = u.audio_path.empty() ? "row" + std::to_string(row)
                                : pipeline_detail::path_stem(u.audio_path);
    if (!seen_ids.insert(u.id).second) {
      ++stats.skipped_duplicate;
      continue;
    }
    if (u.speaker_id.empty()) u.speaker_id = "unknown";
    out.push_back(std::move(u));
  }
  stats.utterances = out.size();
  return {std::move(out), stats};
}

inline std::pair<std::vector<Utterance>, IngestStats> ingest_commonvoice(
    const std::string& tsv_path) {
  std::ifstream in(tsv_path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus TSV: " + tsv_path);
  return ingest_commonvoice_stream(in);
}

// ---------------------------------------------------------------------------
// Speaker-stratified split
// ---------------------------------------------------------------------------

inline constexpr std::array<const char*, 3> kSplitNames = {"train", "dev", "test"};

struct SplitPlan {
  std::map<std::string, std::string> assignment;  // speaker -> split name
  std::array<std::size_t, 3> target_counts{};
  std::array<std::size_t, 3> achieved_counts{};

  const std::string& split_of(const std::string& speaker) const {
    auto it = assignment.find(speaker);
    if (it == assignment.end()) {
      throw RuntimeError("split plan: unknown speaker " + speaker);
    }
    return it->second;
  }
};

// Resolves ratio-style targets against the corpus size. Counts are taken
// verbatim; ratios are scaled and remainders assigned to the largest
// fractional parts.
inline std::array<std::size_t, 3> resolve_split_targets(const SplitConfig& split,
                                                        std::size_t corpus_size) {
  const std::array<double, 3> raw = {split.train, split.dev, split.test};
  const double sum = raw[0] + raw[1] + raw[2];
  if (sum <= 1.0 + 1e-9) {
    std::array<std::size_t, 3> counts{};
    std::array<double, 3> exact{};
    std::size_t assigned = 0;
    for (int i = 0; i < 3; ++i) {
      exact[i] = raw[i] / sum * static_cast<double>(corpus_size);
      counts[i] = static_cast<std::size_t>(exact[i]);
      assigned += counts[i];
    }
    // distribute the rounding remainder by largest fractional part
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double fa = exact[a] - static_cast<double>(counts[a]);
      double fb = exact[b] - static_cast<double>(counts[b]);
      if (fa != fb) return fa > fb;
      return a < b;
    });
    for (int k = 0; assigned < corpus_size; ++k) {
      counts[static_cast<std::size_t>(order[static_cast<std::size_t>(k % 3)])]++;
      ++assigned;
    }
    return counts;
  }
  std::array<std::size_t, 3> counts = {static_cast<std::size_t>(raw[0]),
                                       static_cast<std::size_t>(raw[1]),
                                       static_cast<std::size_t>(raw[2])};
  if (counts[0] + counts[1] + counts[2] > corpus_size) {
    throw ValidationError("split targets exceed corpus size");
  }
  return counts;
}

// Greedy speaker assignment, largest speaker first (ties broken by a seeded
// hash), each to the split with the largest remaining deficit. Speakers
// never straddle splits; deterministic given the seed.
inline SplitPlan stratified_split(const std::vector<Utterance>& utterances,
                                  std::array<std::size_t, 3> target_counts,
                                  std::uint64_t seed) {
  std::map<std::string, std::size_t> speaker_sizes;
  for (const auto& u : utterances) ++speaker_sizes[u.speaker_id];
  if (speaker_sizes.size() < 3) {
    throw InsufficientSpeakersError(
        "stratified_split: need at least 3 speakers, have " +
        std::to_string(speaker_sizes.size()));
  }
  const std::size_t total = utterances.size();
  if (target_counts[0] + target_counts[1] + target_counts[2] > total) {
    throw ValidationError("stratified_split: targets exceed corpus size");
  }

  struct SpeakerInfo {
    std::string id;
    std::size_t size;
    std::uint64_t tiebreak;
  };
  std::vector<SpeakerInfo> speakers;
  speakers.reserve(speaker_sizes.size());
  for (const auto& [id, size] : speaker_sizes) {
    speakers.push_back({id, size, rng::derive_seed(seed, id)});
  }
  std::sort(speakers.begin(), speakers.end(), [](const auto& a, const auto& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.tiebreak < b.tiebreak;
  });

  SplitPlan plan;
  plan.target_counts = target_counts;
  std::array<long long, 3> deficit;
  for (int i = 0; i < 3; ++i) {
    deficit[static_cast<std::size_t>(i)] =
        static_cast<long long>(target_counts[static_cast<std::size_t>(i)]);
  }
  for (const auto& s : speakers) {
    int best = 0;
    for (int i = 1; i < 3; ++i) {
      if (deficit[static_cast<std::size_t>(i)] > deficit[static_cast<std::size_t>(best)]) best = i;
    }
    plan.assignment[s.id] = kSplitNames[static_cast<std::size_t>(best)];
    deficit[static_cast<std::size_t>(best)] -= static_cast<long long>(s.size);
    plan.achieved_counts[static_cast<std::size_t>(best)] += s.size;
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Pipeline run
// ---------------------------------------------------------------------------

struct RejectRecord {
  std::string id;
  std::string stage;
  std::string error;
};

struct RunReport {
  IngestStats ingest;
  std::size_t planned = 0;
  std::size_t resumed = 0;
  std::size_t completed = 0;
  std::size_t rejected = 0;
  std::array<std::size_t, 3> split_targets{};
  std::array<std::size_t, 3> split_achieved{};

  nlohmann::json to_json() const {
    return {{"ingested_rows", ingest.rows},
            {"utterances", ingest.utterances},
            {"skipped_empty_sentence", ingest.skipped_empty},
            {"skipped_duplicate_id", ingest.skipped_duplicate},
            {"planned", planned},
            {"resumed", resumed},
            {"completed", completed},
            {"rejected", rejected},
            {"split_targets",
             {{"train", split_targets[0]}, {"dev", split_targets[1]}, {"test", split_targets[2]}}},
            {"split_achieved",
             {{"train", split_achieved[0]}, {"dev", split_achieved[1]}, {"test", split_achieved[2]}}}};
  }
};

// Clients used by a pipeline run. Offline runs construct the mocks; online
// runs are handed pre-built HTTP clients by the caller so the socket stack
// stays out of the core.
struct PipelineClients {
  std::unique_ptr<TtsClient> tts;
  std::unique_ptr<RewriteClient> rewrite;
};

namespace pipeline_detail {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RetryPolicy to_policy(const RetryConfig& c) {
  RetryPolicy p;
  p.max_attempts = c.max_attempts;
  p.initial_backoff = std::chrono::milliseconds(c.initial_backoff_ms);
  p.max_backoff = std::chrono::milliseconds(c.max_backoff_ms);
  p.backoff_multiplier = c.backoff_multiplier;
  return p;
}

// One utterance through the whole chain. Pure given (config, utterance,
// plan) apart from the WAV files it writes, whose bytes are themselves
// deterministic.
inline ManifestRecord process_utterance(
    const PipelineConfig& config, const Utterance& utterance,
    const std::string& split_name, PipelineClients& clients,
    const std::string& rewrite_prompt, const std::string& style_prompt,
    std::string* stage) {
  namespace fs = std::filesystem;
  const std::uint64_t useed = rng::derive_seed(config.seed, utterance.id);

  *stage = "normalize";
  const std::string norm = normalize_text(utterance.text);
  if (norm.empty()) {
    throw ValidationError("sentence normalizes to nothing");
  }

  *stage = "augment";
  rng::Engine strategy_eng = rng::make_engine(rng::derive_seed(useed, "strategy"));
  const bool use_llm = rng::bernoulli(strategy_eng, config.strategy_mix);

  std::string stuttered_text;
  std::string tts_stutter_surface;
  std::vector<DisfluencyEvent> events;
  if (use_llm) {
    RewriteRequest req;
    req.text = norm;
    req.instruction_prompt = rewrite_prompt;
    stuttered_text = rewrite_stutter(req, *clients.rewrite,
                                     to_policy(config.synthesis.retry));
    tts_stutter_surface = stuttered_text;
  } else {
    AugmentationConfig aug = config.augmentation;
    aug.seed = rng::derive_seed(useed, "augment");
    StutteredSentence st = inject(norm, aug);
    stuttered_text = st.text;
    events = std::move(st.events);
    tts_stutter_surface = config.synthesis.tts_surface == "raw"
                              ? render_raw_surface({stuttered_text, events, norm}, aug)
                              : stuttered_text;
  }

  *stage = "sample";
  rng::Engine voice_eng = rng::make_engine(rng::derive_seed(useed, "voice"));
  auto [voice, speed] = sample_voice_and_speed(voice_eng, config.synthesis.voices);

  // Both the clean and the stuttered text are synthesized, with the same
  // (voice, speed) so the pair stays directly comparable.
  *stage = "synthesize_clean";
  SynthesisResult clean = synthesize({norm, voice, speed, ""}, *clients.tts,
                                     to_policy(config.synthesis.retry));
  *stage = "synthesize_stuttered";
  SynthesisResult stuttered = synthesize(
      {tts_stutter_surface, voice, speed, style_prompt}, *clients.tts,
      to_policy(config.synthesis.retry));

  *stage = "audio_prep";
  const auto prep = [&](const std::string& wav_bytes) {
    AudioBuffer buf = wav::read_wav(wav_bytes);
    buf = resample(buf, config.audio.sample_rate);
    return pad_to_window(buf, config.audio.window_seconds);
  };
  AudioBuffer clean_buf = prep(clean.wav_bytes);
  AudioBuffer stuttered_buf = prep(stuttered.wav_bytes);

  *stage = "write_audio";
  // Manifest paths are relative to the dataset directory so the dataset is
  // relocatable and manifests compare bit-for-bit across runs.
  const fs::path clean_rel = fs::path("clean") / (utterance.id + ".wav");
  const fs::path stuttered_rel = fs::path("stuttered") / (utterance.id + ".wav");
  const fs::path out_dir(config.out_dir);
  const auto write_file = [](const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path.string());
  };
  write_file(out_dir / clean_rel, wav::write_wav(clean_buf));
  write_file(out_dir / stuttered_rel, wav::write_wav(stuttered_buf));

  ManifestRecord record;
  record.id = utterance.id;
  record.split = split_name;
  record.original_text = norm;
  record.original_audio = clean_rel.generic_string();
  record.stuttered_text = stuttered_text;
  record.stuttered_audio = stuttered_rel.generic_string();
  record.events = std::move(events);
  record.voice = voice;
  record.speed = speed;
  record.strategy = use_llm ? "llm" : "rule";
  return record;
}

}  // namespace pipeline_detail

inline RunReport run_pipeline(const PipelineConfig& config,
                              PipelineClients clients = {}) {
  namespace fs = std::filesystem;
  config.validate();
  if (config.corpus_tsv.empty()) throw ConfigError("build requires corpus_tsv");

  RunReport report;
  auto [utterances, ingest_stats] = ingest_commonvoice(config.corpus_tsv);
  report.ingest = ingest_stats;
  if (utterances.empty()) throw ValidationError("corpus has no usable utterances");

  const auto targets = resolve_split_targets(config.split, utterances.size());
  SplitPlan plan = stratified_split(utterances, targets, config.seed);
  report.split_targets = plan.target_counts;
  report.split_achieved = plan.achieved_counts;

  fs::create_directories(fs::path(config.out_dir) / "clean");
  fs::create_directories(fs::path(config.out_dir) / "stuttered");
  const std::string manifest_path =
      (fs::path(config.out_dir) / "manifest.jsonl").string();
  const std::string rejects_path =
      (fs::path(config.out_dir) / "rejects.jsonl").string();
  const std::string report_path =
      (fs::path(config.out_dir) / "report.json").string();

  const std::set<std::string> done = read_manifest_ids(manifest_path);

  if (!clients.tts) {
    if (!config.offline) {
      throw ConfigError("run_pipeline: online mode requires injected clients");
    }
    clients.tts = std::make_unique<MockTtsClient>(config.seed);
  }
  if (!clients.rewrite) {
    if (!config.offline && config.strategy_mix > 0.0) {
      throw ConfigError("run_pipeline: online mode requires injected clients");
    }
    clients.rewrite =
        std::make_unique<MockRewriteClient>(config.seed, config.augmentation);
  }

  std::string rewrite_prompt =
      config.synthesis.rewrite_prompt_file.empty()
          ? std::string("Tulis ulang kalimat berikut seolah diucapkan oleh "
                        "penutur yang gagap, tanpa mengubah makna: {{text}}")
          : pipeline_detail::read_text_file(config.synthesis.rewrite_prompt_file);
  std::string style_prompt =
      config.synthesis.style_prompt_file.empty()
          ? std::string("Bacakan teks apa adanya, termasuk pengulangan dan "
                        "perpanjangan bunyi, seperti penutur yang gagap.")
          : pipeline_detail::read_text_file(config.synthesis.style_prompt_file);

  report.planned = utterances.size();

  // Ordered emission: workers claim indices, the writer flushes results in
  // corpus order so the manifest is byte-identical for any worker count.
  struct Slot {
    bool skipped = false;
    std::optional<ManifestRecord> record;
    std::optional<RejectRecord> reject;
  };
  std::map<std::size_t, Slot> results;
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next_index{0};

  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next_index.fetch_add(1);
      if (i >= utterances.size()) return;
      const Utterance& u = utterances[i];
      Slot slot;
      if (done.count(u.id)) {
        slot.skipped = true;
      } else {
        std::string stage = "start";
        try {
          slot.record = pipeline_detail::process_utterance(
              config, u, plan.split_of(u.speaker_id), clients, rewrite_prompt,
              style_prompt, &stage);
        } catch (const std::exception& e) {
          slot.reject = RejectRecord{u.id, stage, e.what()};
        }
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        results.emplace(i, std::move(slot));
      }
      cv.notify_one();
    }
  };

  std::ofstream manifest(manifest_path, std::ios::binary | std::ios::app);
  if (!manifest) throw IoError("cannot open " + manifest_path);
  std::ofstream rejects(rejects_path, std::ios::binary | std::ios::app);
  if (!rejects) throw IoError("cannot open " + rejects_path);

  const int worker_count =
      std::max(1, std::min<int>(config.workers,
                                static_cast<int>(utterances.size())));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(worker_count));
  for (int t = 0; t < worker_count; ++t) threads.emplace_back(worker);

  for (std::size_t want = 0; want < utterances.size(); ++want) {
    Slot slot;
    {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return results.count(want) > 0; });
      slot = std::move(results.at(want));
      results.erase(want);
    }
    if (slot.skipped) {
      ++report.resumed;
    } else if (slot.record) {
      manifest << to_manifest_line(*slot.record) << "\n";
      manifest.flush();
      ++report.completed;
    } else if (slot.reject) {
      nlohmann::json j = {{"id", slot.reject->id},
                          {"stage", slot.reject->stage},
                          {"error", slot.reject->error}};
      rejects << j.dump() << "\n";
      rejects.flush();
      ++report.rejected;
      log::warn("rejected " + slot.reject->id + " at " + slot.reject->stage +
                ": " + slot.reject->error);
    }
  }
  for (auto& t : threads) t.join();

  std::ofstream report_file(report_path, std::ios::binary | std::ios::trunc);
  report_file << report.to_json().dump(2) << "\n";
  return report;
}

}  // namespace gagap

#endif  // GAGAP_PIPELINE_HPP

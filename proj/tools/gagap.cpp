// tools/gagap.cpp
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

// gagap -- Indonesian stuttered-speech dataset toolchain.
//
// One binary, one subcommand per stage; stages compose over JSON-lines on
// stdin/stdout. stdout carries only data; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 validation error (bad flags, config, input
// schema), 2 runtime error, 3 partial success (some items quarantined).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gagap/config.hpp"
#include "gagap/disfluency.hpp"
#include "gagap/errors.hpp"
#include "gagap/http_client.hpp"
#include "gagap/log.hpp"
#include "gagap/manifest.hpp"
#include "gagap/metrics.hpp"
#include "gagap/normalize.hpp"
#include "gagap/pipeline.hpp"
#include "gagap/synthesis.hpp"
#include "gagap/wav.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitPartial = 3;

struct GlobalOptions {
  std::uint64_t seed = 42;
  bool seed_set = false;
  std::string config_path;
  bool offline = false;
  int workers = 0;  // 0 = take from config
  std::string log_level = "info";
};

// Loads the config file (when given) and layers CLI overrides on top.
gagap::PipelineConfig effective_config(const GlobalOptions& global) {
  gagap::PipelineConfig config;
  if (!global.config_path.empty()) {
    config = gagap::load_pipeline_config(global.config_path);
  }
  if (global.seed_set) {
    config.seed = global.seed;
    config.augmentation.seed = global.seed;
  }
  if (global.offline) config.offline = true;
  if (global.workers > 0) config.workers = global.workers;
  return config;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  std::string line;
  if (path.empty() || path == "-") {
    while (std::getline(std::cin, line)) lines.push_back(line);
    return lines;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gagap::IoError("cannot open " + path);
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gagap::IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw gagap::IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw gagap::IoError("short write to " + path.string());
}

json rate_json(const auto& totals) {
  json j = {{"substitutions", totals.substitutions},
            {"deletions", totals.deletions},
            {"insertions", totals.insertions},
            {"ref_count", totals.ref_count}};
  if (totals.ref_count == 0 && totals.errors() > 0) {
    j["rate"] = nullptr;
    j["rate_str"] = "undefined";
  } else {
    auto r = totals.rate();
    j["rate"] = r.value();
    j["rate_str"] = r.to_string();
  }
  return j;
}

// --- subcommand bodies -----------------------------------------------------

int cmd_normalize(const std::string& in_path) {
  for (const std::string& line : read_lines(in_path)) {
    std::cout << gagap::normalize_text(line) << "\n";
  }
  return kExitOk;
}

int cmd_augment(const GlobalOptions& global, const std::string& in_path,
                std::optional<double> p_override) {
  gagap::PipelineConfig config = effective_config(global);
  gagap::AugmentationConfig aug = config.augmentation;
  if (p_override) aug.p_disfluency = *p_override;
  aug.validate();

  std::size_t line_no = 0;
  std::size_t skipped = 0;
  for (const std::string& raw : read_lines(in_path)) {
    ++line_no;
    std::string norm = gagap::normalize_text(raw);
    if (norm.empty()) {
      gagap::log::warn("line " + std::to_string(line_no) +
                       " normalizes to nothing; skipped");
      ++skipped;
      continue;
    }
    gagap::AugmentationConfig per_line = aug;
    per_line.seed =
        gagap::rng::derive_seed(config.seed, "line:" + std::to_string(line_no));
    gagap::StutteredSentence st = gagap::inject(norm, per_line);
    json events = json::array();
    for (const auto& e : st.events) events.push_back(gagap::to_json(e));
    json record = {{"line", line_no},
                   {"source", st.source},
                   {"text", st.text},
                   {"events", events}};
    std::cout << record.dump() << "\n";
  }
  return skipped > 0 ? kExitPartial : kExitOk;
}

int cmd_synthesize(const GlobalOptions& global, const std::string& in_path,
                   const std::string& out_dir) {
  gagap::PipelineConfig config = effective_config(global);

  std::unique_ptr<gagap::TtsClient> client;
  if (config.offline || config.synthesis.tts_endpoint.empty()) {
    if (!config.offline) {
      throw gagap::ConfigError("synthesize: set synthesis.tts_endpoint or pass --offline");
    }
    client = std::make_unique<gagap::MockTtsClient>(config.seed);
  } else {
    std::shared_ptr<gagap::TokenBucket> limiter;
    if (config.synthesis.rate_limit.enabled) {
      limiter = std::make_shared<gagap::TokenBucket>(
          config.synthesis.rate_limit.capacity,
          config.synthesis.rate_limit.refill_per_second);
    }
    client = std::make_unique<gagap::http::HttpTtsClient>(
        gagap::http::make_httplib_transport(config.synthesis.tts_endpoint),
        limiter);
  }

  fs::create_directories(out_dir);
  std::string style_prompt;
  if (!config.synthesis.style_prompt_file.empty()) {
    style_prompt = read_file(config.synthesis.style_prompt_file);
  }

  gagap::RetryPolicy policy;
  policy.max_attempts = config.synthesis.retry.max_attempts;
  policy.initial_backoff =
      std::chrono::milliseconds(config.synthesis.retry.initial_backoff_ms);
  policy.max_backoff =
      std::chrono::milliseconds(config.synthesis.retry.max_backoff_ms);
  policy.backoff_multiplier = config.synthesis.retry.backoff_multiplier;

  std::size_t line_no = 0;
  std::size_t failures = 0;
  for (const std::string& raw : read_lines(in_path)) {
    ++line_no;
    if (raw.empty()) continue;
    std::string id, text;
    if (raw.front() == '{') {
      json j = json::parse(raw, nullptr, false);
      if (j.is_discarded() || !j.contains("text")) {
        throw gagap::SchemaError("synthesize: line " + std::to_string(line_no) +
                                 " is neither plain text nor {\"text\": ...}");
      }
      text = j.at("text").get<std::string>();
      id = j.value("id", "");
    } else {
      text = raw;
    }
    if (id.empty()) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "utt%06zu", line_no);
      id = buf;
    }
    // ids become file names; keep them to a safe character set
    for (char& c : id) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
      if (!ok) c = '_';
    }
    try {
      gagap::rng::Engine eng =
          gagap::rng::make_engine(gagap::rng::derive_seed(config.seed, "synth:" + id));
      auto [voice, speed] =
          gagap::sample_voice_and_speed(eng, config.synthesis.voices);
      gagap::SynthesisResult result = gagap::synthesize(
          {text, voice, speed, style_prompt}, *client, policy);
      fs::path wav_path = fs::path(out_dir) / (id + ".wav");
      write_file(wav_path, result.wav_bytes);
      json meta = {{"id", id},
                   {"path", wav_path.generic_string()},
                   {"voice", result.voice},
                   {"speed", result.speed},
                   {"duration_seconds", result.duration_seconds}};
      std::cout << meta.dump() << "\n";
    } catch (const gagap::Error& e) {
      gagap::log::error("synthesize " + id + ": " + e.what());
      ++failures;
    }
  }
  return failures > 0 ? kExitPartial : kExitOk;
}

int cmd_prep_audio(const std::string& in_dir, const std::string& out_dir,
                   int rate, double window) {
  if (!fs::is_directory(in_dir)) {
    throw gagap::ValidationError("prep-audio: not a directory: " + in_dir);
  }
  fs::create_directories(out_dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::size_t failures = 0;
  for (const fs::path& file : files) {
    try {
      gagap::AudioBuffer buf = gagap::wav::read_wav(read_file(file.string()));
      const int in_rate = buf.sample_rate;
      buf = gagap::resample(buf, rate);
      bool truncated = false;
      buf = gagap::pad_to_window(buf, window, &truncated);
      fs::path out_path = fs::path(out_dir) / file.filename();
      write_file(out_path, gagap::wav::write_wav(buf));
      json meta = {{"file", out_path.generic_string()},
                   {"source_rate", in_rate},
                   {"sample_rate", rate},
                   {"samples", buf.samples.size()},
                   {"truncated", truncated}};
      std::cout << meta.dump() << "\n";
    } catch (const gagap::Error& e) {
      gagap::log::error("prep-audio " + file.string() + ": " + e.what());
      ++failures;
    }
  }
  return failures > 0 ? kExitPartial : kExitOk;
}

int cmd_split(const GlobalOptions& global, const std::string& tsv,
              std::optional<double> train, std::optional<double> dev,
              std::optional<double> test) {
  gagap::PipelineConfig config = effective_config(global);
  if (train) config.split.train = *train;
  if (dev) config.split.dev = *dev;
  if (test) config.split.test = *test;

  auto [utterances, stats] = gagap::ingest_commonvoice(tsv);
  auto targets = gagap::resolve_split_targets(config.split, utterances.size());
  gagap::SplitPlan plan = gagap::stratified_split(utterances, targets, config.seed);

  json assignment = json::object();
  for (const auto& [speaker, split] : plan.assignment) assignment[speaker] = split;
  json out = {{"utterances", utterances.size()},
              {"targets",
               {{"train", plan.target_counts[0]},
                {"dev", plan.target_counts[1]},
                {"test", plan.target_counts[2]}}},
              {"achieved",
               {{"train", plan.achieved_counts[0]},
                {"dev", plan.achieved_counts[1]},
                {"test", plan.achieved_counts[2]}}},
              {"assignment", assignment}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_build(const GlobalOptions& global, const std::string& tsv,
              const std::string& out_dir) {
  gagap::PipelineConfig config = effective_config(global);
  if (!tsv.empty()) config.corpus_tsv = tsv;
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (config.corpus_tsv.empty()) {
    throw gagap::ConfigError("build: give --tsv or corpus_tsv in the config");
  }

  gagap::PipelineClients clients;
  if (!config.offline) {
    std::shared_ptr<gagap::TokenBucket> limiter;
    if (config.synthesis.rate_limit.enabled) {
      limiter = std::make_shared<gagap::TokenBucket>(
          config.synthesis.rate_limit.capacity,
          config.synthesis.rate_limit.refill_per_second);
    }
    clients.tts = std::make_unique<gagap::http::HttpTtsClient>(
        gagap::http::make_httplib_transport(config.synthesis.tts_endpoint),
        limiter);
    if (!config.synthesis.rewrite_endpoint.empty()) {
      clients.rewrite = std::make_unique<gagap::http::HttpRewriteClient>(
          gagap::http::make_httplib_transport(config.synthesis.rewrite_endpoint));
    }
  }

  gagap::RunReport report = gagap::run_pipeline(config, std::move(clients));
  std::cout << report.to_json().dump(2) << "\n";
  return report.rejected > 0 ? kExitPartial : kExitOk;
}

int cmd_score(const std::string& ref_path, const std::string& hyp_path,
              bool per_utt, const std::string& diff_mode) {
  std::vector<std::string> refs = read_lines(ref_path);
  std::vector<std::string> hyps = read_lines(hyp_path);
  if (refs.size() != hyps.size()) {
    throw gagap::ValidationError(
        "score: ref has " + std::to_string(refs.size()) + " lines, hyp has " +
        std::to_string(hyps.size()));
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    pairs.emplace_back(gagap::normalize_text(refs[i]),
                       gagap::normalize_text(hyps[i]));
  }
  gagap::CorpusScore score = gagap::score_corpus(pairs);

  const bool want_diff = !diff_mode.empty();
  const gagap::DiffMode mode = diff_mode == "markup" ? gagap::DiffMode::kMarkup
                                                     : gagap::DiffMode::kPlain;
  if (per_utt || want_diff) {
    for (std::size_t i = 0; i < score.per_utterance.size(); ++i) {
      const auto& [w, c] = score.per_utterance[i];
      json record = {{"type", "utterance"},
                     {"index", i},
                     {"wer", rate_json(w)},
                     {"cer", rate_json(c)}};
      if (want_diff) record["diff"] = gagap::render_diff(w, mode);
      std::cout << record.dump() << "\n";
    }
  }
  json summary = {{"type", "summary"},
                  {"utterances", pairs.size()},
                  {"wer", rate_json(score.wer)},
                  {"cer", rate_json(score.cer)}};
  std::cout << summary.dump() << "\n";
  return kExitOk;
}

int cmd_diff(const std::string& ref_path, const std::string& hyp_path,
             const std::string& mode_name, bool use_cer) {
  std::vector<std::string> refs = read_lines(ref_path);
  std::vector<std::string> hyps = read_lines(hyp_path);
  if (refs.size() != hyps.size()) {
    throw gagap::ValidationError("diff: line counts differ");
  }
  const gagap::DiffMode mode = mode_name == "markup" ? gagap::DiffMode::kMarkup
                                                     : gagap::DiffMode::kPlain;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    std::string ref = gagap::normalize_text(refs[i]);
    std::string hyp = gagap::normalize_text(hyps[i]);
    gagap::AlignmentReport report =
        use_cer ? gagap::cer(ref, hyp) : gagap::wer(ref, hyp);
    std::cout << gagap::render_diff(report, mode) << "\n\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gagap: Indonesian stuttered-speech dataset toolchain"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Global random seed")
      ->each([&](const std::string&) { global.seed_set = true; });
  app.add_option("--config", global.config_path, "JSON config file");
  app.add_flag("--offline", global.offline,
               "Never touch the network; use deterministic mocks");
  app.add_option("--workers", global.workers, "Pipeline worker threads");
  app.add_option("--log-level", global.log_level,
                 "trace|debug|info|warn|error|off");

  // normalize
  auto* normalize = app.add_subcommand(
      "normalize", "Normalize text (stdin -> stdout, one sentence per line)");
  std::string normalize_in;
  normalize->add_option("--in", normalize_in, "Input file (default stdin)");

  // augment
  auto* augment = app.add_subcommand(
      "augment", "Inject disfluencies; emits JSON-lines with provenance");
  std::string augment_in;
  double augment_p = -1.0;
  augment->add_option("--in", augment_in, "Input file (default stdin)");
  auto* p_opt = augment->add_option("--p", augment_p,
                                    "Override per-word disfluency probability");

  // synthesize
  auto* synthesize = app.add_subcommand(
      "synthesize", "Text to speech; writes WAVs and emits metadata JSON-lines");
  std::string synth_in, synth_out;
  synthesize->add_option("--in", synth_in,
                         "Input file of sentences or {\"id\",\"text\"} JSON lines");
  synthesize->add_option("--out-dir", synth_out, "Directory for WAV files")
      ->required();

  // prep-audio
  auto* prep = app.add_subcommand("prep-audio",
                                  "Resample WAVs and pad to a fixed window");
  std::string prep_in, prep_out;
  int prep_rate = 16000;
  double prep_window = 30.0;
  prep->add_option("--in", prep_in, "Input directory of WAV files")->required();
  prep->add_option("--out", prep_out, "Output directory")->required();
  prep->add_option("--rate", prep_rate, "Target sample rate (Hz)");
  prep->add_option("--window", prep_window, "Window length (seconds)");

  // split
  auto* split = app.add_subcommand(
      "split", "Speaker-stratified split plan for a Common Voice TSV");
  std::string split_tsv;
  double split_train = -1, split_dev = -1, split_test = -1;
  split->add_option("--tsv", split_tsv, "Common Voice TSV")->required();
  auto* train_opt = split->add_option("--train", split_train, "Target count or ratio");
  auto* dev_opt = split->add_option("--dev", split_dev, "Target count or ratio");
  auto* test_opt = split->add_option("--test", split_test, "Target count or ratio");

  // build
  auto* build = app.add_subcommand(
      "build", "Run the full corpus-to-dataset pipeline");
  std::string build_tsv, build_out;
  build->add_option("--tsv", build_tsv, "Common Voice TSV (overrides config)");
  build->add_option("--out", build_out, "Dataset directory (overrides config)");

  // score
  auto* score = app.add_subcommand("score", "WER/CER between two line-aligned files");
  std::string score_ref, score_hyp, score_diff;
  bool score_per_utt = false;
  score->add_option("--ref", score_ref, "Reference file")->required();
  score->add_option("--hyp", score_hyp, "Hypothesis file")->required();
  score->add_flag("--per-utt", score_per_utt, "Emit one record per utterance");
  score->add_option("--diff", score_diff, "Embed diffs: plain|markup")
      ->check(CLI::IsMember({"plain", "markup"}));

  // diff
  auto* diff = app.add_subcommand("diff", "Render highlighted alignment diffs");
  std::string diff_ref, diff_hyp, diff_mode = "plain";
  bool diff_cer = false;
  diff->add_option("--ref", diff_ref, "Reference file")->required();
  diff->add_option("--hyp", diff_hyp, "Hypothesis file")->required();
  diff->add_option("--mode", diff_mode, "plain|markup")
      ->check(CLI::IsMember({"plain", "markup"}));
  diff->add_flag("--cer", diff_cer, "Character-level alignment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints message + usage hint to stderr
    return kExitValidation;
  }

  if (!gagap::log::set_level(global.log_level)) {
    std::cerr << "unknown log level: " << global.log_level << "\n";
    return kExitValidation;
  }

  try {
    if (app.got_subcommand(normalize)) return cmd_normalize(normalize_in);
    if (app.got_subcommand(augment)) {
      return cmd_augment(global, augment_in,
                         p_opt->count() ? std::optional<double>(augment_p)
                                        : std::nullopt);
    }
    if (app.got_subcommand(synthesize)) {
      return cmd_synthesize(global, synth_in, synth_out);
    }
    if (app.got_subcommand(prep)) {
      return cmd_prep_audio(prep_in, prep_out, prep_rate, prep_window);
    }
    if (app.got_subcommand(split)) {
      return cmd_split(global, split_tsv,
                       train_opt->count() ? std::optional<double>(split_train) : std::nullopt,
                       dev_opt->count() ? std::optional<double>(split_dev) : std::nullopt,
                       test_opt->count() ? std::optional<double>(split_test) : std::nullopt);
    }
    if (app.got_subcommand(build)) return cmd_build(global, build_tsv, build_out);
    if (app.got_subcommand(score)) {
      return cmd_score(score_ref, score_hyp, score_per_utt, score_diff);
    }
    if (app.got_subcommand(diff)) {
      return cmd_diff(diff_ref, diff_hyp, diff_mode, diff_cer);
    }
  } catch (const gagap::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;  // unreachable: require_subcommand(1)
}

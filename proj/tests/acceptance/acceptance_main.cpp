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

// Acceptance suite: end-to-end checks of the toolchain's contracts, one
// criterion per check, each printed as a PASS/FAIL line. Run via ctest or
// directly:
//
//   gagap_acceptance --cli path/to/gagap --corpus data/sample_corpus.tsv
//
// Exits 0 only if every criterion passes.

#include <unistd.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gagap/audio.hpp"
#include "gagap/disfluency.hpp"
#include "gagap/manifest.hpp"
#include "gagap/metrics.hpp"
#include "gagap/normalize.hpp"
#include "gagap/pipeline.hpp"
#include "gagap/rng.hpp"
#include "gagap/synthesis.hpp"
#include "gagap/wav.hpp"

#include "../unit/oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct Criterion {
  int number;
  std::string name;
  std::function<bool(std::string&)> run;  // detail goes into the string
};

std::string g_cli_path;
std::string g_corpus_path;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --------------------------------------------------------------------------
// 1. Metric oracle equivalence
// --------------------------------------------------------------------------

// Exhaustive over every pair with |ref| + |hyp| <= 8 (covers all strings of
// length <= 8) plus the full cross product of all strings of length <= 5,
// alphabet {a, b, c, space}. Zero tolerance, budget 60 s.
bool criterion_metric_oracle(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const std::array<char, 4> alphabet = {'a', 'b', 'c', ' '};

  // strings[l] = all strings of length l, as unit vectors for align()
  std::vector<std::vector<std::vector<std::string>>> units_by_len(9);
  std::vector<std::vector<std::vector<char>>> chars_by_len(9);
  units_by_len[0].push_back({});
  chars_by_len[0].push_back({});
  for (std::size_t l = 1; l <= 8; ++l) {
    for (std::size_t i = 0; i < chars_by_len[l - 1].size(); ++i) {
      for (char c : alphabet) {
        auto cs = chars_by_len[l - 1][i];
        cs.push_back(c);
        auto us = units_by_len[l - 1][i];
        us.push_back(std::string(1, c));
        chars_by_len[l].push_back(std::move(cs));
        units_by_len[l].push_back(std::move(us));
      }
    }
  }

  std::size_t pairs = 0;
  const auto check_pair = [&](std::size_t lr, std::size_t ri, std::size_t lh,
                              std::size_t hi) {
    const auto report =
        gagap::align(units_by_len[lr][ri], units_by_len[lh][hi]);
    const std::size_t expected =
        oracles::edit_distance(chars_by_len[lr][ri], chars_by_len[lh][hi]);
    ++pairs;
    return report.errors() == expected;
  };

  for (std::size_t lr = 0; lr <= 8; ++lr) {
    for (std::size_t lh = 0; lh + lr <= 8; ++lh) {
      for (std::size_t ri = 0; ri < units_by_len[lr].size(); ++ri) {
        for (std::size_t hi = 0; hi < units_by_len[lh].size(); ++hi) {
          if (!check_pair(lr, ri, lh, hi)) {
            detail = "mismatch in the |r|+|h|<=8 sweep";
            return false;
          }
        }
      }
    }
  }
  for (std::size_t lr = 0; lr <= 5; ++lr) {
    for (std::size_t lh = 0; lh <= 5; ++lh) {
      for (std::size_t ri = 0; ri < units_by_len[lr].size(); ++ri) {
        for (std::size_t hi = 0; hi < units_by_len[lh].size(); ++hi) {
          if (!check_pair(lr, ri, lh, hi)) {
            detail = "mismatch in the 5x5 cross product";
            return false;
          }
        }
      }
    }
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::ostringstream ss;
  ss << pairs << " pairs, " << seconds << " s";
  detail = ss.str();
  return seconds < 60.0;
}

// --------------------------------------------------------------------------
// 2. Worked WER case with span-grouped diff
// --------------------------------------------------------------------------

bool criterion_worked_case(std::string& detail) {
  const auto r = gagap::wer("terus kenapa", "terus keren apa");
  if (r.substitutions != 1 || r.insertions != 1 || r.deletions != 0 ||
      r.ref_count != 2) {
    detail = "counts S/D/I/N = " + std::to_string(r.substitutions) + "/" +
             std::to_string(r.deletions) + "/" + std::to_string(r.insertions) +
             "/" + std::to_string(r.ref_count);
    return false;
  }
  if (r.rate().value() != 1.0 || r.rate().to_string() != "1.000") {
    detail = "rate " + r.rate().to_string();
    return false;
  }
  const std::string diff = gagap::render_diff(r, gagap::DiffMode::kPlain);
  if (diff.find("[[S:keren apa]]") == std::string::npos) {
    detail = "diff lacks grouped span: " + diff;
    return false;
  }
  detail = "WER 1.000, diff groups \"keren apa\"";
  return true;
}

// --------------------------------------------------------------------------
// Random sentence machinery for criteria 3-5
// --------------------------------------------------------------------------

std::string random_word(gagap::rng::Engine& eng, bool allow_special) {
  static const std::vector<std::string> vocab = {
      "saya",   "mau",    "makan",  "nasi",   "goreng", "tadi",   "pagi",
      "dia",    "pergi",  "pasar",  "kami",   "belajar", "bahasa", "hujan",
      "turun",  "malam",  "aku",    "ingin",  "pulang", "gelap",  "mereka",
      "nyanyi", "akhir",  "acara",  "terus",  "kenapa", "kota",   "provinsi",
      "rasa",   "saling", "hormat", "muncul", "peristiwa", "jadi", "ngarai",
      "mengingat", "bagaimana", "melakukannya", "a", "itu"};
  static const std::vector<std::string> special = {
      "sapi-sapi", "kura-kura", "sst", "hm", "2020", "ber-anak"};
  if (allow_special && gagap::rng::uniform_unit(eng) < 0.15) {
    return special[gagap::rng::uniform_index(eng, special.size())];
  }
  return vocab[gagap::rng::uniform_index(eng, vocab.size())];
}

std::string random_sentence(gagap::rng::Engine& eng, bool allow_special) {
  std::size_t len = 1 + gagap::rng::uniform_index(eng, 10);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) {
    if (i) s += ' ';
    s += random_word(eng, allow_special);
  }
  return s;
}

gagap::AugmentationConfig random_config(gagap::rng::Engine& eng) {
  gagap::AugmentationConfig c;
  c.p_disfluency = gagap::rng::uniform_unit(eng);
  c.kind_weights = {gagap::rng::uniform_unit(eng), gagap::rng::uniform_unit(eng),
                    gagap::rng::uniform_unit(eng), gagap::rng::uniform_unit(eng),
                    gagap::rng::uniform_unit(eng) + 1e-3};
  c.repetition_copies = {1, 1 + static_cast<int>(gagap::rng::uniform_index(eng, 3))};
  c.prolongation_length = {2, 2 + static_cast<int>(gagap::rng::uniform_index(eng, 3))};
  c.seed = eng();
  return c;
}

// --------------------------------------------------------------------------
// 3. Injector round trip
// --------------------------------------------------------------------------

bool criterion_round_trip(std::string& detail) {
  gagap::rng::Engine meta = gagap::rng::make_engine(30303);
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const std::string sentence = random_sentence(meta, true);
    const gagap::AugmentationConfig config = random_config(meta);
    const auto out = gagap::inject(sentence, config);
    if (gagap::destutter(out.text, out.events) != sentence) {
      detail = "round trip failed for \"" + sentence + "\"";
      return false;
    }
  }
  detail = std::to_string(n) + " sentences, 100% inverted";
  return true;
}

// --------------------------------------------------------------------------
// 4. Rate calibration at p = 0.3
// --------------------------------------------------------------------------

bool criterion_rate_calibration(std::string& detail) {
  gagap::rng::Engine meta = gagap::rng::make_engine(40404);
  gagap::AugmentationConfig config;
  config.p_disfluency = 0.3;

  // Hyphenated reduplications never take word events, so the calibration
  // corpus sticks to plain tokens (which are all eligible).
  std::size_t words = 0, events = 0;
  while (words < 20000) {
    const std::string sentence = random_sentence(meta, false);
    config.seed = meta();
    const auto out = gagap::inject(sentence, config);
    words += gagap::split_tokens(sentence).size();
    for (const auto& e : out.events) {
      if (!gagap::is_interjection(e.kind)) ++events;
    }
  }
  const double rate = static_cast<double>(events) / static_cast<double>(words);
  const double se = std::sqrt(0.3 * 0.7 / static_cast<double>(words));
  std::ostringstream ss;
  ss << "rate " << rate << " over " << words << " words (3se = " << 3 * se << ")";
  detail = ss.str();
  return std::abs(rate - 0.3) < 3.0 * se;
}

// --------------------------------------------------------------------------
// 5. Constraint suite
// --------------------------------------------------------------------------

// Recovers the prolonged grapheme by stripping the common prefix and suffix
// between the original token and its rendering.
std::string prolonged_grapheme(const std::string& original,
                               const std::string& rendered) {
  std::size_t prefix = 0;
  while (prefix < original.size() && prefix < rendered.size() &&
         original[prefix] == rendered[prefix]) {
    ++prefix;
  }
  std::size_t suffix = 0;
  while (suffix + prefix < original.size() && suffix + prefix < rendered.size() &&
         original[original.size() - 1 - suffix] ==
             rendered[rendered.size() - 1 - suffix]) {
    ++suffix;
  }
  // rendered middle = g repeated k times; original middle = g (possibly
  // absorbed into the common affixes when g repeats in the word, in which
  // case the middle is still a power of g).
  std::string middle = rendered.substr(prefix, rendered.size() - prefix - suffix);
  for (std::size_t len = 1; len <= 2 && len <= middle.size(); ++len) {
    const std::string g = middle.substr(0, len);
    bool power = middle.size() % len == 0;
    for (std::size_t at = 0; power && at < middle.size(); at += len) {
      if (middle.compare(at, len, g) != 0) power = false;
    }
    if (power) return g;
  }
  return middle;
}

bool criterion_constraints(std::string& detail) {
  static const std::set<std::string> kStops = {"p", "b", "t", "d",
                                               "k", "g", "c", "j"};
  gagap::rng::Engine meta = gagap::rng::make_engine(50505);
  std::size_t interjections = 0, prolongations = 0, repetitions = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string sentence = random_sentence(meta, true);
    const std::size_t tokens = gagap::split_tokens(sentence).size();
    gagap::AugmentationConfig config = random_config(meta);
    const auto out = gagap::inject(sentence, config);
    for (const auto& e : out.events) {
      if (gagap::is_interjection(e.kind)) {
        ++interjections;
        if (e.word_index >= tokens) {
          detail = "interjection at or past the final gap in \"" + sentence + "\"";
          return false;
        }
      } else if (e.kind == gagap::DisfluencyKind::kProlongation) {
        ++prolongations;
        const std::string g = prolonged_grapheme(e.original, e.rendered);
        if (kStops.count(g)) {
          detail = "stop consonant \"" + g + "\" prolonged in \"" + e.original + "\"";
          return false;
        }
      } else {
        ++repetitions;
        if (e.original.find('-') != std::string::npos) {
          detail = "repetition on hyphenated token \"" + e.original + "\"";
          return false;
        }
      }
    }
  }
  std::ostringstream ss;
  ss << repetitions << " repetitions, " << prolongations << " prolongations, "
     << interjections << " interjections, 0 violations";
  detail = ss.str();
  return prolongations > 100 && repetitions > 100 && interjections > 100;
}

// --------------------------------------------------------------------------
// 6. Determinism & parallelism through the CLI
// --------------------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = g_cli_path + " " + args;
  return std::system(cmd.c_str());
}

bool criterion_build_determinism(std::string& detail) {
  if (g_cli_path.empty() || g_corpus_path.empty()) {
    detail = "needs --cli and --corpus";
    return false;
  }
  const fs::path base =
      fs::temp_directory_path() / ("gagap_accept_" + std::to_string(::getpid()));
  fs::remove_all(base);
  fs::create_directories(base);

  const std::string w1 = (base / "w1").string();
  const std::string w8 = (base / "w8").string();
  const std::string log1 = (base / "w1.out").string();
  const std::string log8 = (base / "w8.out").string();
  int rc1 = run_cli("--seed 123 --offline --workers 1 build --tsv " +
                    g_corpus_path + " --out " + w1 + " > " + log1 + " 2>&1");
  int rc8 = run_cli("--seed 123 --offline --workers 8 build --tsv " +
                    g_corpus_path + " --out " + w8 + " > " + log8 + " 2>&1");
  if (rc1 != 0 || rc8 != 0) {
    detail = "build exited " + std::to_string(rc1) + " / " + std::to_string(rc8);
    return false;
  }
  const std::string m1 = slurp(fs::path(w1) / "manifest.jsonl");
  const std::string m8 = slurp(fs::path(w8) / "manifest.jsonl");
  if (m1.empty() || m1 != m8) {
    detail = "manifests differ between --workers 1 and --workers 8";
    return false;
  }
  std::size_t records = 0;
  for (char c : m1) records += c == '\n';
  detail = std::to_string(records) + " records, byte-identical manifests";
  return records == 10;
}

// --------------------------------------------------------------------------
// 7. Audio contract on pipeline outputs + resampler fidelity
// --------------------------------------------------------------------------

bool criterion_audio_contract(std::string& detail) {
  // pipeline outputs from criterion 6
  const fs::path base =
      fs::temp_directory_path() / ("gagap_accept_" + std::to_string(::getpid()));
  std::size_t wavs = 0;
  for (const char* sub : {"clean", "stuttered"}) {
    const fs::path dir = fs::path(base) / "w1" / sub;
    if (!fs::is_directory(dir)) {
      detail = "missing pipeline output dir (criterion 6 must run first)";
      return false;
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
      const auto buf = gagap::wav::read_wav(slurp(entry.path()));
      if (buf.sample_rate != 16000 || buf.samples.size() != 480000) {
        detail = entry.path().string() + " violates 16 kHz / 480000 samples";
        return false;
      }
      ++wavs;
    }
  }
  if (wavs != 20) {
    detail = "expected 20 WAVs, found " + std::to_string(wavs);
    return false;
  }

  // 440 Hz sine, 48 kHz -> 16 kHz: the spectral peak must stay within one
  // 1-Hz DFT bin of 440 over the full spectrum.
  gagap::AudioBuffer sine;
  sine.sample_rate = 48000;
  sine.samples.resize(48000);
  for (std::size_t i = 0; i < sine.samples.size(); ++i) {
    sine.samples[i] = static_cast<float>(
        std::sin(2.0 * M_PI * 440.0 * static_cast<double>(i) / 48000.0));
  }
  const gagap::AudioBuffer out = gagap::resample(sine, 16000);
  double best = 0.0;
  int best_hz = 0;
  for (int hz = 1; hz < 8000; ++hz) {
    const double mag = oracles::dft_magnitude(out.samples, 16000, hz);
    if (mag > best) {
      best = mag;
      best_hz = hz;
    }
  }
  if (std::abs(best_hz - 440) > 1) {
    detail = "spectral peak at " + std::to_string(best_hz) + " Hz";
    return false;
  }
  detail = std::to_string(wavs) + " WAVs at 16 kHz * 30 s; peak at " +
           std::to_string(best_hz) + " Hz";
  return true;
}

// --------------------------------------------------------------------------
// 8. Split integrity at the published profile
// --------------------------------------------------------------------------

bool criterion_split_integrity(std::string& detail) {
  // synthetic corpus: 12,133 utterances across 61 speakers of uneven size
  gagap::rng::Engine eng = gagap::rng::make_engine(80808);
  std::vector<gagap::Utterance> corpus;
  std::size_t speaker_count = 61;
  std::size_t remaining = 12133;
  std::size_t max_speaker = 0;
  for (std::size_t s = 0; s < speaker_count; ++s) {
    std::size_t left_for_rest = speaker_count - s - 1;
    std::size_t size;
    if (left_for_rest == 0) {
      size = remaining;
    } else {
      const std::size_t mean = remaining / (left_for_rest + 1);
      size = 1 + gagap::rng::uniform_index(eng, std::max<std::size_t>(2 * mean, 2));
      size = std::min(size, remaining - left_for_rest);  // leave 1 each
    }
    remaining -= size;
    max_speaker = std::max(max_speaker, size);
    for (std::size_t u = 0; u < size; ++u) {
      gagap::Utterance ut;
      ut.id = "s" + std::to_string(s) + "_" + std::to_string(u);
      ut.speaker_id = "speaker" + std::to_string(s);
      ut.text = "kalimat";
      corpus.push_back(std::move(ut));
    }
  }

  const std::array<std::size_t, 3> targets = {9928, 1102, 1103};
  const gagap::SplitPlan plan = gagap::stratified_split(corpus, targets, 99);

  // speaker-disjointness is structural (one assignment per speaker); verify
  // utterance-level anyway
  std::array<std::set<std::string>, 3> speakers_by_split;
  for (const auto& u : corpus) {
    const std::string& split = plan.split_of(u.speaker_id);
    const std::size_t idx = split == "train" ? 0 : split == "dev" ? 1 : 2;
    speakers_by_split[idx].insert(u.speaker_id);
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      for (const auto& s : speakers_by_split[static_cast<std::size_t>(a)]) {
        if (speakers_by_split[static_cast<std::size_t>(b)].count(s)) {
          detail = "speaker " + s + " straddles splits";
          return false;
        }
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double gap = std::abs(static_cast<double>(plan.achieved_counts[idx]) -
                                static_cast<double>(targets[idx]));
    if (gap > static_cast<double>(max_speaker)) {
      detail = "split " + std::string(gagap::kSplitNames[idx]) + " off by " +
               std::to_string(gap) + " (> max speaker " +
               std::to_string(max_speaker) + ")";
      return false;
    }
  }
  std::ostringstream ss;
  ss << "achieved " << plan.achieved_counts[0] << "/" << plan.achieved_counts[1]
     << "/" << plan.achieved_counts[2] << " vs 9928/1102/1103, max speaker "
     << max_speaker;
  detail = ss.str();
  return true;
}

// --------------------------------------------------------------------------
// 9. Speed sampling bounds and symmetry
// --------------------------------------------------------------------------

bool criterion_speed_sampling(std::string& detail) {
  const std::vector<std::string> voices = {"a", "b", "c"};
  gagap::rng::Engine eng = gagap::rng::make_engine(90909);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const auto [voice, speed] = gagap::sample_voice_and_speed(eng, voices);
    if (speed < 0.75 || speed > 1.25) {
      detail = "speed out of range: " + std::to_string(speed);
      return false;
    }
    sum += speed;
  }
  const double mean = sum / n;
  detail = "10^6 draws in range, mean " + std::to_string(mean);
  return mean >= 0.999 && mean <= 1.001;
}

// --------------------------------------------------------------------------
// 10. Normalization surface form + idempotence
// --------------------------------------------------------------------------

bool criterion_normalization(std::string& detail) {
  if (gagap::normalize_text("TERUS KENAPA?") != "terus kenapa") {
    detail = "canonical surface form broken";
    return false;
  }
  gagap::rng::Engine eng = gagap::rng::make_engine(101010);
  const std::string alphabet = "abzAEIZ  ..,,?;!!--\t99“”…";
  const auto cps = gagap::unicode::to_codepoints(alphabet);
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    const std::size_t len = gagap::rng::uniform_index(eng, 60);
    for (std::size_t k = 0; k < len; ++k) {
      gagap::unicode::append(s, cps[gagap::rng::uniform_index(eng, cps.size())]);
    }
    const std::string once = gagap::normalize_text(s);
    if (gagap::normalize_text(once) != once) {
      detail = "not idempotent on \"" + s + "\"";
      return false;
    }
  }
  detail = "surface form ok, idempotent on 1000 fuzzed sentences";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") g_cli_path = argv[i + 1];
    else if (flag == "--corpus") g_corpus_path = argv[i + 1];
  }

  const std::vector<Criterion> criteria = {
      {1, "metric oracle equivalence", criterion_metric_oracle},
      {2, "worked WER case and diff span", criterion_worked_case},
      {3, "injector round trip", criterion_round_trip},
      {4, "rate calibration at p=0.3", criterion_rate_calibration},
      {5, "constraint suite", criterion_constraints},
      {6, "build determinism across workers", criterion_build_determinism},
      {7, "audio contract", criterion_audio_contract},
      {8, "split integrity", criterion_split_integrity},
      {9, "speed sampling", criterion_speed_sampling},
      {10, "normalization", criterion_normalization},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] %2d/10 %s%s%s\n", ok ? "PASS" : "FAIL", c.number,
                c.name.c_str(), detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
  }
  std::error_code ec;
  fs::remove_all(
      fs::temp_directory_path() / ("gagap_accept_" + std::to_string(::getpid())),
      ec);

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}

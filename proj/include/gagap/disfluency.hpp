// gagap/disfluency.hpp
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

#ifndef GAGAP_DISFLUENCY_HPP
#define GAGAP_DISFLUENCY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gagap/errors.hpp"
#include "gagap/normalize.hpp"
#include "gagap/rng.hpp"
#include "gagap/syllabify.hpp"

// Rule-based disfluency injection: per-word probabilistic stutter events
// (syllable repetition, word repetition, prolongation) plus per-gap filler
// interjections, under linguistic constraints, with complete provenance and
// an exact inverse (destutter).
//
// Probability model:
//   - each word independently carries a stutter event with probability
//     p_disfluency; the event kind is drawn from the three word-kind weights;
//   - each gap BEFORE a token independently receives an interjection with
//     probability p_disfluency * (interjection weight share). Gaps exist only
//     before tokens, so a filler can never land after the final word;
//   - inapplicable kinds fall back: Prolongation -> RepetitionWord,
//     RepetitionSyllable -> RepetitionWord. Tokens that already contain a
//     hyphen (grammatical reduplication such as "sapi-sapi") never receive a
//     word event at all, so synthetic stutters stay distinguishable from
//     valid reduplicated forms.
//
// Everything is deterministic given (sentence, config) including the seed.

namespace gagap {

enum class DisfluencyKind {
  kRepetitionSyllable,
  kRepetitionWord,
  kProlongation,
  kInterjectionShort,
  kInterjectionThinking,
};

inline bool is_interjection(DisfluencyKind kind) {
  return kind == DisfluencyKind::kInterjectionShort ||
         kind == DisfluencyKind::kInterjectionThinking;
}

inline const char* to_string(DisfluencyKind kind) {
  switch (kind) {
    case DisfluencyKind::kRepetitionSyllable: return "repetition_syllable";
    case DisfluencyKind::kRepetitionWord: return "repetition_word";
    case DisfluencyKind::kProlongation: return "prolongation";
    case DisfluencyKind::kInterjectionShort: return "interjection_short";
    case DisfluencyKind::kInterjectionThinking: return "interjection_thinking";
  }
  return "?";
}

inline std::optional<DisfluencyKind> kind_from_string(std::string_view s) {
  if (s == "repetition_syllable") return DisfluencyKind::kRepetitionSyllable;
  if (s == "repetition_word") return DisfluencyKind::kRepetitionWord;
  if (s == "prolongation") return DisfluencyKind::kProlongation;
  if (s == "interjection_short") return DisfluencyKind::kInterjectionShort;
  if (s == "interjection_thinking") return DisfluencyKind::kInterjectionThinking;
  return std::nullopt;
}

struct IntRange {
  int min = 0;
  int max = 0;
  bool operator==(const IntRange&) const = default;
};

struct KindWeights {
  double repetition_syllable = 1.0;
  double repetition_word = 1.0;
  double prolongation = 1.0;
  double interjection_short = 1.0;
  double interjection_thinking = 1.0;
  bool operator==(const KindWeights&) const = default;
};

struct AugmentationConfig {
  double p_disfluency = 0.3;
  KindWeights kind_weights;
  IntRange repetition_copies{1, 3};    // extra renditions before the word
  IntRange prolongation_length{2, 4};  // total copies of the target grapheme
  double p_prolongation_onset = 0.5;   // onset vs final target split
  // Raw surface forms; inject() inserts their normalized form into the text.
  std::vector<std::string> short_fillers{"emm", "hmm", "anu", "eee"};
  std::vector<std::string> thinking_fillers{"apa ya…?", "sebentar…"};
  std::vector<std::string> discourse_markers{"jadi", "terus", "lalu",
                                             "kemudian", "nah"};
  std::uint64_t seed = 42;

  void validate() const {
    if (!(p_disfluency >= 0.0 && p_disfluency <= 1.0)) {
      throw ConfigError("p_disfluency must be in [0,1]");
    }
    const std::array<double, 5> w = {
        kind_weights.repetition_syllable, kind_weights.repetition_word,
        kind_weights.prolongation, kind_weights.interjection_short,
        kind_weights.interjection_thinking};
    double total = 0.0;
    for (double x : w) {
      if (x < 0.0) throw ConfigError("kind weights must be non-negative");
      total += x;
    }
    if (!(total > 0.0)) throw ConfigError("at least one kind weight must be > 0");
    if (repetition_copies.min < 1 || repetition_copies.min > repetition_copies.max) {
      throw ConfigError("repetition_copies must satisfy 1 <= min <= max");
    }
    if (prolongation_length.min < 2 ||
        prolongation_length.min > prolongation_length.max) {
      throw ConfigError("prolongation_length must satisfy 2 <= min <= max");
    }
    if (!(p_prolongation_onset >= 0.0 && p_prolongation_onset <= 1.0)) {
      throw ConfigError("p_prolongation_onset must be in [0,1]");
    }
    if (short_fillers.empty()) throw ConfigError("short_fillers must be non-empty");
    if (thinking_fillers.empty()) throw ConfigError("thinking_fillers must be non-empty");
    for (const auto& f : short_fillers) {
      if (normalize_text(f).empty()) throw ConfigError("short filler normalizes to nothing: \"" + f + "\"");
    }
    for (const auto& f : thinking_fillers) {
      if (normalize_text(f).empty()) throw ConfigError("thinking filler normalizes to nothing: \"" + f + "\"");
    }
  }
};

struct DisfluencyEvent {
  DisfluencyKind kind = DisfluencyKind::kRepetitionWord;
  // Index into the ORIGINAL token sequence. For interjections this is the
  // gap index: the filler was inserted immediately before this token.
  std::size_t word_index = 0;
  std::string original;  // source token; empty for interjections
  std::string rendered;  // surface string placed into the output
  bool operator==(const DisfluencyEvent&) const = default;
};

struct StutteredSentence {
  std::string text;
  std::vector<DisfluencyEvent> events;
  std::string source;
};

// ---------------------------------------------------------------------------
// Rendering primitives
// ---------------------------------------------------------------------------

// "saya", 2 -> "sa-sa-saya". Hyphen-joined so the stutter is visually and
// tokenwise distinct from a word repetition.
inline std::string apply_repetition_syllable(std::string_view word, int copies) {
  if (copies < 1) throw ConfigError("apply_repetition_syllable: copies must be >= 1");
  std::string syl = initial_syllable(word).text();
  std::string out;
  for (int i = 0; i < copies; ++i) {
    out += syl;
    out.push_back('-');
  }
  out += word;
  return out;
}

// "mau", 2 -> "mau mau mau": `copies` extra renditions, space-joined.
inline std::string apply_repetition_word(std::string_view word, int copies) {
  if (copies < 1) throw ConfigError("apply_repetition_word: copies must be >= 1");
  std::string out;
  for (int i = 0; i < copies; ++i) {
    out += word;
    out.push_back(' ');
  }
  out += word;
  return out;
}

enum class ProlongationPosition { kOnset, kFinal };

namespace detail {

// Graphemes that can be stretched in writing: vowels plus continuant
// consonants. Stops cannot be held, so they are excluded and callers fall
// back to another kind.
inline bool is_prolongable_grapheme(std::string_view g) {
  static constexpr std::array<std::string_view, 19> kProlongable = {
      "a", "e", "i", "o", "u", "s", "m", "n", "r", "l",
      "f", "v", "z", "w", "y", "ng", "ny", "sy", "kh"};
  for (std::string_view p : kProlongable) {
    if (g == p) return true;
  }
  return false;
}

// Target grapheme for a prolongation, as (offset, length) into the word.
// Onset: the first syllable's onset (or its nucleus for vowel-initial
// words). Final: the word's last grapheme unit. Requires a syllabifiable
// word; propagates syllabify errors.
inline std::pair<std::size_t, std::string> prolongation_target(
    std::string_view word, ProlongationPosition position) {
  std::vector<Syllable> syls = syllabify(word);
  if (position == ProlongationPosition::kOnset) {
    const Syllable& first = syls.front();
    return {0, first.onset.empty() ? first.nucleus : first.onset};
  }
  const Syllable& last = syls.back();
  std::string tail = last.coda.empty() ? last.nucleus : last.coda;
  std::vector<std::string> units = detail::segment_graphemes(tail);
  const std::string& target = units.back();
  return {word.size() - target.size(), target};
}

}  // namespace detail

// True when apply_prolongation would succeed for this word and position.
inline bool can_prolong(std::string_view word, ProlongationPosition position) {
  auto syls = try_syllabify(word);
  if (!syls) return false;
  auto [offset, target] = detail::prolongation_target(word, position);
  (void)offset;
  return detail::is_prolongable_grapheme(target);
}

// "saya", 3, onset -> "sssaya"; "aku", 3, onset -> "aaaku";
// "makan", 3, final -> "makannn". The target grapheme is replaced by
// `length` consecutive copies. NotProlongable for stop consonants and for
// cluster onsets.
inline std::string apply_prolongation(std::string_view word, int length,
                                      ProlongationPosition position) {
  if (length < 2) throw ConfigError("apply_prolongation: length must be >= 2");
  auto [offset, target] = detail::prolongation_target(word, position);
  if (!detail::is_prolongable_grapheme(target)) {
    throw NotProlongableError("apply_prolongation: \"" + target +
                              "\" in \"" + std::string(word) +
                              "\" is not prolongable");
  }
  std::string out(word.substr(0, offset));
  for (int i = 0; i < length; ++i) out += target;
  out += word.substr(offset + target.size());
  return out;
}

// ---------------------------------------------------------------------------
// Interjections
// ---------------------------------------------------------------------------

struct InterjectionContext {
  std::size_t gap_index = 0;    // filler goes before the token at this index
  std::size_t token_count = 0;
  std::string prev_token;       // token before the gap; empty at gap 0
};

// Sentence-initial gaps and gaps after a discourse marker take a longer
// "thinking" filler; everything else takes a short filler. The filler is
// drawn uniformly from the configured list (one engine draw) and returned in
// its RAW surface form.
inline std::pair<DisfluencyKind, std::string> choose_interjection(
    const InterjectionContext& ctx, const AugmentationConfig& config,
    rng::Engine& eng) {
  if (ctx.gap_index >= ctx.token_count) {
    throw ForbiddenPositionError(
        "choose_interjection: interjections may not follow the final token");
  }
  bool thinking = ctx.gap_index == 0;
  if (!thinking) {
    for (const auto& m : config.discourse_markers) {
      if (m == ctx.prev_token) {
        thinking = true;
        break;
      }
    }
  }
  const auto& list = thinking ? config.thinking_fillers : config.short_fillers;
  const std::string& filler = list[rng::uniform_index(eng, list.size())];
  return {thinking ? DisfluencyKind::kInterjectionThinking
                   : DisfluencyKind::kInterjectionShort,
          filler};
}

// ---------------------------------------------------------------------------
// inject / destutter
// ---------------------------------------------------------------------------

namespace detail {

inline bool contains_hyphen(std::string_view token) {
  return token.find('-') != std::string_view::npos;
}

}  // namespace detail

// Injects disfluencies into a normalized sentence (lowercase, no
// punctuation, single spaces). Deterministic given (sentence, config).
//
// Engine draw order, per token index i:
//   1. gap Bernoulli;  if hit: filler pick (1 draw)
//   2. word Bernoulli; if hit and the token is eligible:
//        kind pick (1 draw),
//        then per kind: Prolongation -> position (1), length (1 draw, only
//        when applicable); RepetitionSyllable/Word -> copies (1 draw).
inline StutteredSentence inject(std::string_view sentence,
                                const AugmentationConfig& config) {
  config.validate();
  std::vector<std::string> tokens = split_tokens(sentence);
  if (tokens.empty()) throw EmptyInputError("inject: sentence has no tokens");

  rng::Engine eng = rng::make_engine(config.seed);
  const KindWeights& w = config.kind_weights;
  const double total_weight = w.repetition_syllable + w.repetition_word +
                              w.prolongation + w.interjection_short +
                              w.interjection_thinking;
  const double interjection_share =
      (w.interjection_short + w.interjection_thinking) / total_weight;
  const double p_gap = config.p_disfluency * interjection_share;
  const std::array<double, 3> word_weights = {
      w.repetition_syllable, w.repetition_word, w.prolongation};
  const double word_mass =
      word_weights[0] + word_weights[1] + word_weights[2];

  StutteredSentence result;
  result.source = std::string(sentence);
  std::vector<std::string> out;
  out.reserve(tokens.size() * 2);

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];

    // Gap before token i. Gaps only exist before tokens, so no filler can
    // ever follow the final word.
    if (rng::bernoulli(eng, p_gap)) {
      InterjectionContext ctx;
      ctx.gap_index = i;
      ctx.token_count = tokens.size();
      if (i > 0) ctx.prev_token = tokens[i - 1];
      auto [kind, raw_filler] = choose_interjection(ctx, config, eng);
      std::string filler = normalize_text(raw_filler);
      for (auto& t : split_tokens(filler)) out.push_back(std::move(t));
      result.events.push_back({kind, i, "", filler});
    }

    bool applied = false;
    if (rng::bernoulli(eng, config.p_disfluency) && word_mass > 0.0 &&
        !detail::contains_hyphen(token)) {
      std::size_t pick = rng::weighted_index(eng, word_weights);
      DisfluencyKind kind = pick == 0   ? DisfluencyKind::kRepetitionSyllable
                            : pick == 1 ? DisfluencyKind::kRepetitionWord
                                        : DisfluencyKind::kProlongation;
      const bool syllabifiable = try_syllabify(token).has_value();
      std::string rendered;

      if (kind == DisfluencyKind::kProlongation) {
        ProlongationPosition pos = rng::bernoulli(eng, config.p_prolongation_onset)
                                       ? ProlongationPosition::kOnset
                                       : ProlongationPosition::kFinal;
        if (syllabifiable && can_prolong(token, pos)) {
          int length = rng::uniform_int(eng, config.prolongation_length.min,
                                        config.prolongation_length.max);
          rendered = apply_prolongation(token, length, pos);
        } else {
          kind = DisfluencyKind::kRepetitionWord;  // fallback chain
        }
      }
      if (kind == DisfluencyKind::kRepetitionSyllable) {
        if (syllabifiable) {
          int copies = rng::uniform_int(eng, config.repetition_copies.min,
                                        config.repetition_copies.max);
          rendered = apply_repetition_syllable(token, copies);
        } else {
          kind = DisfluencyKind::kRepetitionWord;  // fallback chain
        }
      }
      if (kind == DisfluencyKind::kRepetitionWord) {
        int copies = rng::uniform_int(eng, config.repetition_copies.min,
                                      config.repetition_copies.max);
        rendered = apply_repetition_word(token, copies);
      }

      result.events.push_back({kind, i, token, rendered});
      for (auto& t : split_tokens(rendered)) out.push_back(std::move(t));
      applied = true;
    }
    if (!applied) out.push_back(token);
  }

  result.text = join_tokens(out);
  return result;
}

// Exact inverse of inject given its provenance: removes interjection spans,
// collapses repetitions, restores prolonged graphemes. Throws
// ProvenanceMismatch when (text, events) are not a consistent inject output.
inline std::string destutter(std::string_view text,
                             const std::vector<DisfluencyEvent>& events) {
  std::vector<std::string> out = split_tokens(text);
  std::vector<std::string> source;
  source.reserve(out.size());

  std::size_t cursor = 0;   // position in the output token stream
  std::size_t orig = 0;     // next original token index to account for
  std::size_t last_index = 0;
  int last_phase = -1;      // interjection = 0, word event = 1
  bool first = true;

  const auto take_plain = [&]() {
    if (cursor >= out.size()) {
      throw ProvenanceMismatchError("destutter: output shorter than events imply");
    }
    source.push_back(out[cursor++]);
    ++orig;
  };

  for (const DisfluencyEvent& e : events) {
    const int phase = is_interjection(e.kind) ? 0 : 1;
    // Events must be strictly ordered by (index, phase): at most one
    // interjection per gap, one word event per word, gap before word.
    if (!first && (e.word_index < last_index ||
                   (e.word_index == last_index && phase <= last_phase))) {
      throw ProvenanceMismatchError("destutter: events out of order");
    }
    first = false;
    while (orig < e.word_index) take_plain();

    if (e.rendered.empty()) {
      throw ProvenanceMismatchError("destutter: event with empty rendering");
    }
    std::vector<std::string> span = split_tokens(e.rendered);
    for (const std::string& t : span) {
      if (cursor >= out.size() || out[cursor] != t) {
        throw ProvenanceMismatchError("destutter: rendered span \"" +
                                      e.rendered + "\" not found at position " +
                                      std::to_string(cursor));
      }
      ++cursor;
    }

    if (is_interjection(e.kind)) {
      if (!e.original.empty()) {
        throw ProvenanceMismatchError("destutter: interjection with non-empty original");
      }
    } else {
      if (e.original.empty()) {
        throw ProvenanceMismatchError("destutter: word event with empty original");
      }
      source.push_back(e.original);
      ++orig;
    }
    last_phase = phase;
    last_index = e.word_index;
  }
  while (cursor < out.size()) take_plain();
  return join_tokens(source);
}

// Stuttered surface with interjections re-rendered in their RAW config form
// ("apa ya…?" instead of "apa ya"). Word events keep their rendered shape.
// Used when a TTS engine should see the punctuation-bearing filler.
inline std::string render_raw_surface(const StutteredSentence& sentence,
                                      const AugmentationConfig& config) {
  const auto raw_form = [&](const DisfluencyEvent& e) -> const std::string* {
    const auto& list = e.kind == DisfluencyKind::kInterjectionThinking
                           ? config.thinking_fillers
                           : config.short_fillers;
    for (const auto& f : list) {
      if (normalize_text(f) == e.rendered) return &f;
    }
    return nullptr;
  };

  std::vector<std::string> out = split_tokens(sentence.text);
  std::vector<std::string> parts;
  std::size_t cursor = 0, orig = 0;
  for (const DisfluencyEvent& e : sentence.events) {
    while (orig < e.word_index && cursor < out.size()) {
      parts.push_back(out[cursor++]);
      ++orig;
    }
    std::vector<std::string> span = split_tokens(e.rendered);
    if (is_interjection(e.kind)) {
      const std::string* raw = raw_form(e);
      parts.push_back(raw ? *raw : e.rendered);
      cursor += span.size();
    } else {
      for (std::size_t k = 0; k < span.size() && cursor < out.size(); ++k) {
        parts.push_back(out[cursor++]);
      }
      ++orig;
    }
  }
  while (cursor < out.size()) parts.push_back(out[cursor++]);
  return join_tokens(parts);
}

}  // namespace gagap

#endif  // GAGAP_DISFLUENCY_HPP

// gagap/syllabify.hpp
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

#ifndef GAGAP_SYLLABIFY_HPP
#define GAGAP_SYLLABIFY_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gagap/errors.hpp"

// Orthographic syllabification for Indonesian, used to locate the initial
// syllable (for syllable repetition) and the onset grapheme (for
// prolongation).
//
// Rules:
//   - graphemes: single letters, except the consonant digraphs
//     ng, ny, kh, sy, which are indivisible units;
//   - every vowel letter {a,e,i,o,u} is its own nucleus; adjacent vowels
//     split into separate syllables (hiatus):  ma-u, nga-ra-i;
//   - consonants between two nuclei attach rightward as the longest legal
//     onset (maximal onset); the rest close the left syllable as coda;
//   - legal onsets: any single consonant grapheme, or a cluster from a fixed
//     whitelist (pr br tr dr kr gr pl bl kl gl fl fr sl sp st sk str spr);
//   - all consonants before the first vowel belong to the first onset, all
//     consonants after the last vowel to the last coda.
//
// Input must be lowercase a-z. Hyphenated tokens are rejected (InvalidWord);
// vowelless tokens are rejected (NoNucleus). Pure and stateless.

namespace gagap {

struct Syllable {
  std::string onset;    // possibly empty
  std::string nucleus;  // single vowel letter, never empty
  std::string coda;     // possibly empty

  std::string text() const { return onset + nucleus + coda; }
  bool operator==(const Syllable&) const = default;
};

namespace detail {

inline bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

inline bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }

inline bool is_digraph(std::string_view s) {
  return s == "ng" || s == "ny" || s == "kh" || s == "sy";
}

// Greedy left-to-right grapheme segmentation with digraph units.
inline std::vector<std::string> segment_graphemes(std::string_view word) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < word.size()) {
    if (i + 1 < word.size() && !is_vowel_letter(word[i]) &&
        is_digraph(word.substr(i, 2))) {
      out.emplace_back(word.substr(i, 2));
      i += 2;
    } else {
      out.emplace_back(1, word[i]);
      ++i;
    }
  }
  return out;
}

inline bool is_legal_onset_cluster(std::string_view s) {
  static constexpr std::array<std::string_view, 18> kClusters = {
      "pr", "br", "tr", "dr", "kr", "gr", "pl", "bl", "kl",
      "gl", "fl", "fr", "sl", "sp", "st", "sk", "str", "spr"};
  for (std::string_view c : kClusters) {
    if (s == c) return true;
  }
  return false;
}

}  // namespace detail

// Non-throwing form; nullopt when the word is not lowercase alphabetic or
// has no vowel. The injector uses this to decide word-kind eligibility.
inline std::optional<std::vector<Syllable>> try_syllabify(
    std::string_view word) {
  if (word.empty()) return std::nullopt;
  for (char c : word) {
    if (!detail::is_lower_alpha(c)) return std::nullopt;
  }
  std::vector<std::string> g = detail::segment_graphemes(word);
  std::vector<std::size_t> nuclei;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() == 1 && detail::is_vowel_letter(g[i][0])) nuclei.push_back(i);
  }
  if (nuclei.empty()) return std::nullopt;

  const auto join = [&](std::size_t lo, std::size_t hi) {
    std::string s;
    for (std::size_t i = lo; i < hi; ++i) s += g[i];
    return s;
  };

  // Boundary before nucleus j: consonants since the previous nucleus split
  // so that the right side is the longest legal onset.
  std::vector<std::size_t> starts(nuclei.size());
  starts[0] = 0;
  for (std::size_t j = 1; j < nuclei.size(); ++j) {
    std::size_t lo = nuclei[j - 1] + 1;  // first consonant after prev nucleus
    std::size_t hi = nuclei[j];          // this nucleus
    std::size_t cluster_len = hi - lo;
    std::size_t onset_len = 0;
    for (std::size_t len = std::min<std::size_t>(cluster_len, 3); len >= 1;
         --len) {
      std::string cand = join(hi - len, hi);
      if (len == 1 || detail::is_legal_onset_cluster(cand)) {
        onset_len = len;
        break;
      }
    }
    starts[j] = hi - onset_len;
  }

  std::vector<Syllable> out;
  out.reserve(nuclei.size());
  for (std::size_t j = 0; j < nuclei.size(); ++j) {
    std::size_t begin = starts[j];
    std::size_t end = (j + 1 < nuclei.size()) ? starts[j + 1] : g.size();
    Syllable s;
    s.onset = join(begin, nuclei[j]);
    s.nucleus = g[nuclei[j]];
    s.coda = join(nuclei[j] + 1, end);
    out.push_back(std::move(s));
  }
  return out;
}

// Throwing form. InvalidWord for non-alphabetic input (hyphens included),
// NoNucleus for vowelless words.
inline std::vector<Syllable> syllabify(std::string_view word) {
  if (word.empty()) throw InvalidWordError("syllabify: empty word");
  for (char c : word) {
    if (!detail::is_lower_alpha(c)) {
      throw InvalidWordError("syllabify: non-alphabetic character in \"" +
                             std::string(word) + "\"");
    }
  }
  auto syls = try_syllabify(word);
  if (!syls) throw NoNucleusError("syllabify: no vowel in \"" + std::string(word) + "\"");
  return std::move(*syls);
}

inline Syllable initial_syllable(std::string_view word) {
  return syllabify(word).front();
}

// Onset of the first syllable, or the first nucleus grapheme for
// vowel-initial words. May be a multi-letter cluster ("ng", "str").
inline std::string onset_grapheme(std::string_view word) {
  Syllable first = initial_syllable(word);
  return first.onset.empty() ? first.nucleus : first.onset;
}

}  // namespace gagap

#endif  // GAGAP_SYLLABIFY_HPP

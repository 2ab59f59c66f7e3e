// gagap/normalize.hpp
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

#ifndef GAGAP_NORMALIZE_HPP
#define GAGAP_NORMALIZE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "gagap/unicode.hpp"

namespace gagap {

// Text normalization applied identically to references and hypotheses:
//   1. lowercase (ASCII + Latin-1 supplement),
//   2. strip punctuation -- except hyphens standing between two word
//      characters, which are kept so reduplication ("sapi-sapi") and stutter
//      renderings ("sa-sa-saya") survive,
//   3. collapse whitespace runs to a single space,
//   4. trim leading/trailing whitespace.
// Idempotent: normalize_text(normalize_text(x)) == normalize_text(x).
inline std::string normalize_text(std::string_view raw) {
  std::vector<char32_t> cps = unicode::to_codepoints(raw);
  for (char32_t& cp : cps) cp = unicode::to_lower(cp);

  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;  // collapse + trim in one pass
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    if (unicode::is_space(cp)) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (unicode::is_hyphen(cp)) {
      // Word-internal only: both raw neighbours must be word characters.
      bool prev_word = i > 0 && unicode::is_word(cps[i - 1]);
      bool next_word = i + 1 < cps.size() && unicode::is_word(cps[i + 1]);
      if (prev_word && next_word) {
        if (pending_space) {
          out.push_back(' ');
          pending_space = false;
        }
        out.push_back('-');
      }
      continue;
    }
    if (unicode::is_punct(cp)) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    unicode::append(out, cp);
  }
  return out;
}

// Splits a normalized sentence on single spaces.
inline std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(' ', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) tokens.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace gagap

#endif  // GAGAP_NORMALIZE_HPP

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

#include "gagap/normalize.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "gagap/rng.hpp"

using gagap::normalize_text;
using gagap::split_tokens;

TEST_CASE("lowercases and strips punctuation") {
  CHECK(normalize_text("TERUS KENAPA?") == "terus kenapa");
  CHECK(normalize_text("Halo, dunia!") == "halo dunia");
  CHECK(normalize_text("SEKARANG KOTA INI TERLETAK DI PROVINSI UTRECHT.") ==
        "sekarang kota ini terletak di provinsi utrecht");
}

TEST_CASE("empty input stays empty") {
  CHECK(normalize_text("").empty());
  CHECK(normalize_text("   ").empty());
  CHECK(normalize_text("?!.,").empty());
}

TEST_CASE("word-internal hyphens survive, others are stripped") {
  CHECK(normalize_text("  Sapi-sapi…   itu ") == "sapi-sapi itu");
  CHECK(normalize_text("sa-sa-saya") == "sa-sa-saya");
  CHECK(normalize_text("-awal dan akhir-") == "awal dan akhir");
  CHECK(normalize_text("a--b") == "ab");
  CHECK(normalize_text("putus- sambung") == "putus sambung");
}

TEST_CASE("whitespace collapses and trims") {
  CHECK(normalize_text("a \t b\n\nc") == "a b c");
  CHECK(normalize_text("\tsatu  dua\t") == "satu dua");
}

TEST_CASE("digits pass through verbatim") {
  CHECK(normalize_text("Tahun 2020, bulan 3.") == "tahun 2020 bulan 3");
}

TEST_CASE("typographic punctuation is removed") {
  // curly quotes, em dash, ellipsis
  CHECK(normalize_text("“apa ya…?”") == "apa ya");
  CHECK(normalize_text("kata — lain") == "kata lain");
}

TEST_CASE("idempotence on hand-picked strings") {
  for (const char* s :
       {"TERUS KENAPA?", "  Sapi-sapi…   itu ", "a--b", "x - y", "123-456",
        "Saya mau makan, lalu tidur."}) {
    std::string once = normalize_text(s);
    CHECK(normalize_text(once) == once);
  }
}

TEST_CASE("idempotence and alphabet on fuzzed strings") {
  gagap::rng::Engine eng = gagap::rng::make_engine(20260810);
  const std::string alphabet =
      "abcXYZ ..--?!,;\t\n08é";  // mixes letters, punct, space, utf8
  for (int iter = 0; iter < 300; ++iter) {
    std::string s;
    const std::size_t len = gagap::rng::uniform_index(eng, 40);
    for (std::size_t i = 0; i < len; ++i) {
      s.push_back(alphabet[gagap::rng::uniform_index(eng, alphabet.size())]);
    }
    std::string once = normalize_text(s);
    std::string twice = normalize_text(once);
    REQUIRE(once == twice);
    // token count stable under repeated normalization
    REQUIRE(split_tokens(once).size() == split_tokens(twice).size());
    // no double spaces, no leading/trailing space
    REQUIRE(once.find("  ") == std::string::npos);
    if (!once.empty()) {
      REQUIRE(once.front() != ' ');
      REQUIRE(once.back() != ' ');
    }
    for (unsigned char c : once) {
      bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
                c == ' ' || c >= 0x80;  // passthrough letters stay utf8
      REQUIRE(ok);
    }
  }
}

TEST_CASE("split and join round trip") {
  auto toks = split_tokens("saya mau makan");
  REQUIRE(toks == std::vector<std::string>{"saya", "mau", "makan"});
  CHECK(gagap::join_tokens(toks) == "saya mau makan");
  CHECK(split_tokens("").empty());
}

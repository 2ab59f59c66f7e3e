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

#include "gagap/metrics.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "gagap/rng.hpp"
#include "oracles.hpp"

using gagap::align;
using gagap::AlignmentOpKind;
using gagap::AlignmentReport;
using gagap::cer;
using gagap::render_diff;
using gagap::score_corpus;
using gagap::wer;

namespace {

std::vector<std::string> words(std::initializer_list<const char*> ws) {
  return {ws.begin(), ws.end()};
}

// Replays the op sequence against the reference; must rebuild the hypothesis.
std::vector<std::string> replay_ops(const AlignmentReport& r) {
  std::vector<std::string> hyp;
  for (const auto& op : r.ops) {
    switch (op.kind) {
      case AlignmentOpKind::kMatch:
      case AlignmentOpKind::kSubstitution:
      case AlignmentOpKind::kInsertion:
        hyp.push_back(op.hyp_unit);
        break;
      case AlignmentOpKind::kDeletion:
        break;
    }
  }
  return hyp;
}

std::vector<std::string> ref_of_ops(const AlignmentReport& r) {
  std::vector<std::string> ref;
  for (const auto& op : r.ops) {
    if (op.kind != AlignmentOpKind::kInsertion) ref.push_back(op.ref_unit);
  }
  return ref;
}

}  // namespace

TEST_CASE("worked substitution+insertion case") {
  auto r = align(words({"terus", "kenapa"}), words({"terus", "keren", "apa"}));
  CHECK(r.substitutions == 1);
  CHECK(r.insertions == 1);
  CHECK(r.deletions == 0);
  CHECK(r.ref_count == 2);
  CHECK(r.rate().num == 2);
  CHECK(r.rate().den == 2);
  CHECK(r.rate().to_string() == "1.000");
}

TEST_CASE("identity and full deletion") {
  auto same = align(words({"a", "b"}), words({"a", "b"}));
  CHECK(same.errors() == 0);
  CHECK(same.rate().to_string() == "0.000");

  auto gone = align(words({"a"}), {});
  CHECK(gone.deletions == 1);
  CHECK(gone.ref_count == 1);
  CHECK(gone.rate().to_string() == "1.000");
}

TEST_CASE("empty reference") {
  auto both_empty = align({}, {});
  CHECK(both_empty.rate().value() == 0.0);

  auto r = align({}, words({"x"}));
  CHECK(r.insertions == 1);
  CHECK(r.ref_count == 0);
  CHECK_THROWS_AS(r.rate(), gagap::DivisionByZeroReferenceError);
}

TEST_CASE("wer tokenizes on spaces, hyphenated forms are single tokens") {
  auto r = wer("saya berandai-andai", "saya merandang-andang");
  CHECK(r.substitutions == 1);
  CHECK(r.ref_count == 2);
  CHECK(r.rate().to_string() == "0.500");
}

TEST_CASE("cer counts unicode characters including spaces") {
  auto r = cer("abc", "abd");
  CHECK(r.substitutions == 1);
  CHECK(r.ref_count == 3);
  CHECK(r.rate().num == 1);
  CHECK(r.rate().den == 3);
  CHECK(r.rate().to_string() == "0.333");

  CHECK(cer("a b", "a b").errors() == 0);
  // multibyte code points count once
  auto u = cer("…", "x");
  CHECK(u.ref_count == 1);
  CHECK(u.substitutions == 1);
}

TEST_CASE("cer on the worked pair matches the char-level oracle") {
  const std::string ref = "terus kenapa";
  const std::string hyp = "terus keren apa";
  auto r = cer(ref, hyp);
  CHECK(r.errors() == oracles::edit_distance_chars(ref, hyp));
}

TEST_CASE("op sequence reconstructs both sides") {
  auto r = align(words({"rasa", "saling", "menghormati"}),
                 words({"saling", "menghormati", "pastiwa"}));
  CHECK(replay_ops(r) == words({"saling", "menghormati", "pastiwa"}));
  CHECK(ref_of_ops(r) == words({"rasa", "saling", "menghormati"}));
}

TEST_CASE("tie-breaking is deterministic") {
  auto a = align(words({"a", "b"}), words({"b", "a"}));
  auto b = align(words({"a", "b"}), words({"b", "a"}));
  REQUIRE(a.ops.size() == b.ops.size());
  for (std::size_t i = 0; i < a.ops.size(); ++i) REQUIRE(a.ops[i] == b.ops[i]);
}

TEST_CASE("oracle equivalence on random pairs") {
  gagap::rng::Engine eng = gagap::rng::make_engine(99);
  const char alphabet[] = {'a', 'b', 'c'};
  for (int iter = 0; iter < 3000; ++iter) {
    std::vector<std::string> r, h;
    std::size_t rl = gagap::rng::uniform_index(eng, 9);
    std::size_t hl = gagap::rng::uniform_index(eng, 9);
    for (std::size_t i = 0; i < rl; ++i) {
      r.push_back(std::string(1, alphabet[gagap::rng::uniform_index(eng, 3)]));
    }
    for (std::size_t i = 0; i < hl; ++i) {
      h.push_back(std::string(1, alphabet[gagap::rng::uniform_index(eng, 3)]));
    }
    auto report = align(r, h);
    REQUIRE(report.errors() == oracles::edit_distance(r, h));
    // replay soundness
    REQUIRE(replay_ops(report) == h);
    REQUIRE(ref_of_ops(report) == r);
    // cost symmetry. The S/D/I decomposition may legitimately differ between
    // co-optimal alignments, so only the total is asserted; mirroring the op
    // sequence (D<->I swapped) is a valid alignment of the swapped pair.
    auto swapped = align(h, r);
    REQUIRE(swapped.errors() == report.errors());
    REQUIRE(swapped.deletions + report.deletions ==
            swapped.insertions + report.insertions);
  }
}

TEST_CASE("triangle inequality on random triples") {
  gagap::rng::Engine eng = gagap::rng::make_engine(123);
  auto random_seq = [&](std::size_t maxlen) {
    std::vector<std::string> s;
    std::size_t len = gagap::rng::uniform_index(eng, maxlen + 1);
    for (std::size_t i = 0; i < len; ++i) {
      s.push_back(std::string(1, static_cast<char>('a' + gagap::rng::uniform_index(eng, 3))));
    }
    return s;
  };
  for (int iter = 0; iter < 500; ++iter) {
    auto x = random_seq(7), y = random_seq(7), z = random_seq(7);
    std::size_t xy = align(x, y).errors();
    std::size_t yz = align(y, z).errors();
    std::size_t xz = align(x, z).errors();
    REQUIRE(xz <= xy + yz);
    REQUIRE(align(x, x).errors() == 0);
  }
}

TEST_CASE("micro average, not macro") {
  // (S+D+I, N) = (1,2) and (0,2): micro = 1/4; macro mean would be 0.25 too,
  // so use a case where they differ: (1,1) and (0,3) -> micro 1/4, macro 1/2.
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"a", "b"}, {"x y z", "x y z"}};
  auto score = score_corpus(pairs);
  CHECK(score.wer.errors() == 1);
  CHECK(score.wer.ref_count == 4);
  CHECK(score.wer.rate().to_string() == "0.250");

  std::vector<std::pair<std::string, std::string>> spec_pairs = {
      {"a b", "a x"}, {"c d", "c d"}};
  auto s2 = score_corpus(spec_pairs);
  CHECK(s2.wer.rate().to_string() == "0.250");
}

TEST_CASE("single pair corpus equals per-pair scores") {
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"terus kenapa", "terus keren apa"}};
  auto score = score_corpus(pairs);
  CHECK(score.wer.errors() == wer(pairs[0].first, pairs[0].second).errors());
  CHECK(score.cer.errors() == cer(pairs[0].first, pairs[0].second).errors());
  REQUIRE(score.per_utterance.size() == 1);
}

TEST_CASE("corpus score matches independent recomputation on random pairs") {
  gagap::rng::Engine eng = gagap::rng::make_engine(2024);
  std::vector<std::pair<std::string, std::string>> pairs;
  const char* vocab[] = {"saya", "mau", "makan", "nasi", "tadi", "dia"};
  for (int i = 0; i < 100; ++i) {
    auto sentence = [&]() {
      std::string s;
      std::size_t len = 1 + gagap::rng::uniform_index(eng, 5);
      for (std::size_t k = 0; k < len; ++k) {
        if (k) s += ' ';
        s += vocab[gagap::rng::uniform_index(eng, 6)];
      }
      return s;
    };
    pairs.emplace_back(sentence(), sentence());
  }
  auto score = score_corpus(pairs);
  std::size_t werr = 0, wn = 0, cerr = 0, cn = 0;
  for (const auto& [r, h] : pairs) {
    werr += oracles::edit_distance(gagap::split_tokens(r), gagap::split_tokens(h));
    wn += gagap::split_tokens(r).size();
    cerr += oracles::edit_distance_chars(r, h);
    cn += r.size();  // pure ASCII here
  }
  CHECK(score.wer.errors() == werr);
  CHECK(score.wer.ref_count == wn);
  CHECK(score.cer.errors() == cerr);
  CHECK(score.cer.ref_count == cn);
}

TEST_CASE("empty corpus rejected") {
  std::vector<std::pair<std::string, std::string>> none;
  CHECK_THROWS_AS(score_corpus(none), gagap::EmptyCorpusError);
}

TEST_CASE("diff rendering groups spans") {
  auto r = wer("terus kenapa", "terus keren apa");
  std::string plain = render_diff(r, gagap::DiffMode::kPlain);
  CHECK(plain == "REF: terus [[S:kenapa]]\nHYP: terus [[S:keren apa]]");

  std::string markup = render_diff(r, gagap::DiffMode::kMarkup);
  CHECK(markup.find("<sub>keren apa</sub>") != std::string::npos);
}

TEST_CASE("diff rendering: identity has no markers") {
  auto r = wer("saya makan", "saya makan");
  std::string plain = render_diff(r);
  CHECK(plain == "REF: saya makan\nHYP: saya makan");
}

TEST_CASE("diff rendering: pure deletion marks only the reference") {
  auto r = wer("rasa saling menghormati", "saling menghormati");
  std::string plain = render_diff(r);
  CHECK(plain == "REF: [[D:rasa]] saling menghormati\nHYP: saling menghormati");
}

TEST_CASE("diff rendering: pure insertion marks only the hypothesis") {
  auto r = wer("kota ini", "kota kota ini");
  std::string plain = render_diff(r);
  CHECK(plain.find("[[I:kota]]") != std::string::npos);
}

TEST_CASE("rational rendering") {
  CHECK(gagap::Rational{1, 3}.to_string() == "0.333");
  CHECK(gagap::Rational{2, 3}.to_string() == "0.667");
  CHECK(gagap::Rational{5, 4}.to_string() == "1.250");
  CHECK(gagap::Rational{0, 1}.to_string() == "0.000");
}

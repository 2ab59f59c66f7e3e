// gagap/metrics.hpp
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

#ifndef GAGAP_METRICS_HPP
#define GAGAP_METRICS_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gagap/errors.hpp"
#include "gagap/normalize.hpp"
#include "gagap/unicode.hpp"

// WER/CER scoring: Levenshtein alignment with backtrace, micro-averaged
// corpus aggregation, and highlighted diff rendering. Error rate is
// (S + D + I) / N with N = reference unit count; substitution, deletion and
// insertion all cost 1.

namespace gagap {

enum class AlignmentOpKind { kMatch, kSubstitution, kDeletion, kInsertion };

struct AlignmentOp {
  AlignmentOpKind kind = AlignmentOpKind::kMatch;
  std::string ref_unit;  // empty for insertions
  std::string hyp_unit;  // empty for deletions
  bool operator==(const AlignmentOp&) const = default;
};

enum class UnitKind { kWord, kChar };

// Exact rate, kept rational so tests never chase float drift.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  // Fixed three decimals, round half up ("0.333", "1.000").
  std::string to_string() const {
    std::uint64_t scaled = (num * 1000 + den / 2) / den;
    std::string frac = std::to_string(scaled % 1000);
    while (frac.size() < 3) frac.insert(frac.begin(), '0');
    return std::to_string(scaled / 1000) + "." + frac;
  }
};

struct AlignmentReport {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_count = 0;  // N
  std::vector<AlignmentOp> ops;
  UnitKind unit = UnitKind::kWord;

  std::size_t errors() const { return substitutions + deletions + insertions; }

  // (S+D+I)/N. An empty reference against a non-empty hypothesis has no
  // defined rate; the raw counts above stay available.
  Rational rate() const {
    if (ref_count == 0) {
      if (errors() == 0) return {0, 1};
      throw DivisionByZeroReferenceError(
          "rate undefined: empty reference with " + std::to_string(errors()) +
          " error(s)");
    }
    return {errors(), ref_count};
  }
};

// ---------------------------------------------------------------------------
// Alignment
// ---------------------------------------------------------------------------

// Minimal-cost alignment of two unit sequences. Deterministic tie-breaking:
// at equal cost prefer Match > Substitution > Deletion > Insertion, applied
// while filling the table top-left to bottom-right.
inline AlignmentReport align(std::span<const std::string> ref_units,
                             std::span<const std::string> hyp_units,
                             UnitKind unit = UnitKind::kWord) {
  const std::size_t n = ref_units.size();
  const std::size_t m = hyp_units.size();
  const std::size_t stride = m + 1;

  std::vector<std::uint32_t> cost((n + 1) * stride);
  std::vector<std::uint8_t> choice((n + 1) * stride);  // AlignmentOpKind
  const auto at = [stride](std::size_t i, std::size_t j) { return i * stride + j; };

  for (std::size_t j = 1; j <= m; ++j) {
    cost[at(0, j)] = static_cast<std::uint32_t>(j);
    choice[at(0, j)] = static_cast<std::uint8_t>(AlignmentOpKind::kInsertion);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cost[at(i, 0)] = static_cast<std::uint32_t>(i);
    choice[at(i, 0)] = static_cast<std::uint8_t>(AlignmentOpKind::kDeletion);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const bool equal = ref_units[i - 1] == hyp_units[j - 1];
      const std::uint32_t diag = cost[at(i - 1, j - 1)] + (equal ? 0 : 1);
      const std::uint32_t del = cost[at(i - 1, j)] + 1;
      const std::uint32_t ins = cost[at(i, j - 1)] + 1;
      std::uint32_t best = std::min(diag, std::min(del, ins));
      AlignmentOpKind op;
      if (diag == best && equal) {
        op = AlignmentOpKind::kMatch;
      } else if (diag == best) {
        op = AlignmentOpKind::kSubstitution;
      } else if (del == best) {
        op = AlignmentOpKind::kDeletion;
      } else {
        op = AlignmentOpKind::kInsertion;
      }
      cost[at(i, j)] = best;
      choice[at(i, j)] = static_cast<std::uint8_t>(op);
    }
  }

  AlignmentReport report;
  report.unit = unit;
  report.ref_count = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const auto op = static_cast<AlignmentOpKind>(choice[at(i, j)]);
    switch (op) {
      case AlignmentOpKind::kMatch:
        report.ops.push_back({op, ref_units[i - 1], hyp_units[j - 1]});
        --i;
        --j;
        break;
      case AlignmentOpKind::kSubstitution:
        ++report.substitutions;
        report.ops.push_back({op, ref_units[i - 1], hyp_units[j - 1]});
        --i;
        --j;
        break;
      case AlignmentOpKind::kDeletion:
        ++report.deletions;
        report.ops.push_back({op, ref_units[i - 1], ""});
        --i;
        break;
      case AlignmentOpKind::kInsertion:
        ++report.insertions;
        report.ops.push_back({op, "", hyp_units[j - 1]});
        --j;
        break;
    }
  }
  std::reverse(report.ops.begin(), report.ops.end());
  return report;
}

// Word error rate over whitespace tokens. Inputs are expected normalized.
inline AlignmentReport wer(std::string_view ref, std::string_view hyp) {
  std::vector<std::string> r = split_tokens(ref);
  std::vector<std::string> h = split_tokens(hyp);
  return align(r, h, UnitKind::kWord);
}

// Character error rate over Unicode scalar characters, spaces included.
inline AlignmentReport cer(std::string_view ref, std::string_view hyp) {
  const auto to_units = [](std::string_view s) {
    std::vector<std::string> units;
    for (char32_t cp : unicode::to_codepoints(s)) {
      std::string u;
      unicode::append(u, cp);
      units.push_back(std::move(u));
    }
    return units;
  };
  std::vector<std::string> r = to_units(ref);
  std::vector<std::string> h = to_units(hyp);
  return align(r, h, UnitKind::kChar);
}

// ---------------------------------------------------------------------------
// Corpus aggregation
// ---------------------------------------------------------------------------

struct ErrorTotals {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_count = 0;

  void add(const AlignmentReport& r) {
    substitutions += r.substitutions;
    deletions += r.deletions;
    insertions += r.insertions;
    ref_count += r.ref_count;
  }
  std::size_t errors() const { return substitutions + deletions + insertions; }
  Rational rate() const {
    if (ref_count == 0) {
      if (errors() == 0) return {0, 1};
      throw DivisionByZeroReferenceError("corpus rate undefined: empty reference");
    }
    return {errors(), ref_count};
  }
};

struct CorpusScore {
  // Micro averages: summed error counts over summed reference lengths,
  // NOT the mean of per-utterance rates.
  ErrorTotals wer;
  ErrorTotals cer;
  std::vector<std::pair<AlignmentReport, AlignmentReport>> per_utterance;
};

inline CorpusScore score_corpus(
    std::span<const std::pair<std::string, std::string>> pairs) {
  if (pairs.empty()) throw EmptyCorpusError("score_corpus: no utterance pairs");
  CorpusScore score;
  score.per_utterance.reserve(pairs.size());
  for (const auto& [ref, hyp] : pairs) {
    AlignmentReport w = wer(ref, hyp);
    AlignmentReport c = cer(ref, hyp);
    score.wer.add(w);
    score.cer.add(c);
    score.per_utterance.emplace_back(std::move(w), std::move(c));
  }
  return score;
}

// ---------------------------------------------------------------------------
// Diff rendering
// ---------------------------------------------------------------------------

enum class DiffMode { kPlain, kMarkup };

namespace detail {

inline std::string wrap_span(DiffMode mode, char tag, const std::string& body) {
  if (mode == DiffMode::kPlain) {
    return std::string("[[") + tag + ":" + body + "]]";
  }
  switch (tag) {
    case 'S': return "<sub>" + body + "</sub>";
    case 'D': return "<del>" + body + "</del>";
    default: return "<ins>" + body + "</ins>";
  }
}

}  // namespace detail

// Renders a two-line report:
//   REF: terus [[S:kenapa]]
//   HYP: terus [[S:keren apa]]
// Consecutive non-match ops merge into one highlighted span (phrase-level
// highlighting); the counts in the report stay per-unit.
inline std::string render_diff(const AlignmentReport& report,
                               DiffMode mode = DiffMode::kPlain) {
  const char* sep = report.unit == UnitKind::kWord ? " " : "";
  std::vector<std::string> ref_parts;
  std::vector<std::string> hyp_parts;

  std::size_t i = 0;
  const auto& ops = report.ops;
  while (i < ops.size()) {
    if (ops[i].kind == AlignmentOpKind::kMatch) {
      ref_parts.push_back(ops[i].ref_unit);
      hyp_parts.push_back(ops[i].hyp_unit);
      ++i;
      continue;
    }
    std::string ref_run, hyp_run;
    while (i < ops.size() && ops[i].kind != AlignmentOpKind::kMatch) {
      if (!ops[i].ref_unit.empty()) {
        if (!ref_run.empty()) ref_run += sep;
        ref_run += ops[i].ref_unit;
      }
      if (!ops[i].hyp_unit.empty()) {
        if (!hyp_run.empty()) hyp_run += sep;
        hyp_run += ops[i].hyp_unit;
      }
      ++i;
    }
    if (!ref_run.empty() && !hyp_run.empty()) {
      ref_parts.push_back(detail::wrap_span(mode, 'S', ref_run));
      hyp_parts.push_back(detail::wrap_span(mode, 'S', hyp_run));
    } else if (!ref_run.empty()) {
      ref_parts.push_back(detail::wrap_span(mode, 'D', ref_run));
    } else if (!hyp_run.empty()) {
      hyp_parts.push_back(detail::wrap_span(mode, 'I', hyp_run));
    }
  }

  const auto join = [&](const std::vector<std::string>& parts) {
    std::string line;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (k) line += sep;
      line += parts[k];
    }
    return line;
  };
  return "REF: " + join(ref_parts) + "\nHYP: " + join(hyp_parts);
}

}  // namespace gagap

#endif  // GAGAP_METRICS_HPP

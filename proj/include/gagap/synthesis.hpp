// gagap/synthesis.hpp
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

#ifndef GAGAP_SYNTHESIS_HPP
#define GAGAP_SYNTHESIS_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "gagap/audio.hpp"
#include "gagap/disfluency.hpp"
#include "gagap/errors.hpp"
#include "gagap/normalize.hpp"
#include "gagap/rng.hpp"
#include "gagap/unicode.hpp"
#include "gagap/wav.hpp"

// Client abstractions for the two external generators -- the LLM stutter
// rewriter and the TTS engine -- with request sampling, prompt templating, a
// bounded retry policy, token-bucket rate limiting, and deterministic
// offline mocks. Tests and --offline runs use only the mocks.

namespace gagap {

inline constexpr double kMinSpeed = 0.75;
inline constexpr double kMaxSpeed = 1.25;

struct SynthesisRequest {
  std::string text;
  std::string voice;
  double speed = 1.0;  // in [0.75, 1.25]
  std::string style_prompt;
};

struct RewriteRequest {
  std::string text;                // fluent sentence
  std::string instruction_prompt;  // template with a {{text}} slot
};

struct SynthesisResult {
  std::string wav_bytes;
  std::string voice;  // echo of what was used
  double speed = 1.0;
  double duration_seconds = 0.0;
};

// Substitutes the {{text}} slot of a prompt template.
inline std::string render_prompt(std::string_view prompt_template,
                                 std::string_view text) {
  static constexpr std::string_view kSlot = "{{text}}";
  std::string out(prompt_template);
  std::size_t pos = 0;
  while ((pos = out.find(kSlot, pos)) != std::string::npos) {
    out.replace(pos, kSlot.size(), text);
    pos += text.size();
  }
  return out;
}

// Uniform voice pick + uniform speed in [0.75, 1.25]. Consumes exactly two
// engine draws (one for the voice, one for the speed).
inline std::pair<std::string, double> sample_voice_and_speed(
    rng::Engine& eng, std::span<const std::string> voices) {
  if (voices.empty()) throw NoVoicesError("sample_voice_and_speed: empty voice list");
  const std::string& voice = voices[rng::uniform_index(eng, voices.size())];
  const double speed = rng::uniform_real(eng, kMinSpeed, kMaxSpeed);
  return {voice, speed};
}

// ---------------------------------------------------------------------------
// Client interfaces
// ---------------------------------------------------------------------------

class TtsClient {
 public:
  virtual ~TtsClient() = default;
  virtual SynthesisResult synthesize(const SynthesisRequest& request) = 0;
};

class RewriteClient {
 public:
  virtual ~RewriteClient() = default;
  virtual std::string rewrite(const RewriteRequest& request) = 0;
};

// ---------------------------------------------------------------------------
// Retry policy and rate limiting
// ---------------------------------------------------------------------------

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{100};
  double backoff_multiplier = 2.0;
  std::chrono::milliseconds max_backoff{2000};
  // Injectable for tests; defaults to a real sleep.
  std::function<void(std::chrono::milliseconds)> sleep =
      [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
};

// Runs `fn` with bounded exponential backoff on RetryableError. Intended for
// idempotent requests only. Throws GiveUp wrapping the last failure once the
// attempt budget is exhausted; non-retryable errors pass through.
template <typename Fn>
auto with_retry(Fn&& fn, const RetryPolicy& policy) -> decltype(fn()) {
  if (policy.max_attempts < 1) throw ConfigError("retry: max_attempts must be >= 1");
  std::chrono::milliseconds backoff = policy.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const RetryableError& e) {
      if (attempt >= policy.max_attempts) {
        throw GiveUpError("gave up after " + std::to_string(attempt) +
                          " attempts: " + e.what());
      }
      policy.sleep(backoff);
      auto next = std::chrono::milliseconds(static_cast<long long>(
          static_cast<double>(backoff.count()) * policy.backoff_multiplier));
      backoff = std::min(next, policy.max_backoff);
    }
  }
}

// Token bucket over a caller-supplied clock (seconds), shareable between
// worker threads. Tests drive time by hand; real callers sleep for
// `seconds_until_ready`.
class TokenBucket {
 public:
  TokenBucket(double capacity, double refill_per_second)
      : capacity_(capacity), tokens_(capacity), refill_per_second_(refill_per_second) {
    if (capacity <= 0 || refill_per_second <= 0) {
      throw ConfigError("token bucket needs positive capacity and refill rate");
    }
  }

  bool try_acquire(double now_seconds, double cost = 1.0) {
    std::lock_guard<std::mutex> lock(mu_);
    refill(now_seconds);
    if (tokens_ + 1e-9 >= cost) {
      tokens_ -= cost;
      return true;
    }
    return false;
  }

  double seconds_until_ready(double now_seconds, double cost = 1.0) {
    std::lock_guard<std::mutex> lock(mu_);
    refill(now_seconds);
    if (tokens_ + 1e-9 >= cost) return 0.0;
    return (cost - tokens_) / refill_per_second_;
  }

 private:
  void refill(double now_seconds) {
    if (now_seconds > last_) {
      tokens_ = std::min(capacity_, tokens_ + (now_seconds - last_) * refill_per_second_);
      last_ = now_seconds;
    }
  }

  std::mutex mu_;
  double capacity_;
  double tokens_;
  double refill_per_second_;
  double last_ = 0.0;
};

// ---------------------------------------------------------------------------
// Validated operations over a client
// ---------------------------------------------------------------------------

inline void validate_request(const SynthesisRequest& request) {
  if (request.text.empty()) throw InvalidRequestError("synthesis request: empty text");
  if (!(request.speed >= kMinSpeed && request.speed <= kMaxSpeed)) {
    throw InvalidRequestError("synthesis request: speed out of [0.75, 1.25]");
  }
}

inline void validate_request(const RewriteRequest& request) {
  if (request.text.empty()) throw InvalidRequestError("rewrite request: empty text");
}

// LLM rewrite with retries. The response is validated non-empty; unlike the
// rule injector there is no provenance, so no destutter guarantee.
inline std::string rewrite_stutter(const RewriteRequest& request,
                                   RewriteClient& client,
                                   const RetryPolicy& policy = {}) {
  validate_request(request);
  std::string text = with_retry([&] { return client.rewrite(request); }, policy);
  if (text.empty()) throw InvalidResponseError("rewrite: empty response");
  return text;
}

// TTS with retries. Echoes back the (voice, speed) actually used.
inline SynthesisResult synthesize(const SynthesisRequest& request,
                                  TtsClient& client,
                                  const RetryPolicy& policy = {}) {
  validate_request(request);
  SynthesisResult result =
      with_retry([&] { return client.synthesize(request); }, policy);
  if (result.wav_bytes.empty()) throw InvalidResponseError("tts: empty audio payload");
  return result;
}

// ---------------------------------------------------------------------------
// Offline mocks
// ---------------------------------------------------------------------------

// Deterministic fake TTS: a sine tone whose pitch is derived from
// (seed, voice, text) and whose duration is
//     base_seconds_per_char * characters / speed
// so the sampled speed observably changes the output length. Byte-identical
// for identical (request, seed).
class MockTtsClient final : public TtsClient {
 public:
  explicit MockTtsClient(std::uint64_t seed, int sample_rate = 22050,
                         double base_seconds_per_char = 0.04)
      : seed_(seed), sample_rate_(sample_rate),
        base_seconds_per_char_(base_seconds_per_char) {}

  SynthesisResult synthesize(const SynthesisRequest& request) override {
    validate_request(request);
    const std::size_t chars = unicode::to_codepoints(request.text).size();
    const double duration =
        base_seconds_per_char_ * static_cast<double>(chars) / request.speed;

    const std::uint64_t h = rng::derive_seed(
        seed_, request.text + "\x1f" + request.voice + "\x1f" + request.style_prompt);
    const double pitch_hz = 160.0 + static_cast<double>(h % 19) * 10.0;

    AudioBuffer buf;
    buf.sample_rate = sample_rate_;
    const std::size_t n =
        static_cast<std::size_t>(std::llround(duration * sample_rate_));
    buf.samples.resize(n);
    const double w = 2.0 * M_PI * pitch_hz / sample_rate_;
    for (std::size_t i = 0; i < n; ++i) {
      buf.samples[i] =
          static_cast<float>(0.28 * std::sin(w * static_cast<double>(i)));
    }

    SynthesisResult result;
    result.wav_bytes = wav::write_wav(buf);
    result.voice = request.voice;
    result.speed = request.speed;
    result.duration_seconds = duration;
    return result;
  }

 private:
  std::uint64_t seed_;
  int sample_rate_;
  double base_seconds_per_char_;
};

// Deterministic fake LLM rewriter: delegates to the rule injector with a
// seed derived from (mock seed, text), so outputs are reproducible and
// plausibly stutter-shaped without any network.
class MockRewriteClient final : public RewriteClient {
 public:
  explicit MockRewriteClient(std::uint64_t seed,
                             AugmentationConfig config = AugmentationConfig{})
      : seed_(seed), config_(std::move(config)) {}

  std::string rewrite(const RewriteRequest& request) override {
    validate_request(request);
    AugmentationConfig c = config_;
    c.seed = rng::derive_seed(seed_, request.text);
    std::string normalized = normalize_text(request.text);
    if (normalized.empty()) throw InvalidResponseError("mock rewrite: text normalizes to nothing");
    return inject(normalized, c).text;
  }

 private:
  std::uint64_t seed_;
  AugmentationConfig config_;
};

// Test helper: fails `failures` times with RetryableError, then delegates.
class FlakyTtsClient final : public TtsClient {
 public:
  FlakyTtsClient(TtsClient& inner, int failures)
      : inner_(inner), remaining_(failures) {}

  SynthesisResult synthesize(const SynthesisRequest& request) override {
    if (remaining_ > 0) {
      --remaining_;
      throw RetryableError("simulated transport failure");
    }
    return inner_.synthesize(request);
  }

  int remaining() const { return remaining_; }

 private:
  TtsClient& inner_;
  int remaining_;
};

}  // namespace gagap

#endif  // GAGAP_SYNTHESIS_HPP

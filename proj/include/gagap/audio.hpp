// gagap/audio.hpp
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

#ifndef GAGAP_AUDIO_HPP
#define GAGAP_AUDIO_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gagap/errors.hpp"
#include "gagap/log.hpp"

namespace gagap {

// Mono audio, float samples in [-1, 1].
struct AudioBuffer {
  std::vector<float> samples;
  int sample_rate = 0;

  double duration_seconds() const {
    return sample_rate > 0
               ? static_cast<double>(samples.size()) / sample_rate
               : 0.0;
  }
};

namespace audio_detail {

// Zeroth-order modified Bessel function, power series.
inline double bessel_i0(double x) {
  double sum = 1.0;
  double term = 1.0;
  const double half_sq = (x / 2.0) * (x / 2.0);
  for (int k = 1; k < 64; ++k) {
    term *= half_sq / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-14) break;
  }
  return sum;
}

inline double sinc(double u) {
  if (u == 0.0) return 1.0;
  const double pu = M_PI * u;
  return std::sin(pu) / pu;
}

struct SincKernel {
  double cutoff;      // normalized to input rate, cycles/sample
  double half_width;  // input samples
  double beta;
  double i0_beta;

  // Lowpass kernel with cutoff at 0.45x the smaller of the two rates,
  // Kaiser-windowed; 16 sinc lobes per side.
  SincKernel(int source_rate, int target_rate, int lobes = 16,
             double kaiser_beta = 8.6)
      : cutoff(0.45 * std::min(source_rate, target_rate) / source_rate),
        half_width(lobes / (2.0 * cutoff)),
        beta(kaiser_beta),
        i0_beta(bessel_i0(kaiser_beta)) {}

  double operator()(double t) const {
    const double x = t / half_width;
    if (x <= -1.0 || x >= 1.0) return 0.0;
    const double window = bessel_i0(beta * std::sqrt(1.0 - x * x)) / i0_beta;
    return 2.0 * cutoff * sinc(2.0 * cutoff * t) * window;
  }
};

}  // namespace audio_detail

// Windowed-sinc sample-rate conversion. Output length is
// round(input_len * target / source); equal rates return the input
// unchanged. When the reduced ratio is small the per-phase tap tables are
// precomputed (polyphase); otherwise the kernel is evaluated directly.
inline AudioBuffer resample(const AudioBuffer& in, int target_rate) {
  if (in.sample_rate <= 0 || target_rate <= 0) {
    throw ValidationError("resample: sample rates must be positive");
  }
  if (target_rate == in.sample_rate) return in;

  const std::int64_t source_rate = in.sample_rate;
  const std::int64_t in_len = static_cast<std::int64_t>(in.samples.size());
  const std::int64_t out_len = std::llround(
      static_cast<double>(in_len) * target_rate / static_cast<double>(source_rate));

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.samples.assign(static_cast<std::size_t>(out_len), 0.0f);
  if (in_len == 0 || out_len == 0) return out;

  const audio_detail::SincKernel kernel(in.sample_rate, target_rate);
  const std::int64_t reach = static_cast<std::int64_t>(std::ceil(kernel.half_width));

  const auto accumulate = [&](std::int64_t n, std::int64_t base,
                              const double* taps, std::int64_t tap_count) {
    double acc = 0.0;
    for (std::int64_t j = 0; j < tap_count; ++j) {
      const std::int64_t k = base + j;
      if (k < 0 || k >= in_len) continue;
      acc += taps[j] * in.samples[static_cast<std::size_t>(k)];
    }
    out.samples[static_cast<std::size_t>(n)] = static_cast<float>(acc);
  };

  const std::int64_t g = std::gcd(source_rate, static_cast<std::int64_t>(target_rate));
  const std::int64_t phases = target_rate / g;   // output steps per cycle
  const std::int64_t step = source_rate / g;     // input advance per cycle

  constexpr std::int64_t kMaxPhases = 4096;
  if (phases <= kMaxPhases) {
    // Polyphase: output n has input position t = n*step/phases; its
    // fractional part depends only on n mod phases.
    const std::int64_t tap_count = 2 * reach + 1;
    std::vector<double> table(static_cast<std::size_t>(phases * tap_count));
    for (std::int64_t r = 0; r < phases; ++r) {
      const double frac =
          static_cast<double>((r * step) % phases) / static_cast<double>(phases);
      for (std::int64_t j = 0; j < tap_count; ++j) {
        const double t = static_cast<double>(j - reach) - frac;
        table[static_cast<std::size_t>(r * tap_count + j)] = kernel(t);
      }
    }
    for (std::int64_t n = 0; n < out_len; ++n) {
      const std::int64_t num = n * step;
      const std::int64_t base = num / phases - reach;
      const std::int64_t r = n % phases;
      accumulate(n, base, &table[static_cast<std::size_t>(r * tap_count)], tap_count);
    }
  } else {
    std::vector<double> taps(static_cast<std::size_t>(2 * reach + 1));
    for (std::int64_t n = 0; n < out_len; ++n) {
      const double t = static_cast<double>(n) * source_rate / target_rate;
      const std::int64_t base = static_cast<std::int64_t>(std::floor(t)) - reach;
      for (std::int64_t j = 0; j < 2 * reach + 1; ++j) {
        taps[static_cast<std::size_t>(j)] =
            kernel(static_cast<double>(base + j) - t);
      }
      accumulate(n, base, taps.data(), 2 * reach + 1);
    }
  }
  return out;
}

// Fixed-length window: shorter input is zero-padded at the tail, longer
// input is truncated (with a warning). `truncated`, when given, reports
// whether truncation happened.
inline AudioBuffer pad_to_window(const AudioBuffer& in, double window_seconds,
                                 bool* truncated = nullptr) {
  if (in.sample_rate <= 0) {
    throw ValidationError("pad_to_window: buffer needs a positive sample rate");
  }
  const std::size_t target = static_cast<std::size_t>(
      std::llround(window_seconds * in.sample_rate));
  AudioBuffer out;
  out.sample_rate = in.sample_rate;
  if (truncated) *truncated = in.samples.size() > target;
  if (in.samples.size() > target) {
    log::warn("pad_to_window: truncating " +
              std::to_string(in.duration_seconds()) + " s input to " +
              std::to_string(window_seconds) + " s");
    out.samples.assign(in.samples.begin(),
                       in.samples.begin() + static_cast<std::ptrdiff_t>(target));
  } else {
    out.samples = in.samples;
    out.samples.resize(target, 0.0f);
  }
  return out;
}

}  // namespace gagap

#endif  // GAGAP_AUDIO_HPP

// gagap/wav.hpp
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

#ifndef GAGAP_WAV_HPP
#define GAGAP_WAV_HPP

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "gagap/audio.hpp"
#include "gagap/errors.hpp"

// RIFF/WAVE reader and writer. Reads PCM 16-bit and IEEE float 32-bit, mono
// or stereo (stereo is downmixed by channel average); writes PCM 16-bit
// mono. int16 samples map to floats by division by 32768, so 32767 reads as
// 32767/32768 and the write/read round trip stays within one quantization
// step per sample.

namespace gagap::wav {

namespace detail {

inline std::uint32_t read_u32(std::string_view bytes, std::size_t off) {
  return static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[off])) |
         static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[off + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[off + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[off + 3])) << 24;
}

inline std::uint16_t read_u16(std::string_view bytes, std::size_t off) {
  return static_cast<std::uint16_t>(
      static_cast<std::uint8_t>(bytes[off]) |
      static_cast<std::uint8_t>(bytes[off + 1]) << 8);
}

inline void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

inline void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace detail

inline constexpr std::uint16_t kFormatPcm = 1;
inline constexpr std::uint16_t kFormatIeeeFloat = 3;

inline AudioBuffer read_wav(std::string_view bytes) {
  using detail::read_u16;
  using detail::read_u32;

  if (bytes.size() < 12 || bytes.substr(0, 4) != "RIFF" ||
      bytes.substr(8, 4) != "WAVE") {
    throw MalformedWavError("read_wav: missing RIFF/WAVE header");
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  std::string_view data;
  bool have_data = false;

  std::size_t off = 12;
  while (off + 8 <= bytes.size()) {
    std::string_view id = bytes.substr(off, 4);
    std::uint32_t size = read_u32(bytes, off + 4);
    off += 8;
    if (off + size > bytes.size()) {
      throw MalformedWavError("read_wav: chunk \"" + std::string(id) +
                              "\" overruns file");
    }
    if (id == "fmt ") {
      if (size < 16) throw MalformedWavError("read_wav: fmt chunk too small");
      format = read_u16(bytes, off);
      channels = read_u16(bytes, off + 2);
      sample_rate = read_u32(bytes, off + 4);
      bits = read_u16(bytes, off + 14);
      have_fmt = true;
    } else if (id == "data") {
      data = bytes.substr(off, size);
      have_data = true;
    }
    off += size + (size & 1);  // chunks are word-aligned
  }
  if (!have_fmt) throw MalformedWavError("read_wav: no fmt chunk");
  if (!have_data) throw MalformedWavError("read_wav: no data chunk");
  if (sample_rate == 0) throw MalformedWavError("read_wav: zero sample rate");
  if (channels < 1 || channels > 2) {
    throw UnsupportedFormatError("read_wav: " + std::to_string(channels) +
                                 " channels (only mono/stereo)");
  }
  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatIeeeFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw UnsupportedFormatError("read_wav: format " + std::to_string(format) +
                                 "/" + std::to_string(bits) +
                                 " bits (PCM16 or float32 only)");
  }

  const std::size_t bytes_per_sample = pcm16 ? 2 : 4;
  const std::size_t frame_size = bytes_per_sample * channels;
  if (data.size() % frame_size != 0) {
    throw MalformedWavError("read_wav: data size not a whole number of frames");
  }
  const std::size_t frames = data.size() / frame_size;

  AudioBuffer out;
  out.sample_rate = static_cast<int>(sample_rate);
  out.samples.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (std::uint16_t c = 0; c < channels; ++c) {
      const std::size_t at = f * frame_size + c * bytes_per_sample;
      if (pcm16) {
        std::int16_t v = static_cast<std::int16_t>(read_u16(data, at));
        acc += static_cast<double>(v) / 32768.0;
      } else {
        std::uint32_t raw = read_u32(data, at);
        float v;
        std::memcpy(&v, &raw, sizeof v);
        if (!std::isfinite(v)) {
          throw MalformedWavError("read_wav: non-finite float sample");
        }
        acc += std::clamp(static_cast<double>(v), -1.0, 1.0);
      }
    }
    out.samples[f] = static_cast<float>(acc / channels);
  }
  return out;
}

// PCM 16-bit mono. Samples are clamped to [-1, 1] and quantized with
// round-to-nearest at scale 32768.
inline std::string write_wav(const AudioBuffer& buffer) {
  using detail::put_u16;
  using detail::put_u32;

  const std::uint32_t data_size =
      static_cast<std::uint32_t>(buffer.samples.size() * 2);
  const std::uint32_t rate = static_cast<std::uint32_t>(buffer.sample_rate);

  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  put_u32(out, 36 + data_size);
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);  // mono
  put_u32(out, rate);
  put_u32(out, rate * 2);  // byte rate
  put_u16(out, 2);         // block align
  put_u16(out, 16);        // bits per sample
  out += "data";
  put_u32(out, data_size);
  for (float s : buffer.samples) {
    double clamped = std::clamp(static_cast<double>(s), -1.0, 1.0);
    long q = std::lround(clamped * 32768.0);
    if (q > 32767) q = 32767;
    if (q < -32768) q = -32768;
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  return out;
}

}  // namespace gagap::wav

#endif  // GAGAP_WAV_HPP

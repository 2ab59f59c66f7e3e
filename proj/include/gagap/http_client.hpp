// gagap/http_client.hpp
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

#ifndef GAGAP_HTTP_CLIENT_HPP
#define GAGAP_HTTP_CLIENT_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <utility>

#include <json.hpp>

#include "gagap/errors.hpp"
#include "gagap/synthesis.hpp"

// Minimal HTTP JSON contract for vendor adapters:
//
//   POST {base}/v1/tts      {"text","voice","speed","style_prompt"}
//     -> 200 {"audio_b64": <base64 WAV>, "voice": str, "speed": num}
//   POST {base}/v1/rewrite  {"text","prompt"}
//     -> 200 {"text": str}
//
// Any vendor is mapped onto this shape by a thin proxy. Credentials travel
// via the GAGAP_API_KEY environment variable (sent as a bearer token),
// never via CLI flags. 5xx and 429 responses are retryable; other failures
// are not. The transport is injectable so the JSON mapping is testable
// without sockets.

namespace gagap::http {

struct Response {
  int status = 0;
  std::string body;
};

// (path, json_body) -> response. Throws RetryableError on transport failure.
using Transport = std::function<Response(const std::string&, const std::string&)>;

namespace detail {

inline const char* kBase64Chars =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

inline std::string base64_encode(std::string_view in) {
  std::string out;
  out.reserve((in.size() + 2) / 3 * 4);
  std::size_t i = 0;
  while (i + 2 < in.size()) {
    std::uint32_t v = static_cast<std::uint8_t>(in[i]) << 16 |
                      static_cast<std::uint8_t>(in[i + 1]) << 8 |
                      static_cast<std::uint8_t>(in[i + 2]);
    out.push_back(kBase64Chars[(v >> 18) & 63]);
    out.push_back(kBase64Chars[(v >> 12) & 63]);
    out.push_back(kBase64Chars[(v >> 6) & 63]);
    out.push_back(kBase64Chars[v & 63]);
    i += 3;
  }
  const std::size_t rest = in.size() - i;
  if (rest == 1) {
    std::uint32_t v = static_cast<std::uint8_t>(in[i]) << 16;
    out.push_back(kBase64Chars[(v >> 18) & 63]);
    out.push_back(kBase64Chars[(v >> 12) & 63]);
    out += "==";
  } else if (rest == 2) {
    std::uint32_t v = static_cast<std::uint8_t>(in[i]) << 16 |
                      static_cast<std::uint8_t>(in[i + 1]) << 8;
    out.push_back(kBase64Chars[(v >> 18) & 63]);
    out.push_back(kBase64Chars[(v >> 12) & 63]);
    out.push_back(kBase64Chars[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

inline int base64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

inline std::string base64_decode(std::string_view in) {
  std::string out;
  out.reserve(in.size() / 4 * 3);
  std::uint32_t buf = 0;
  int bits = 0;
  for (char c : in) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = base64_value(c);
    if (v < 0) throw InvalidResponseError("base64: invalid character");
    buf = (buf << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<char>((buf >> bits) & 0xFF));
    }
  }
  return out;
}

inline nlohmann::json parse_json_response(const Response& r) {
  if (r.status == 429 || r.status >= 500) {
    throw RetryableError("server responded " + std::to_string(r.status));
  }
  if (r.status != 200) {
    throw InvalidResponseError("server responded " + std::to_string(r.status));
  }
  nlohmann::json j = nlohmann::json::parse(r.body, nullptr, false);
  if (j.is_discarded()) throw InvalidResponseError("response is not valid JSON");
  return j;
}

}  // namespace detail

// Default transport backed by cpp-httplib. Defined in a function so the
// heavy header is only instantiated where actually used.
Transport make_httplib_transport(const std::string& base_url);

class HttpTtsClient final : public TtsClient {
 public:
  HttpTtsClient(Transport transport, std::shared_ptr<TokenBucket> limiter = nullptr)
      : transport_(std::move(transport)), limiter_(std::move(limiter)) {}

  SynthesisResult synthesize(const SynthesisRequest& request) override {
    validate_request(request);
    wait_for_token();
    nlohmann::json body = {{"text", request.text},
                           {"voice", request.voice},
                           {"speed", request.speed},
                           {"style_prompt", request.style_prompt}};
    nlohmann::json j = detail::parse_json_response(
        transport_("/v1/tts", body.dump()));
    if (!j.contains("audio_b64") || !j["audio_b64"].is_string()) {
      throw InvalidResponseError("tts response missing audio_b64");
    }
    SynthesisResult result;
    result.wav_bytes = detail::base64_decode(j["audio_b64"].get<std::string>());
    result.voice = j.value("voice", request.voice);
    result.speed = j.value("speed", request.speed);
    if (result.wav_bytes.empty()) throw InvalidResponseError("tts response empty audio");
    return result;
  }

 private:
  void wait_for_token() {
    if (!limiter_) return;
    const auto now_seconds = [] {
      return std::chrono::duration<double>(
                 std::chrono::steady_clock::now().time_since_epoch())
          .count();
    };
    while (!limiter_->try_acquire(now_seconds())) {
      const double wait = limiter_->seconds_until_ready(now_seconds());
      std::this_thread::sleep_for(std::chrono::duration<double>(wait));
    }
  }

  Transport transport_;
  std::shared_ptr<TokenBucket> limiter_;
};

class HttpRewriteClient final : public RewriteClient {
 public:
  explicit HttpRewriteClient(Transport transport)
      : transport_(std::move(transport)) {}

  std::string rewrite(const RewriteRequest& request) override {
    validate_request(request);
    nlohmann::json body = {
        {"text", request.text},
        {"prompt", render_prompt(request.instruction_prompt, request.text)}};
    nlohmann::json j = detail::parse_json_response(
        transport_("/v1/rewrite", body.dump()));
    if (!j.contains("text") || !j["text"].is_string()) {
      throw InvalidResponseError("rewrite response missing text");
    }
    return j["text"].get<std::string>();
  }

 private:
  Transport transport_;
};

}  // namespace gagap::http

// httplib is include-once heavy; keep it at the bottom and inline.
#ifndef GAGAP_NO_HTTPLIB
#include <cstdlib>

#include <httplib.h>

namespace gagap::http {

inline Transport make_httplib_transport(const std::string& base_url) {
  return [base_url](const std::string& path, const std::string& body) -> Response {
    httplib::Client client(base_url);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    httplib::Headers headers;
    if (const char* key = std::getenv("GAGAP_API_KEY")) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      throw RetryableError("transport failure: " + httplib::to_string(res.error()));
    }
    return Response{res->status, res->body};
  };
}

}  // namespace gagap::http
#endif  // GAGAP_NO_HTTPLIB

#endif  // GAGAP_HTTP_CLIENT_HPP

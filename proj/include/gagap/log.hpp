// gagap/log.hpp
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

#ifndef GAGAP_LOG_HPP
#define GAGAP_LOG_HPP

#include <atomic>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>

namespace gagap::log {

enum class Level : int { kTrace = 0, kDebug, kInfo, kWarn, kError, kOff };

inline std::atomic<Level>& threshold() {
  static std::atomic<Level> level{Level::kInfo};
  return level;
}

inline void set_level(Level level) { threshold().store(level); }

// Accepts "trace", "debug", "info", "warn", "error", "off".
inline bool set_level(std::string_view name) {
  if (name == "trace") set_level(Level::kTrace);
  else if (name == "debug") set_level(Level::kDebug);
  else if (name == "info") set_level(Level::kInfo);
  else if (name == "warn") set_level(Level::kWarn);
  else if (name == "error") set_level(Level::kError);
  else if (name == "off") set_level(Level::kOff);
  else return false;
  return true;
}

inline const char* level_tag(Level level) {
  switch (level) {
    case Level::kTrace: return "TRACE";
    case Level::kDebug: return "DEBUG";
    case Level::kInfo: return "INFO";
    case Level::kWarn: return "WARN";
    case Level::kError: return "ERROR";
    default: return "?";
  }
}

// All diagnostics go to stderr; stdout is reserved for data.
inline void write(Level level, std::string_view msg) {
  if (level < threshold().load()) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[" << level_tag(level) << "] " << msg << "\n";
}

inline void trace(std::string_view msg) { write(Level::kTrace, msg); }
inline void debug(std::string_view msg) { write(Level::kDebug, msg); }
inline void info(std::string_view msg) { write(Level::kInfo, msg); }
inline void warn(std::string_view msg) { write(Level::kWarn, msg); }
inline void error(std::string_view msg) { write(Level::kError, msg); }

}  // namespace gagap::log

#endif  // GAGAP_LOG_HPP

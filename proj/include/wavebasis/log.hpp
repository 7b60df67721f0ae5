#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace wavebasis::log {

enum class Level { quiet = 0, error = 1, warn = 2, info = 3, debug = 4 };

/// Log level, read once from WAVEBASIS_LOG (error|warn|info|debug). Default: warn.
inline Level level() {
  static const Level lvl = [] {
    const char* env = std::getenv("WAVEBASIS_LOG");
    if (!env) return Level::warn;
    if (!std::strcmp(env, "quiet")) return Level::quiet;
    if (!std::strcmp(env, "error")) return Level::error;
    if (!std::strcmp(env, "warn")) return Level::warn;
    if (!std::strcmp(env, "info")) return Level::info;
    if (!std::strcmp(env, "debug")) return Level::debug;
    return Level::warn;
  }();
  return lvl;
}

inline void emit(Level lvl, const char* tag, const std::string& msg) {
  if (static_cast<int>(lvl) <= static_cast<int>(level()))
    std::fprintf(stderr, "[%s] wavebasis: %s\n", tag, msg.c_str());
}

inline void warn(const std::string& msg) { emit(Level::warn, "warn", msg); }
inline void info(const std::string& msg) { emit(Level::info, "info", msg); }
inline void debug(const std::string& msg) { emit(Level::debug, "debug", msg); }

}  // namespace wavebasis::log

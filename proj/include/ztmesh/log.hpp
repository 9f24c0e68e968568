#pragma once

#include <string_view>

namespace ztmesh::log {

enum class Level { debug = 0, info = 1, warn = 2 };

// Reads ZTMESH_LOG (debug|info) once; defaults to info.
Level threshold();

void write(Level level, std::string_view msg);

inline void debug(std::string_view msg) { write(Level::debug, msg); }
inline void info(std::string_view msg) { write(Level::info, msg); }
inline void warn(std::string_view msg) { write(Level::warn, msg); }

}  // namespace ztmesh::log

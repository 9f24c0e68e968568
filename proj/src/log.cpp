#include "ztmesh/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace ztmesh::log {

Level threshold() {
    static Level level = [] {
        const char* env = std::getenv("ZTMESH_LOG");
        if (env == nullptr) return Level::info;
        std::string v(env);
        if (v == "debug") return Level::debug;
        if (v == "info") return Level::info;
        return Level::warn;
    }();
    return level;
}

void write(Level level, std::string_view msg) {
    if (level < threshold()) return;
    static std::mutex mu;
    std::lock_guard lock(mu);
    const char* tag = level == Level::debug ? "debug" : level == Level::info ? "info" : "warn";
    std::cerr << "[ztmesh:" << tag << "] " << msg << '\n';
}

}  // namespace ztmesh::log

#include "miyazawa/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <string>

namespace miyazawa {

void configure_logging() {
    auto logger = spdlog::get("miyazawa");
    if (!logger) {
        logger = spdlog::stderr_color_st("miyazawa");
        logger->set_pattern("[%l] %v");
    }
    spdlog::set_default_logger(logger);

    const char* env = std::getenv("MIYAZAWA_LOG");
    const std::string level = env != nullptr ? env : "warn";
    if (level == "error") {
        spdlog::set_level(spdlog::level::err);
    } else if (level == "warn") {
        spdlog::set_level(spdlog::level::warn);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else {
        spdlog::set_level(spdlog::level::warn);
        spdlog::warn("MIYAZAWA_LOG='{}' is not one of error, warn, info, debug; using warn", level);
    }
}

}  // namespace miyazawa

#pragma once

#include <stdexcept>
#include <string>

namespace cascadelab {

// Error taxonomy maps onto process exit codes (see tools/main.cpp):
//   config_error -> 2, data_error -> 3, anything else -> 4.

// Invalid parameters or configuration (bad ranges, malformed config keys, ...).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable or malformed input data (edge lists, config files on disk).
struct data_error : std::runtime_error {
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// A generator or algorithm exhausted its retry/restart budget at runtime.
struct generation_error : std::runtime_error {
    explicit generation_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cascadelab

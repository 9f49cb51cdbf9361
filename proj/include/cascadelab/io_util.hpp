#pragma once

#include <filesystem>
#include <string>

namespace cascadelab {

// Writes content via a temp file in the same directory followed by a rename,
// so readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

} // namespace cascadelab

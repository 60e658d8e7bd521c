#pragma once

#include <filesystem>
#include <string>

namespace tpi {

/// Shortest round-trip is not wanted here: always 17 significant digits.
std::string fmt17(double x);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tpi

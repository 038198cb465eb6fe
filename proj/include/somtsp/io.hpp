#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace somtsp {

/// Writes through a sibling temp file and renames it over `path`, so readers
/// never observe a partial file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

} // namespace somtsp

#pragma once

// Location of the bundled data files. Resolution order: set_data_dir(),
// the CORANK_DATA_DIR environment variable, then the build-time default.

#include <filesystem>
#include <string>
#include <vector>

namespace corank {

void set_data_dir(const std::filesystem::path& dir);
std::filesystem::path data_dir();
std::filesystem::path data_path(const std::string& name);

/// Whole file as a string; throws std::runtime_error when unreadable.
std::string read_text_file(const std::filesystem::path& path);
std::string read_data_file(const std::string& name);

/// Strips `#` comments and surrounding whitespace, dropping blank lines.
std::vector<std::string> content_lines(const std::string& text);

}  // namespace corank

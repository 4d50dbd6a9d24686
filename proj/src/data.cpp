#include "corank/data.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#ifndef CORANK_DEFAULT_DATA_DIR
#define CORANK_DEFAULT_DATA_DIR "data"
#endif

namespace corank {

namespace {

std::mutex g_mutex;
std::filesystem::path g_override;

}  // namespace

void set_data_dir(const std::filesystem::path& dir) {
  std::lock_guard lock(g_mutex);
  g_override = dir;
}

std::filesystem::path data_dir() {
  {
    std::lock_guard lock(g_mutex);
    if (!g_override.empty()) return g_override;
  }
  if (const char* env = std::getenv("CORANK_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return CORANK_DEFAULT_DATA_DIR;
}

std::filesystem::path data_path(const std::string& name) { return data_dir() / name; }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_data_file(const std::string& name) { return read_text_file(data_path(name)); }

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace corank

#include "weylpain/data_dir.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "weylpain/error.hpp"

#ifndef WEYLPAIN_DEFAULT_DATA
#define WEYLPAIN_DEFAULT_DATA "data"
#endif

namespace weylpain {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("WEYLPAIN_DATA"); env && *env) return env;
  return WEYLPAIN_DEFAULT_DATA;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace weylpain

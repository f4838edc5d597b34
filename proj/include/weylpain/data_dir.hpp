#ifndef WEYLPAIN_DATA_DIR_HPP
#define WEYLPAIN_DATA_DIR_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace weylpain {

// WEYLPAIN_DATA if set, else the fixture directory of the source tree.
std::filesystem::path data_dir();

std::string read_file(const std::filesystem::path& p);

// Splits into lines, dropping '#' comments and blank lines.
std::vector<std::string> content_lines(const std::string& text);

std::string trim(const std::string& s);
std::vector<std::string> split_ws(const std::string& s);

}  // namespace weylpain

#endif

#include "paedgl/manifest.hpp"

#include <charconv>
#include <fstream>

#include "paedgl/errors.hpp"

namespace paedgl {

KeyValueMap read_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  KeyValueMap out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string trimmed = line.substr(first, last - first + 1);
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError("config line " + std::to_string(line_no) +
                       ": expected key=value");
    std::string key = trimmed.substr(0, eq);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
      key.pop_back();
    std::string value = trimmed.substr(eq + 1);
    while (!value.empty() && (value.front() == ' ' || value.front() == '\t'))
      value.erase(value.begin());
    if (!out.emplace(std::move(key), std::move(value)).second)
      throw ParseError("config line " + std::to_string(line_no) +
                       ": duplicate key");
  }
  return out;
}

void write_manifest(const std::filesystem::path& path, std::string_view command,
                    const std::vector<std::pair<std::string, std::string>>&
                        resolved_options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  out << "# paedgl " << command << " run manifest\n";
  out << "# version " << kToolVersion << "\n";
  out << "# reproduce with: paedgl " << command << " --config "
      << path.filename().string() << "\n";
  for (const auto& [key, value] : resolved_options)
    out << key << "=" << value << "\n";
  if (!out) throw IoError("manifest write failed: " + path.string());
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace paedgl

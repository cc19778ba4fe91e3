#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace paedgl {

inline constexpr std::string_view kToolVersion = "1.0.0";

// key=value text file; '#' starts a comment, blank lines ignored.
using KeyValueMap = std::map<std::string, std::string>;
KeyValueMap read_key_value_file(const std::filesystem::path& path);

// Manifest written alongside every output artifact: the command and tool
// version as comments, then every resolved option as key=value (so the file
// doubles as a --config input that reproduces the run).
void write_manifest(const std::filesystem::path& path, std::string_view command,
                    const std::vector<std::pair<std::string, std::string>>&
                        resolved_options);

// Shortest round-trip decimal form of a double (stable across runs).
std::string format_double(double value);

}  // namespace paedgl

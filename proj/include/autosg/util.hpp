#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace autosg {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

/// Split into lines on '\n'; a trailing newline does not add an empty line.
std::vector<std::string> split_lines(std::string_view text);

/// Lowercase alphanumerics with single '-' separators; used for file keys.
std::string slugify(std::string_view s);

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

std::string url_encode(std::string_view s);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::string_view content);

/// Key/value document: `key = value` lines, '#' comments, blank lines ignored.
/// Duplicate keys are an error; values are trimmed.
std::map<std::string, std::string> parse_kv(std::string_view text);

/// Current wall-clock time as UTC ISO-8601 (seconds resolution).
std::string iso8601_now();

} // namespace autosg

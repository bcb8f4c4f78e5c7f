#ifndef LGX_TEXT_HPP
#define LGX_TEXT_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lgx::text {

/// Unicode NFC normalization of UTF-8 text.
std::string nfc(std::string_view utf8);

std::string_view trim(std::string_view s);

/// Trim then NFC; the canonical form of feature names and lexical cells.
std::string normalize(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char delimiter);

/// Splits on '\n', dropping a trailing '\r' from each line and a leading BOM.
std::vector<std::string_view> lines(std::string_view s);

std::string to_lower_ascii(std::string_view s);

std::string read_file(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::string_view contents);

} // namespace lgx::text

#endif

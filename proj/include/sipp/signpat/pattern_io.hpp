#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "sipp/signpat/sign_pattern.hpp"

namespace sipp {

/// Rows of '+', '-', '0'; blank lines and surrounding whitespace are ignored.
SignPattern parse_pattern_text(std::string_view text);

/// JSON grid [[1, 0, -1], ...]; rows may also be strings such as "+0-".
SignPattern pattern_from_json(const nlohmann::json& j);
nlohmann::json pattern_to_json(const SignPattern& s);

/// Text or JSON, decided by the first non-blank character.
SignPattern parse_pattern(std::string_view content);
SignPattern read_pattern_file(const std::filesystem::path& path);

}  // namespace sipp

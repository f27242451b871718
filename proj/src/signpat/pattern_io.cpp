#include "sipp/signpat/pattern_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sipp {

using nlohmann::json;

SignPattern parse_pattern_text(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<int> row;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c == '+') row.push_back(1);
      else if (c == '-') row.push_back(-1);
      else if (c == '0') row.push_back(0);
      else throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": unexpected character '" + c + "'");
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": row length differs from the first row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, "empty sign pattern");
  return SignPattern::from_rows(rows);
}

SignPattern pattern_from_json(const json& j) {
  const json& grid = j.is_object() && j.contains("pattern") ? j["pattern"] : j;
  if (!grid.is_array() || grid.empty()) throw Error(ErrorKind::Parse, "sign pattern JSON must be a nonempty array of rows");
  std::vector<std::vector<int>> rows;
  for (const auto& r : grid) {
    std::vector<int> row;
    if (r.is_string()) {
      for (char c : r.get<std::string>()) {
        if (c == '+') row.push_back(1);
        else if (c == '-') row.push_back(-1);
        else if (c == '0') row.push_back(0);
        else throw Error(ErrorKind::Parse, std::string("unexpected character '") + c + "' in sign pattern row");
      }
    } else if (r.is_array()) {
      for (const auto& x : r) {
        if (!x.is_number_integer()) throw Error(ErrorKind::Parse, "sign pattern entries must be -1, 0 or 1");
        const auto v = x.get<long>();
        if (v < -1 || v > 1) throw Error(ErrorKind::Parse, "sign pattern entries must be -1, 0 or 1");
        row.push_back(static_cast<int>(v));
      }
    } else {
      throw Error(ErrorKind::Parse, "sign pattern rows must be arrays or \"+-0\" strings");
    }
    if (row.empty()) throw Error(ErrorKind::Parse, "empty sign pattern row");
    if (!rows.empty() && row.size() != rows.front().size()) throw Error(ErrorKind::Parse, "ragged sign pattern rows");
    rows.push_back(std::move(row));
  }
  return SignPattern::from_rows(rows);
}

json pattern_to_json(const SignPattern& s) {
  json grid = json::array();
  for (std::size_t i = 0; i < s.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < s.cols(); ++j) row.push_back(s(i, j));
    grid.push_back(std::move(row));
  }
  return grid;
}

SignPattern parse_pattern(std::string_view content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::Parse, "empty sign pattern");
  if (content[first] == '[' || content[first] == '{') {
    json j;
    try {
      j = json::parse(content);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::Parse, e.what());
    }
    return pattern_from_json(j);
  }
  return parse_pattern_text(content);
}

SignPattern read_pattern_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_pattern(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace sipp

#include "sipp/linalg/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace sipp {

using nlohmann::json;

namespace {

enum class EntryForm { Number, String };

EntryForm detect_form(const json& j, std::size_t& rows, std::size_t& cols) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw Error(ErrorKind::Parse, "matrix JSON needs \"rows\", \"cols\" and \"entries\"");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
    throw Error(ErrorKind::Parse, "\"rows\" and \"cols\" must be nonnegative integers");
  rows = j["rows"].get<std::size_t>();
  cols = j["cols"].get<std::size_t>();
  const json& e = j["entries"];
  if (!e.is_array() || e.size() != rows) throw Error(ErrorKind::Parse, "\"entries\" must hold one array per row");
  bool any_number = false, any_string = false;
  for (const auto& row : e) {
    if (!row.is_array() || row.size() != cols) throw Error(ErrorKind::Parse, "each row must hold \"cols\" entries");
    for (const auto& x : row) {
      if (x.is_number()) any_number = true;
      else if (x.is_string()) any_string = true;
      else throw Error(ErrorKind::Parse, "entries must be numbers or \"p/q\" strings");
    }
  }
  if (any_number && any_string) throw Error(ErrorKind::Parse, "matrix file mixes numeric and \"p/q\" entries");
  return any_string ? EntryForm::String : EntryForm::Number;
}

Matrix<Rational> read_strings(const json& e, std::size_t rows, std::size_t cols) {
  Matrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_rational(e[i][j].get<std::string>());
  return m;
}

Matrix<double> read_numbers(const json& e, std::size_t rows, std::size_t cols) {
  Matrix<double> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = e[i][j].get<double>();
  return m;
}

}  // namespace

AnyMatrix matrix_from_json(const json& j) {
  std::size_t rows = 0, cols = 0;
  if (detect_form(j, rows, cols) == EntryForm::String) return read_strings(j["entries"], rows, cols);
  return read_numbers(j["entries"], rows, cols);
}

Matrix<Rational> exact_matrix_from_json(const json& j) {
  std::size_t rows = 0, cols = 0;
  if (detect_form(j, rows, cols) == EntryForm::Number && rows * cols > 0)
    throw Error(ErrorKind::Parse, "exact mode requires \"p/q\" string entries");
  return read_strings(j["entries"], rows, cols);
}

Matrix<double> float_matrix_from_json(const json& j) {
  auto any = matrix_from_json(j);
  if (auto* q = std::get_if<Matrix<Rational>>(&any)) return to_double(*q);
  return std::get<Matrix<double>>(any);
}

json to_json(const Matrix<Rational>& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json to_json(const Matrix<double>& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    entries.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace sipp

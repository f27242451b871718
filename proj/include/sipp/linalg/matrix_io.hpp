#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "sipp/linalg/matrix.hpp"

namespace sipp {

enum class ScalarMode { Exact, Float };

/// A matrix file decoded in whichever form its entries were written.
using AnyMatrix = std::variant<Matrix<Rational>, Matrix<double>>;

/// Matrix file schema: {"rows": m, "cols": n, "entries": [[...], ...]} with
/// every entry a JSON number (float form) or every entry a "p/q" string
/// (exact form). Mixed files are rejected.
AnyMatrix matrix_from_json(const nlohmann::json& j);

/// Exact-mode read: float-form input is rejected.
Matrix<Rational> exact_matrix_from_json(const nlohmann::json& j);

/// Float-mode read: exact-form entries are converted.
Matrix<double> float_matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Matrix<Rational>& m);
nlohmann::json to_json(const Matrix<double>& m);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace sipp

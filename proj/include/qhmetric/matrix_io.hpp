#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "qhmetric/linalg.hpp"

namespace qhm::io {

/// {"dim": n, "entries": [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Inverse of matrix_to_json. Plain numbers are accepted as real entries.
/// Throws ParseError on malformed documents.
ComplexMatrix matrix_from_json(const nlohmann::json& doc);

ComplexMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const ComplexMatrix& m, const std::filesystem::path& path);

}  // namespace qhm::io

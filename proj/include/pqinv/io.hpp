#pragma once

// MatrixFile JSON: {"rows": R, "cols": C, "data": [[re, im], ...]} in
// row-major order. Doubles are written in shortest round-trip form, and
// every object has sorted keys so reports diff cleanly.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pqinv/pqinv.hpp"
#include "pqinv/verify.hpp"

namespace pqinv::io {

using json = nlohmann::json;

/// Throws ValidationError when rows/cols are not positive, the data length
/// is wrong, or an entry is not a finite [re, im] pair.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);

CMatrix parse_matrix(const std::string& text);
/// Reads and validates a MatrixFile; the message names the file on failure.
CMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const CMatrix& m);

json to_json(const Tolerances& tol);
json to_json(const Residuals& r);
json to_json(const ExistenceReport& report);
json to_json(const PqResult& result);
json to_json(const verify::SuiteReport& report);

}  // namespace pqinv::io

#include "pqinv/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pqinv::io {

namespace {

double finite_number(const json& v, const char* what) {
  if (!v.is_number()) throw ValidationError(std::string("matrix file: ") + what + " is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(std::string("matrix file: ") + what + " is not finite");
  return x;
}

std::size_t positive_dim(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("matrix file: missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw ValidationError(std::string("matrix file: \"") + key + "\" must be a positive integer");
  return v.get<std::size_t>();
}

}  // namespace

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("matrix file: top level must be an object");
  const std::size_t rows = positive_dim(j, "rows");
  const std::size_t cols = positive_dim(j, "cols");
  if (!j.contains("data") || !j.at("data").is_array()) throw ValidationError("matrix file: \"data\" must be an array");
  const json& data = j.at("data");
  if (data.size() != rows * cols) {
    throw ValidationError("matrix file: data length " + std::to_string(data.size()) + " ≠ rows×cols = " +
                          std::to_string(rows * cols));
  }
  std::vector<cplx> values;
  values.reserve(data.size());
  for (const json& e : data) {
    if (!e.is_array() || e.size() != 2) throw ValidationError("matrix file: each entry must be an [re, im] pair");
    values.emplace_back(finite_number(e[0], "re"), finite_number(e[1], "im"));
  }
  return CMatrix(rows, cols, std::move(values));
}

json matrix_to_json(const CMatrix& m) {
  json data = json::array();
  for (const cplx z : m.data()) data.push_back(json::array({z.real(), z.imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("matrix file: ") + e.what());
  }
  return matrix_from_json(j);
}

CMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_matrix(const std::filesystem::path& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << matrix_to_json(m).dump() << '\n';
  if (!out) throw ValidationError("write failed: " + path.string());
}

json to_json(const Tolerances& tol) {
  return {{"rank_rtol", tol.rank_rtol}, {"eq_atol", tol.eq_atol}, {"eq_rtol", tol.eq_rtol}, {"conv_tol", tol.conv_tol}};
}

json to_json(const Residuals& r) {
  return {{"outer", r.outer},
          {"inner", r.inner},
          {"range_distance", r.range_distance},
          {"kernel_distance", r.kernel_distance},
          {"ba_minus_p", r.ba_minus_p},
          {"ab_minus_1q", r.ab_minus_1q}};
}

json to_json(const ExistenceReport& report) {
  return {{"ker_cap_ranp_trivial", report.ker_cap_ranp_trivial},
          {"direct_sum", report.direct_sum},
          {"image_match", report.image_match},
          {"cond5", report.cond5},
          {"cond6", report.cond6()},
          {"strict_exists", report.strict_exists},
          {"l_exists", report.l_exists},
          {"l12_exists", report.l12_exists},
          {"strict12_exists", report.strict12_exists},
          {"dims", {{"ran_p", report.dims.ran_p}, {"ran_q", report.dims.ran_q}, {"rank_a", report.dims.rank_a}}},
          {"fragile", report.fragile},
          {"consistent", report.consistent},
          {"tolerances", to_json(report.tol)}};
}

json to_json(const PqResult& result) {
  return {{"kind", std::string(to_string(result.kind))},
          {"route", std::string(to_string(result.route))},
          {"residuals", to_json(result.residuals)},
          {"b", matrix_to_json(result.b)}};
}

json to_json(const verify::SuiteReport& report) {
  json cases = json::array();
  for (const auto& c : report.cases) {
    json residuals = json::object();
    for (const auto& [k, v] : c.residuals) residuals[k] = v;
    cases.push_back({{"name", c.name},
                     {"status", std::string(verify::to_string(c.status))},
                     {"residuals", std::move(residuals)},
                     {"elapsed_ms", c.elapsed_ms},
                     {"failures", c.failures}});
  }
  return {{"suite", report.suite},
          {"seed", report.seed},
          {"trials", report.trials},
          {"summary", {{"passed", report.passed}, {"failed", report.failed}, {"fragile", report.fragile}}},
          {"cases", std::move(cases)}};
}

}  // namespace pqinv::io

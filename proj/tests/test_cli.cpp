#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "pqinv/cli.hpp"
#include "pqinv/io.hpp"
#include "pqinv/random.hpp"
#include "pqinv/verify.hpp"

using namespace pqinv;
namespace fs = std::filesystem;
using io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pqinv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Scratch directory holding the published 2x2 data and a few variants.
struct Files {
  fs::path dir;
  Files() {
    dir = fs::temp_directory_path() / ("pqinv_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    put("a", CMatrix::from_rows({{0, 0}, {1, 0}}));
    put("p", CMatrix::from_rows({{1, 1}, {0, 0}}));
    put("q", CMatrix::from_rows({{1, -1}, {0, 0}}));
    put("q_variant", CMatrix::diag({1, 0}));
    put("i", CMatrix::identity(2));
    put("zero", CMatrix(2, 2));
    put("w", CMatrix::from_rows({{0, 1}, {0, 0}}));
    put("rot", CMatrix::from_rows({{0, 1}, {-1, 0}}));
    put("not_idempotent", CMatrix::from_rows({{1, 1}, {0, 1}}));
  }
  ~Files() { fs::remove_all(dir); }
  void put(const std::string& name, const CMatrix& m) const { io::write_matrix(dir / (name + ".json"), m); }
  std::string operator[](const std::string& name) const { return (dir / (name + ".json")).string(); }
};

}  // namespace

TEST_CASE("matrix files round-trip bit for bit") {
  Files f;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  CMatrix m(3, 4);
  for (auto& z : m.data()) z = {u(rng) * 1e-7, u(rng)};
  m(0, 0) = {0.1, -0.0};
  m(1, 1) = {5e-324, 1.7976931348623157e308};
  f.put("rt", m);
  const CMatrix back = io::read_matrix(f["rt"]);
  CHECK(back == m);
  CHECK(std::signbit(back(0, 0).imag()));
}

TEST_CASE("matrix file validation") {
  CHECK_THROWS_WITH_AS(io::parse_matrix(R"({"rows":2,"cols":2,"data":[[1,0]]})"), doctest::Contains("data length"),
                       ValidationError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows":0,"cols":2,"data":[]})"), ValidationError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows":1,"cols":1,"data":[[1]]})"), ValidationError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows":1,"cols":1,"data":[["x",0]]})"), ValidationError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows":1,"cols":1,"data":[[1e999,0]]})"), ValidationError);
  CHECK_THROWS_AS(io::parse_matrix("{not json"), ValidationError);
  CHECK_THROWS_AS(io::parse_matrix("[1,2]"), ValidationError);
  CHECK(io::parse_matrix(R"({"rows":1,"cols":2,"data":[[1,2],[3,-4.5]]})") ==
        CMatrix(1, 2, {cplx(1, 2), cplx(3, -4.5)}));
  CHECK_THROWS_AS(io::read_matrix("/nonexistent/file.json"), ValidationError);
}

TEST_CASE("check reports the published verdicts") {
  Files f;
  const auto r = run({"check", f["a"], f["p"], f["q"]});
  REQUIRE(r.code == cli::kOk);
  const json j = json::parse(r.out);
  CHECK(j["strict_exists"] == false);
  CHECK(j["l_exists"] == true);
  CHECK(j["direct_sum"] == true);
  CHECK(j["image_match"] == false);
  CHECK(j.contains("fragile"));
  CHECK(j["tolerances"]["rank_rtol"] == 1e-10);

  const auto id = run({"check", f["i"], f["i"], f["zero"]});
  REQUIRE(id.code == cli::kOk);
  const json k = json::parse(id.out);
  for (const char* key : {"ker_cap_ranp_trivial", "direct_sum", "image_match", "cond5", "cond6", "strict_exists",
                          "l_exists", "l12_exists", "strict12_exists"}) {
    CAPTURE(key);
    CHECK(k[key] == true);
  }
}

TEST_CASE("check rejects invalid input with exit 2") {
  Files f;
  const auto bad = run({"check", f["a"], f["not_idempotent"], f["q"]});
  CHECK(bad.code == cli::kInvalidInput);
  CHECK(bad.err.find("p fails p²=p") != std::string::npos);
  CHECK(run({"check", f["a"], f["p"], "/nonexistent.json"}).code == cli::kInvalidInput);
  CHECK(run({"check", f["a"], f["p"]}).code == cli::kInvalidInput);
  CHECK(run({"nosuchcommand"}).code == cli::kInvalidInput);
  CHECK(run({"check", f["a"], f["p"], f["q"], "--rank-rtol", "-1"}).code == cli::kInvalidInput);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("compute writes b and residuals") {
  Files f;
  const auto out_file = (f.dir / "b.json").string();
  const auto r = run({"compute", f["a"], f["p"], f["q"], "--kind", "2l", "--out", out_file});
  REQUIRE(r.code == cli::kOk);
  const CMatrix b = io::read_matrix(out_file);
  CHECK(oracle::dist(b, CMatrix::from_rows({{0, 1}, {0, 0}})) <= 1e-12);
  const json j = json::parse(r.out);
  CHECK(j["kind"] == "outer2l");
  CHECK(j["residuals"]["outer"].get<double>() <= 1e-12);

  for (const char* route : {"inner", "direct", "limit"}) {
    const auto rr = run({"compute", f["a"], f["p"], f["q"], "--kind", "2l", "--route", route});
    CAPTURE(route);
    CHECK(rr.code == cli::kOk);
  }

  const auto mp = run({"compute", f["a"], "--kind", "mp"});
  REQUIRE(mp.code == cli::kOk);
  CHECK(oracle::dist(io::matrix_from_json(json::parse(mp.out)["b"]), CMatrix::from_rows({{0, 1}, {0, 0}})) <= 1e-14);

  const auto dz = run({"compute", f["w"], "--kind", "drazin"});
  REQUIRE(dz.code == cli::kOk);
  CHECK(json::parse(dz.out)["index"] == 2);
}

TEST_CASE("compute exit codes for nonexistence") {
  Files f;
  const auto strict = run({"compute", f["a"], f["p"], f["q"], "--kind", "2"});
  CHECK(strict.code == cli::kNonexistent);
  CHECK(strict.err.find("ba ≠ p") != std::string::npos);
  CHECK(run({"compute", f["w"], "--kind", "group"}).code == cli::kNonexistent);
  CHECK(run({"compute", f["a"], f["p"], f["q"], "--kind", "12"}).code == cli::kNonexistent);
  CHECK(run({"compute", f["a"], f["p"], f["q"], "--kind", "bogus"}).code == cli::kInvalidInput);
  CHECK(run({"compute", f["a"], "--kind", "2l"}).code == cli::kInvalidInput);
}

TEST_CASE("represent traces the limit and integral routes") {
  Files f;
  // a w = diag(0,1) for the published a and w = [[0,1],[0,0]]
  const auto out_file = (f.dir / "lim.json").string();
  const auto lim = run({"represent", f["a"], f["p"], f["q"], "--method", "limit", "--lambda-min", "1e-6", "--w",
                        f["w"], "--out", out_file});
  REQUIRE(lim.code == cli::kOk);
  std::istringstream rows(lim.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "lambda,cauchy_difference");
  int count = 0;
  while (std::getline(rows, line)) {
    const double lambda = std::stod(line.substr(0, line.find(',')));
    const double diff = std::stod(line.substr(line.find(',') + 1));
    // differences between 10 lambda and lambda are about 9 lambda
    CHECK(diff == doctest::Approx(9 * lambda).epsilon(0.1));
    ++count;
  }
  CHECK(count == 4);
  const CMatrix b = io::read_matrix(out_file);
  CHECK(std::abs(b(0, 1) - 1.0 / (1.0 + 1e-6)) <= 1e-15);
  CHECK(oracle::dist(b, CMatrix::from_rows({{0, 1}, {0, 0}})) == doctest::Approx(1e-6).epsilon(1e-5));

  const auto integral = run({"represent", f["a"], f["p"], f["q"], "--method", "integral", "--w", f["w"], "--out", out_file});
  REQUIRE(integral.code == cli::kOk);
  std::istringstream irows(integral.out);
  std::getline(irows, line);
  CHECK(line == "horizon,tail_bound");
  while (std::getline(irows, line)) {
    const double t = std::stod(line.substr(0, line.find(',')));
    const double tail = std::stod(line.substr(line.find(',') + 1));
    CHECK(tail == doctest::Approx(std::exp(-t)).epsilon(1e-9));
  }
  const auto ref = run({"compute", f["a"], f["p"], f["q"], "--kind", "2l"});
  const CMatrix want = io::matrix_from_json(json::parse(ref.out)["b"]);
  CHECK(oracle::dist(io::read_matrix(out_file), want) <= 1e-8);

  // rotation generator: spec(aw) = {i, -i}
  const auto rot = run({"represent", f["rot"], f["i"], f["zero"], "--method", "integral", "--w", f["i"]});
  CHECK(rot.code == cli::kSpectral);
}

TEST_CASE("suites report through the CLI") {
  const auto paper = run({"verify-paper"});
  CHECK(paper.code == cli::kOk);
  const json j = json::parse(paper.out);
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["cases"].size() == 4);

  const auto fz = run({"fuzz", "--seed", "3", "--trials", "20", "--dim", "5"});
  CHECK(fz.code == cli::kOk);
  CHECK(json::parse(fz.out)["trials"] == 20);
  CHECK(run({"fuzz", "--dim", "0"}).code == cli::kInvalidInput);
  CHECK(run({"fuzz", "--dim", "33"}).code == cli::kInvalidInput);
  CHECK(run({"fuzz", "--trials", "0"}).code == cli::kInvalidInput);
}

TEST_CASE("PQINV_TOL_RANK overrides the default rank threshold") {
  Files f;
  ::setenv("PQINV_TOL_RANK", "1e-6", 1);
  const auto r = run({"check", f["a"], f["p"], f["q"]});
  ::setenv("PQINV_TOL_RANK", "nonsense", 1);
  const auto bad = run({"check", f["a"], f["p"], f["q"]});
  ::unsetenv("PQINV_TOL_RANK");
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["tolerances"]["rank_rtol"] == 1e-6);
  CHECK(bad.code == cli::kInvalidInput);
}

TEST_CASE("fuzz is deterministic and sorted") {
  const auto x = verify::fuzz(99, 15, 6);
  const auto y = verify::fuzz(99, 15, 6);
  REQUIRE(x.cases.size() == 15);
  for (std::size_t i = 0; i < x.cases.size(); ++i) {
    CHECK(x.cases[i].name == y.cases[i].name);
    CHECK(x.cases[i].residuals == y.cases[i].residuals);
    if (i > 0) CHECK(x.cases[i - 1].name < x.cases[i].name);
  }
  CHECK(x.passed + x.failed + x.fragile == 15);
}

TEST_CASE("paper suite contains each published example exactly once") {
  const auto r = verify::run_paper_examples();
  CHECK(r.ok());
  std::set<std::string> names;
  for (const auto& c : r.cases) names.insert(c.name);
  CHECK(names.size() == r.cases.size());
  CHECK(names.count("counterexample_statement_iii") == 1);
  CHECK(names.count("direct_sum_without_image_match") == 1);
  CHECK(names.count("image_match_without_strict_inverse") == 1);
  CHECK(names.count("l_inverse_of_counterexample") == 1);
}

TEST_CASE("fuzz at dimension one") {
  const auto r = verify::fuzz(1, 50, 1);
  CHECK(r.ok());
}

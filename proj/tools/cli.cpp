#include "pqinv/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "pqinv/ginv.hpp"
#include "pqinv/io.hpp"
#include "pqinv/pqinv.hpp"
#include "pqinv/verify.hpp"

namespace pqinv::cli {
namespace {

using io::json;

struct Inputs {
  std::string a_file;
  std::string p_file;
  std::string q_file;
};

struct Options {
  Tolerances tol;
  Inputs in;
  std::string kind = "2l";
  std::string route = "group";
  std::string method = "limit";
  std::string out_file;
  std::string w_file;
  double lambda_min = 1e-8;
  double horizon = 0.0;
  std::uint64_t seed = 42;
  std::size_t trials = 200;
  std::size_t dim = 8;
};

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

PqProblem load_problem(const Options& o) {
  if (o.in.p_file.empty() || o.in.q_file.empty()) throw ValidationError("this command needs a, p and q files");
  return PqProblem(io::read_matrix(o.in.a_file), io::read_matrix(o.in.p_file), io::read_matrix(o.in.q_file), o.tol);
}

Route parse_route(const std::string& s) {
  if (s == "group") return Route::group_formula;
  if (s == "inner") return Route::inner_formula;
  if (s == "limit") return Route::limit;
  if (s == "integral") return Route::integral;
  if (s == "direct") return Route::direct;
  throw ValidationError("unknown route '" + s + "'");
}

void maybe_write(const Options& o, const CMatrix& b) {
  if (!o.out_file.empty()) io::write_matrix(o.out_file, b);
}

int cmd_check(const Options& o, std::ostream& out) {
  print(out, io::to_json(pq::diagnose(load_problem(o))));
  return kOk;
}

json penrose_json(const ginv::PenroseResiduals& r) {
  return {{"axa_minus_a", r.axa_minus_a},
          {"xax_minus_x", r.xax_minus_x},
          {"ax_hermitian", r.ax_hermitian},
          {"xa_hermitian", r.xa_hermitian}};
}

int cmd_compute(const Options& o, std::ostream& out) {
  if (o.kind == "group" || o.kind == "drazin" || o.kind == "mp") {
    const CMatrix a = io::read_matrix(o.in.a_file);
    if (!a.is_square() && o.kind != "mp") throw DimensionError(o.kind + " needs a square matrix, got " + shape_string(a));
    json report{{"kind", o.kind}, {"tolerances", io::to_json(o.tol)}};
    CMatrix b;
    if (o.kind == "mp") {
      b = ginv::moore_penrose(a, o.tol);
      report["residuals"] = penrose_json(ginv::penrose_residuals(a, b));
    } else if (o.kind == "group") {
      const auto g = ginv::group_inverse(a, o.tol);
      if (!g) throw NonexistenceError("rank(a) ≠ rank(a²)");
      b = *g;
      report["residuals"] = penrose_json(ginv::penrose_residuals(a, b));
    } else {
      const auto d = ginv::drazin_inverse(a, o.tol);
      b = d.inverse;
      const auto r = ginv::drazin_residuals(a, b, d.index);
      report["index"] = d.index;
      report["residuals"] = {{"power_identity", r.power_identity}, {"outer", r.outer}, {"commute", r.commute}};
    }
    report["b"] = io::matrix_to_json(b);
    maybe_write(o, b);
    print(out, report);
    return kOk;
  }

  const PqProblem prob = load_problem(o);
  PqResult result;
  if (o.kind == "2l") {
    result = pq::outer_2l(prob, parse_route(o.route));
  } else if (o.kind == "2") {
    result = pq::outer_2_strict(prob);
  } else if (o.kind == "12l") {
    result = pq::one_two_l(prob);
  } else if (o.kind == "12") {
    result = pq::one_two_strict(prob);
  } else {
    throw ValidationError("unknown kind '" + o.kind + "'");
  }
  json report = io::to_json(result);
  report["tolerances"] = io::to_json(o.tol);
  maybe_write(o, result.b);
  print(out, report);
  return kOk;
}

std::vector<double> schedule_down_to(double lambda_min) {
  if (!(lambda_min > 0.0) || !std::isfinite(lambda_min)) throw ValidationError("--lambda-min must be positive");
  std::vector<double> s;
  for (double l = 1e-2; l > lambda_min * (1.0 + 1e-9); l *= 0.1) s.push_back(l);
  s.push_back(lambda_min);
  return s;
}

int cmd_represent(const Options& o, std::ostream& out, std::ostream& err) {
  const PqProblem prob = load_problem(o);
  const CMatrix w = o.w_file.empty() ? pq::construct_w(prob.p(), prob.q(), o.tol) : io::read_matrix(o.w_file);
  out << std::setprecision(17);
  CMatrix b;
  if (o.method == "limit") {
    const auto r = pq::repr_limit(prob.a(), w, schedule_down_to(o.lambda_min), o.tol);
    out << "lambda,cauchy_difference\n";
    for (const auto& row : r.trace) out << row.lambda << ',' << row.cauchy_difference << '\n';
    b = r.b;
  } else if (o.method == "integral") {
    if (o.horizon < 0.0 || !std::isfinite(o.horizon)) throw ValidationError("--horizon must be >= 0 (0 picks one)");
    const auto r = pq::repr_integral(prob.a(), w, o.horizon, 1, o.tol);
    out << "horizon,tail_bound\n";
    const CMatrix aw = prob.a() * w;
    constexpr int kRows = 8;
    for (int k = 1; k <= kRows && r.decay_rate > 0.0; ++k) {
      const double t = r.horizon * k / kRows;
      out << t << ',' << (w * densela::matrix_exp(-t * aw)).frobenius_norm() / r.decay_rate << '\n';
    }
    b = r.b;
    err << "quadrature_error=" << r.quadrature_error << " panels=" << r.panels << '\n';
  } else {
    throw ValidationError("unknown method '" + o.method + "'");
  }
  maybe_write(o, b);
  return kOk;
}

int cmd_suite(const verify::SuiteReport& report, std::ostream& out) {
  print(out, io::to_json(report));
  return report.ok() ? kOk : kSuiteFailed;
}

/// Maps the library's error types onto the exit-code contract.
int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const NonexistenceError& e) {
    err << "nonexistent: " << e.reason() << '\n';
    return kNonexistent;
  } catch (const SpectralError& e) {
    err << "spectral precondition: " << e.what() << '\n';
    return kSpectral;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("PQINV_TOL_RANK"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (*end != '\0' || !(v >= 0.0) || !std::isfinite(v)) {
      err << "invalid input: PQINV_TOL_RANK='" << env << "' is not a non-negative number\n";
      return kInvalidInput;
    }
    o.tol.rank_rtol = v;
  }

  CLI::App app{"Outer and {1,2} inverses with prescribed idempotents"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--rank-rtol", o.tol.rank_rtol, "relative singular-value cutoff for ranks")->capture_default_str();
  app.add_option("--eq-atol", o.tol.eq_atol, "absolute equality tolerance")->capture_default_str();
  app.add_option("--eq-rtol", o.tol.eq_rtol, "relative equality tolerance")->capture_default_str();
  app.add_option("--conv-tol", o.tol.conv_tol, "limit/integral convergence target")->capture_default_str();

  const auto add_inputs = [&](CLI::App* sub, bool pq_required) {
    sub->add_option("a", o.in.a_file, "matrix file for a")->required();
    auto* p = sub->add_option("p", o.in.p_file, "matrix file for p");
    auto* q = sub->add_option("q", o.in.q_file, "matrix file for q");
    if (pq_required) {
      p->required();
      q->required();
    }
  };

  auto* check = app.add_subcommand("check", "existence diagnosis as JSON");
  add_inputs(check, true);

  auto* compute = app.add_subcommand("compute", "compute an inverse");
  add_inputs(compute, false);
  compute->add_option("--kind", o.kind, "2l|2|12l|12|group|drazin|mp")
      ->check(CLI::IsMember({"2l", "2", "12l", "12", "group", "drazin", "mp"}))
      ->capture_default_str();
  compute->add_option("--route", o.route, "group|inner|limit|integral|direct (kind 2l)")
      ->check(CLI::IsMember({"group", "inner", "limit", "integral", "direct"}))
      ->capture_default_str();
  compute->add_option("--out", o.out_file, "write b as a matrix file");

  auto* represent = app.add_subcommand("represent", "CSV convergence trace of the limit or integral route");
  add_inputs(represent, true);
  represent->add_option("--method", o.method, "limit|integral")
      ->check(CLI::IsMember({"limit", "integral"}))
      ->capture_default_str();
  represent->add_option("--lambda-min", o.lambda_min, "smallest lambda of the 1e-2, 1e-3, ... schedule")
      ->capture_default_str();
  represent->add_option("--horizon", o.horizon, "integration horizon, 0 = automatic")->capture_default_str();
  represent->add_option("--w", o.w_file, "w with Ran w = Ran p, Ker w = Ran q (default U N^H)");
  represent->add_option("--out", o.out_file, "write the final matrix");

  auto* verify_paper = app.add_subcommand("verify-paper", "rebuild the published counterexamples");

  auto* fuzz = app.add_subcommand("fuzz", "randomized property battery");
  fuzz->add_option("--seed", o.seed)->capture_default_str();
  fuzz->add_option("--trials", o.trials)->capture_default_str();
  fuzz->add_option("--dim", o.dim, "maximum dimension, 1..32")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  return guarded(
      [&] {
        o.tol.validate();
        if (check->parsed()) return cmd_check(o, out);
        if (compute->parsed()) return cmd_compute(o, out);
        if (represent->parsed()) return cmd_represent(o, out, err);
        if (verify_paper->parsed()) return cmd_suite(verify::run_paper_examples(), out);
        return cmd_suite(verify::fuzz(o.seed, o.trials, o.dim), out);
      },
      err);
}

}  // namespace pqinv::cli

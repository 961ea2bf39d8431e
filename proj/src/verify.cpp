#include "pqinv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "pqinv/ginv.hpp"
#include "pqinv/pqinv.hpp"
#include "pqinv/random.hpp"
#include "pqinv/subspace.hpp"

namespace pqinv::verify {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::fragile:
      return "fragile";
  }
  return "unknown";
}

namespace {

using namespace subspace;

class Checker {
public:
  explicit Checker(std::string name) : start_(std::chrono::steady_clock::now()) { case_.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    if (!ok) case_.failures.push_back(what);
  }
  /// Records `value` and fails when it exceeds `bound`.
  void bounded(const std::string& what, double value, double bound) {
    case_.residuals[what] = std::max(case_.residuals[what], value);
    if (!(value <= bound)) case_.failures.push_back(what + " exceeds bound");
  }
  void record(const std::string& what, double value) { case_.residuals[what] = value; }
  void mark_fragile() { fragile_ = true; }

  /// Runs `body`, turning any escaping exception into a failure.
  void guarded(const std::string& what, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      case_.failures.push_back(what + ": " + e.what());
    }
  }

  Case finish() {
    case_.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    case_.status = !case_.failures.empty() ? Status::fail : fragile_ ? Status::fragile : Status::pass;
    return std::move(case_);
  }

private:
  Case case_;
  bool fragile_ = false;
  std::chrono::steady_clock::time_point start_;
};

double rel(double residual, double scale) { return residual / std::max(1.0, scale); }

void finalize(SuiteReport& report) {
  std::sort(report.cases.begin(), report.cases.end(), [](const Case& x, const Case& y) { return x.name < y.name; });
  for (const auto& c : report.cases) {
    switch (c.status) {
      case Status::pass:
        ++report.passed;
        break;
      case Status::fail:
        ++report.failed;
        break;
      case Status::fragile:
        ++report.fragile;
        break;
    }
  }
}

// Published 2x2 data: a, p, 1 - q and the candidate b.
const CMatrix kA = CMatrix::from_rows({{0, 0}, {1, 0}});
const CMatrix kP = CMatrix::from_rows({{1, 1}, {0, 0}});
const CMatrix kOneMinusQ = CMatrix::from_rows({{0, 1}, {0, 1}});
const CMatrix kB = CMatrix::from_rows({{0, 1}, {0, 0}});
const CMatrix kOneMinusQVariant = CMatrix::from_rows({{0, 0}, {0, 1}});

Case statement_iii_counterexample() {
  Checker c("counterexample_statement_iii");
  const CMatrix& a = kA;
  const CMatrix& p = kP;
  const CMatrix& b = kB;
  const CMatrix& one_q = kOneMinusQ;
  // integer data, so these products are exact
  c.bounded("pb-b", (p * b - b).frobenius_norm(), 0.0);
  c.bounded("bap-p", (b * a * p - p).frobenius_norm(), 0.0);
  c.bounded("b(1-q)-b", (b * one_q - b).frobenius_norm(), 0.0);
  c.bounded("(1-q)ab-(1-q)", (one_q * a * b - one_q).frobenius_norm(), 0.0);
  c.bounded("ba-diag(1,0)", (b * a - CMatrix::diag({1, 0})).frobenius_norm(), 0.0);
  c.bounded("ab-diag(0,1)", (a * b - CMatrix::diag({0, 1})).frobenius_norm(), 0.0);
  c.expect(b * a != p, "ba must differ from p");
  c.expect(a * b != one_q, "ab must differ from 1-q");

  c.guarded("strict inverse", [&] {
    const PqProblem prob(a, p, CMatrix::identity(2) - one_q);
    const auto report = pq::diagnose(prob);
    c.expect(!report.strict_exists, "strict_exists must be false");
    c.expect(report.l_exists, "l_exists must be true");
    try {
      pq::outer_2_strict(prob);
      c.expect(false, "outer_2_strict must report nonexistence");
    } catch (const NonexistenceError& e) {
      c.expect(e.reason() == "ba ≠ p", "nonexistence reason must be 'ba ≠ p', got '" + e.reason() + "'");
    }
  });
  return c.finish();
}

Case direct_sum_without_image_match() {
  Checker c("direct_sum_without_image_match");
  c.guarded("diagnose", [&] {
    const PqProblem prob(kA, kP, CMatrix::identity(2) - kOneMinusQ);
    const auto report = pq::diagnose(prob);
    c.expect(report.direct_sum, "direct_sum must be true");
    c.expect(report.ker_cap_ranp_trivial, "Ker(a) ∩ Ran(p) must be {0}");
    c.expect(!report.image_match, "image_match must be false");
    const double d = distance(image(kA, range_of(kP)), range_of(kOneMinusQ));
    c.bounded("distance(aRan(p),Ran(1-q))-1", std::abs(d - 1.0), 1e-12);
  });
  return c.finish();
}

Case image_match_without_strict_inverse() {
  Checker c("image_match_without_strict_inverse");
  c.guarded("diagnose", [&] {
    const PqProblem prob(kA, kP, CMatrix::identity(2) - kOneMinusQVariant);
    const auto report = pq::diagnose(prob);
    c.expect(report.image_match, "image_match must be true");
    c.expect(report.ker_cap_ranp_trivial, "Ker(a) ∩ Ran(p) must be {0}");
    c.expect(!report.strict_exists, "strict_exists must be false");
    // ba = p has no solution at all: row(p) is not inside row(a)
    c.expect(!densela::solve_left(kA, kP).has_value(), "ba = p must be unsolvable");
  });
  return c.finish();
}

Case l_inverse_of_counterexample() {
  Checker c("l_inverse_of_counterexample");
  c.guarded("outer_2l", [&] {
    const PqProblem prob(kA, kP, CMatrix::identity(2) - kOneMinusQ);
    const auto r = pq::outer_2l(prob);
    c.bounded("b-expected", (r.b - kB).frobenius_norm(), 1e-12);
    c.bounded("bab-b", r.residuals.outer, 1e-12);
    c.bounded("range_distance", r.residuals.range_distance, 1e-12);
    c.bounded("kernel_distance", r.residuals.kernel_distance, 1e-12);
  });
  return c.finish();
}

// ---------------------------------------------------------------- fuzz

struct Bases {
  CMatrix range;    // orthonormal basis of Ran p
  CMatrix coimage;  // orthonormal basis of Ran(q)^⊥
};

Bases bases_of(const PqProblem& prob) {
  const auto& tol = prob.tol();
  return {range_of(prob.p(), tol, 1.0).basis(), orthogonal_complement(range_of(prob.q(), tol, 1.0), tol).basis()};
}

void pq_battery(Checker& c, gen::Rng& rng, const PqProblem& prob, const gen::Constructed* constructed) {
  const auto& tol = prob.tol();
  const std::size_t n = prob.n();
  const CMatrix& a = prob.a();
  const CMatrix& p = prob.p();
  const CMatrix one_q = prob.q_complement();

  const auto report = pq::diagnose(prob);
  if (report.fragile) {
    c.mark_fragile();
    return;
  }
  c.expect(report.consistent, "existence equivalences/implications violated");
  if (constructed != nullptr) c.expect(report.l_exists, "constructed instance must have a^{(2,l)}");

  c.guarded("one_two_l verdict", [&] {
    bool exists = true;
    try {
      pq::one_two_l(prob);
    } catch (const NonexistenceError&) {
      exists = false;
    }
    c.expect(exists == report.l12_exists, "one_two_l disagrees with l12_exists");
  });
  c.guarded("one_two_strict verdict", [&] {
    bool exists = true;
    try {
      pq::one_two_strict(prob);
    } catch (const NonexistenceError&) {
      exists = false;
    }
    c.expect(exists == report.strict12_exists, "one_two_strict disagrees with strict12_exists");
  });
  if (!report.l_exists) return;

  c.guarded("outer_2l battery", [&] {
    const CMatrix b = pq::outer_2l(prob).b;
    const double bn = b.frobenius_norm();
    const double scale = std::max({1.0, bn, p.frobenius_norm(), one_q.frobenius_norm()}) *
                         std::max(1.0, a.frobenius_norm()) * std::max(1.0, bn);

    // equation-set form
    c.bounded("pb-b", rel((p * b - b).frobenius_norm(), scale), 1e-9);
    c.bounded("bap-p", rel((b * a * p - p).frobenius_norm(), scale), 1e-9);
    c.bounded("b(1-q)-b", rel((b * one_q - b).frobenius_norm(), scale), 1e-9);
    c.bounded("(1-q)ab-(1-q)", rel((one_q * a * b - one_q).frobenius_norm(), scale), 1e-9);

    const bool strict_eqs = tol.close(b * a, p) && tol.close(a * b, one_q);
    c.expect(strict_eqs == report.strict_exists, "strict_exists disagrees with ba = p, ab = 1-q");
    bool strict_ok = true;
    try {
      pq::outer_2_strict(prob);
    } catch (const NonexistenceError&) {
      strict_ok = false;
    }
    c.expect(strict_ok == report.strict_exists, "outer_2_strict disagrees with strict_exists");

    c.expect(equals(range_of(b * a, tol), range_of(p, tol, 1.0), tol), "Ran(ba) ≠ Ran(p)");
    c.expect(equals(kernel_of(a * b, tol), range_of(prob.q(), tol, 1.0), tol), "Ker(ab) ≠ Ran(q)");

    // fixing corollary, both directions. Products with an idempotent are
    // ranked against the factor norms, since p or 1 - q may be numerically zero.
    const CMatrix g = gen::gaussian(rng, n, n);
    const double g_scale = densela::norm2(g);
    const CMatrix inside = p * g;
    const CMatrix anywhere = gen::gaussian(rng, n, n);
    for (const CMatrix* x : {&inside, &anywhere}) {
      const bool fixed = tol.close(b * a * *x, *x);
      const double scale = x == &inside ? g_scale * std::max(1.0, densela::norm2(p)) : 0.0;
      const bool contained = contains(range_of(p, tol, 1.0), range_of(*x, tol, scale), tol);
      c.expect(fixed == contained, "bax = x does not match Ran(x) ⊆ Ran(p)");
    }
    const CMatrix annihilating = g * one_q;
    for (const CMatrix* x : {&annihilating, &anywhere}) {
      const bool fixed = tol.close(*x * a * b, *x);
      const double scale = x == &annihilating ? g_scale * std::max(1.0, densela::norm2(one_q)) : 0.0;
      const bool contained = contains(kernel_of(*x, tol, scale), range_of(prob.q(), tol, 1.0), tol);
      c.expect(fixed == contained, "xab = x does not match Ran(q) ⊆ Ker(x)");
    }

    // w-independence
    const Bases bs = bases_of(prob);
    const std::size_t r = bs.range.cols();
    const CMatrix gauge = r == 0 ? CMatrix() : gen::well_conditioned(rng, r, 10.0);
    const CMatrix w2 = bs.range * gauge * bs.coimage.adjoint();
    c.bounded("w-independence", rel((pq::repr_group(a, w2, tol) - b).frobenius_norm(), bn), 1e-8);

    c.bounded("inner-vs-group", rel((pq::outer_2l(prob, Route::inner_formula).b - b).frobenius_norm(), bn), 1e-8);
    c.bounded("direct-vs-group", rel((pq::outer_2l(prob, Route::direct).b - b).frobenius_norm(), bn), 1e-8);

    if (constructed != nullptr) {
      const CMatrix w0 = constructed->range_basis * constructed->coimage_basis.adjoint();
      const CMatrix via_group = pq::repr_group(a, w0, tol);
      const auto lim = pq::repr_limit(a, w0, pq::default_lambda_schedule(), tol);
      c.bounded("limit-vs-group", (lim.b - via_group).frobenius_norm(), 1e-6);
      if (constructed->positive_core) {
        const auto integral = pq::repr_integral(a, w0, 0.0, 1, tol);
        c.bounded("integral-vs-group", (integral.b - via_group).frobenius_norm(), 1e-6);
      }
    }
  });
}

void ginv_battery(Checker& c, gen::Rng& rng, std::size_t n) {
  const Tolerances tol;
  const unsigned index = static_cast<unsigned>(gen::uniform_index(rng, 0, std::min<std::size_t>(3, n)));
  const CMatrix m = gen::with_index(rng, n, index);
  const double mn = m.frobenius_norm();

  c.guarded("ginv battery", [&] {
    const CMatrix plus = ginv::moore_penrose(m, tol);
    c.bounded("penrose", ginv::penrose_residuals(m, plus).max() / (1.0 + mn), 1e-10);

    const auto d = ginv::drazin_inverse(m, tol);
    c.expect(d.index == index, "Drazin index " + std::to_string(d.index) + " ≠ constructed " + std::to_string(index));
    const double dn = d.inverse.frobenius_norm();
    const double drazin_scale = std::pow(1.0 + mn, d.index + 1) * (1.0 + dn) * (1.0 + dn);
    c.bounded("drazin-axioms", ginv::drazin_residuals(m, d.inverse, d.index).max() / drazin_scale, 1e-9);
    c.bounded("spectral-idempotent",
              (d.spectral_idempotent * d.spectral_idempotent - d.spectral_idempotent).frobenius_norm() /
                  (1.0 + d.spectral_idempotent.frobenius_norm()),
              1e-9);

    const auto g = ginv::group_inverse(m, tol);
    c.expect(g.has_value() == (index <= 1), "group inverse existence disagrees with the constructed index");
    c.expect(ginv::one_five_inverse(m, tol).has_value() == g.has_value(), "(1,5) and group existence differ");
    if (g) c.bounded("group-vs-drazin", rel((*g - d.inverse).frobenius_norm(), dn), 1e-8);

    const auto [gp, gq] = ginv::gi_idempotents(m, tol);
    c.expect(equals(kernel_of(gp, tol, 1.0), kernel_of(m, tol), tol), "Ker(p) ≠ Ker(a) for Gi idempotents");
    c.expect(equals(range_of(gq, tol, 1.0), range_of(m, tol), tol), "Ran(q) ≠ Ran(a) for Gi idempotents");
    // b = (a restricted to Ran p)^{-1} q
    const CMatrix u = range_of(gp, tol, 1.0).basis();
    const auto z = densela::solve_right(m * u, gq, tol);
    c.expect(z.has_value(), "a|Ran(p) cannot reach Ran(q)");
    if (z) {
      const CMatrix b = u * *z;
      const double scale = (1.0 + mn) * (1.0 + b.frobenius_norm()) * (1.0 + b.frobenius_norm());
      c.bounded("gi-reflexive", std::max((m * b * m - m).frobenius_norm(), (b * m * b - b).frobenius_norm()) / scale,
                1e-9);
    }
  });

  c.guarded("special cases", [&] {
    const CMatrix deficient = gen::with_rank(rng, n, n, gen::uniform_index(rng, 0, n));
    const auto mp = pq::special_case_mp(deficient, tol);
    c.record("mp-case-outer", mp.residuals.outer);
    const auto dz = pq::special_case_drazin(m, tol);
    c.record("drazin-case-outer", dz.residuals.outer);
  });
}

Case run_trial(std::uint64_t seed, std::size_t trial, std::size_t max_dim) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  gen::Rng rng(seq);
  std::string name = std::to_string(trial);
  name = "trial_" + std::string(6 - std::min<std::size_t>(6, name.size()), '0') + name;
  Checker c(name);

  const std::size_t n = gen::uniform_index(rng, 1, max_dim);
  const bool use_constructed = gen::uniform_index(rng, 0, 1) == 0;
  c.record("n", static_cast<double>(n));
  c.guarded("pq battery", [&] {
    if (use_constructed) {
      const std::size_t r = gen::uniform_index(rng, 0, n);
      const bool positive = gen::uniform_index(rng, 0, 1) == 0;
      const auto inst = gen::constructed(rng, n, r, positive);
      pq_battery(c, rng, PqProblem(inst.a, inst.p, inst.q), &inst);
    } else {
      const auto t = gen::unconstrained(rng, n);
      pq_battery(c, rng, PqProblem(t.a, t.p, t.q), nullptr);
    }
  });
  ginv_battery(c, rng, n);
  return c.finish();
}

}  // namespace

SuiteReport run_paper_examples() {
  SuiteReport report;
  report.suite = "paper_examples";
  report.cases = {statement_iii_counterexample(), direct_sum_without_image_match(),
                  image_match_without_strict_inverse(), l_inverse_of_counterexample()};
  report.trials = report.cases.size();
  finalize(report);
  return report;
}

SuiteReport fuzz(std::uint64_t seed, std::size_t trials, std::size_t max_dim) {
  if (max_dim < 1 || max_dim > 32) throw ValidationError("fuzz: dim must be in [1, 32]");
  if (trials < 1) throw ValidationError("fuzz: trials must be >= 1");
  SuiteReport report;
  report.suite = "fuzz";
  report.seed = seed;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) report.cases.push_back(run_trial(seed, t, max_dim));
  finalize(report);
  return report;
}

}  // namespace pqinv::verify

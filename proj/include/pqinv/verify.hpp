#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pqinv::verify {

enum class Status { pass, fail, fragile };

struct Case {
  std::string name;
  Status status = Status::pass;
  std::map<std::string, double> residuals;
  double elapsed_ms = 0.0;
  std::vector<std::string> failures;  ///< failed checks, empty on pass
};

struct SuiteReport {
  std::string suite;
  std::vector<Case> cases;  ///< sorted by name
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t fragile = 0;

  bool ok() const noexcept { return failed == 0; }
};

std::string_view to_string(Status s) noexcept;

/// Rebuilds the published 2x2 counterexamples and checks every stated verdict.
SuiteReport run_paper_examples();

/// Randomized battery over constructed-existence and unconstrained
/// instances; deterministic for a given (seed, trials, max_dim).
/// Throws ValidationError unless 1 <= max_dim <= 32 and trials >= 1.
SuiteReport fuzz(std::uint64_t seed, std::size_t trials, std::size_t max_dim);

}  // namespace pqinv::verify

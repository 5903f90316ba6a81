#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace exit_ibp {

/// Sample sizes for the acceptance suite. full_budget() uses the sizes the
/// criteria are stated at; smoke_budget() is a reduced run for quick checks.
struct AcceptanceBudget {
  std::string name;
  std::int64_t cdf_paths = 1000000;
  std::int64_t derivative_paths = 1000000;
  std::int64_t tanh_paths = 1000000;
  std::int64_t euler_paths = 1000000;
  int euler_steps = 10000;
  std::int64_t law_paths = 100000;
  std::int64_t gig_draws = 100000;
  std::int64_t structural_paths = 200000;
  int workers = 1;
  std::uint64_t seed = 20240601;
};

AcceptanceBudget full_budget();
AcceptanceBudget smoke_budget();

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// One-line "PASS"/"FAIL" rendering used by the CLI and the acceptance binary.
std::string format_criterion(const CriterionResult& r);

/// Runs criteria 1-8 in order, reporting each result as soon as it is known.
/// A criterion that throws is reported as failed with the error message.
std::vector<CriterionResult> run_acceptance(const AcceptanceBudget& budget,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace exit_ibp

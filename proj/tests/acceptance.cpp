// Acceptance battery: runs the twelve named checks at their pinned default
// options and enforces the per-check wall-clock budgets.  One line per
// criterion; exit code is the number of failures.

#include <cstdio>
#include <string>

#include "ksim/paper_suite.hpp"

namespace {

// wall-clock budget in ms; 0 means the check is exact and untimed
double budget_ms(const std::string& check) {
  if (check == "01_p2_matrices") return 1.0;
  if (check == "02_p3_matrices") return 1.0;
  if (check == "03_eigenspace_signatures") return 100.0;
  if (check == "04_locus_dimensions") return 0.0;
  if (check == "05_isometry_claims") return 100.0;
  if (check == "06_kummer_family") return 0.0;
  if (check == "07_clifford_functoriality") return 10000.0;
  if (check == "08_trace_compatibility") return 30000.0;
  if (check == "09_phi_square") return 10000.0;
  if (check == "10_ks_numeric") return 1000.0;
  if (check == "11_odd_dim_obstruction") return 0.0;
  if (check == "12_random_oracles") return 5000.0;
  return 0.0;
}

}  // namespace

int main() {
  const ksim::SuiteOptions opt;  // samples=200, seed=0, tol=1e-9
  const ksim::SuiteInputs inputs = ksim::default_suite_inputs();

  std::printf("acceptance battery: %d checks, samples=%d seed=%llu tol=%g\n\n",
              (int)ksim::paper_suite_checks().size(), opt.samples,
              (unsigned long long)opt.seed, opt.tol);

  int failures = 0;
  for (const auto& [name, fn] : ksim::paper_suite_checks()) {
    ksim::VerificationReport rep = ksim::run_suite_check(name, fn, inputs, opt);
    const double budget = budget_ms(name);
    const bool in_budget = budget <= 0.0 || rep.timing_ms <= budget;
    const bool ok = rep.pass && in_budget;
    if (!ok) ++failures;

    char limit[64];
    if (budget > 0.0)
      std::snprintf(limit, sizeof limit, "budget %g ms", budget);
    else
      std::snprintf(limit, sizeof limit, "exact");
    std::printf("[%s] %-26s %9.2f ms  (%s)\n", ok ? "PASS" : "FAIL", name.c_str(),
                rep.timing_ms, limit);
    if (!rep.pass)
      std::printf("       witness: %s\n", rep.witness.dump(2).c_str());
    else if (!in_budget)
      std::printf("       over budget: %.2f ms > %g ms\n", rep.timing_ms, budget);
  }

  std::printf("\nsummary: %d/%d passed\n",
              (int)ksim::paper_suite_checks().size() - failures,
              (int)ksim::paper_suite_checks().size());
  return failures;
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ksim/paper_suite.hpp"

using ksim::json;
using ksim::Rat;
using ksim::SuiteInputs;
using ksim::SuiteOptions;
using ksim::VerificationReport;

namespace {

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "01_p2_matrices",         "02_p3_matrices",
      "03_eigenspace_signatures", "04_locus_dimensions",
      "05_isometry_claims",     "06_kummer_family",
      "07_clifford_functoriality", "08_trace_compatibility",
      "09_phi_square",          "10_ks_numeric",
      "11_odd_dim_obstruction", "12_random_oracles",
  };
  return names;
}

SuiteOptions fast_options() {
  SuiteOptions opt;
  opt.samples = 20;
  return opt;
}

std::set<std::string> failing_checks(const std::vector<VerificationReport>& reps) {
  std::set<std::string> out;
  for (const VerificationReport& r : reps)
    if (!r.pass) out.insert(r.check);
  return out;
}

}  // namespace

TEST_CASE("suite runs all checks in name order and passes") {
  SuiteInputs in = ksim::default_suite_inputs();
  CHECK(in.lambda_diag.dim == 12);
  CHECK(in.gamma_diag.dim == 8);
  CHECK(in.psi_p2.multiplier == Rat(2));
  CHECK(in.psi_p3.multiplier == Rat(3));

  std::vector<VerificationReport> reps = ksim::verify_paper_suite(in, fast_options());
  REQUIRE(reps.size() == check_names().size());
  for (size_t i = 0; i < reps.size(); ++i) {
    INFO(reps[i].check);
    CHECK(reps[i].check == check_names()[i]);
    CHECK(reps[i].pass);
    CHECK(reps[i].timing_ms >= 0.0);
  }
}

TEST_CASE("suite passes at default options") {
  std::vector<VerificationReport> reps = ksim::verify_paper_suite();
  REQUIRE(reps.size() == 12);
  for (const VerificationReport& r : reps) {
    INFO(r.check);
    CHECK(r.pass);
  }
}

TEST_CASE("suite output is deterministic") {
  SuiteOptions opt;
  opt.samples = 5;
  auto dump = [&] {
    json arr = json::array();
    for (const VerificationReport& r :
         ksim::verify_paper_suite(ksim::default_suite_inputs(), opt))
      arr.push_back(r.to_json(false));
    return arr.dump();
  };
  std::string first = dump();
  std::string second = dump();
  CHECK(first == second);
  CHECK(first.find("timing_ms") == std::string::npos);
}

TEST_CASE("corrupting the multiplier-2 similarity fails exactly its dependents") {
  SuiteInputs in = ksim::default_suite_inputs();
  in.psi_p2.matrix.at(0, 0) += Rat(1);
  auto failed = failing_checks(ksim::verify_paper_suite(in, fast_options()));
  std::set<std::string> expected = {
      "01_p2_matrices",          "03_eigenspace_signatures",
      "04_locus_dimensions",     "07_clifford_functoriality",
      "08_trace_compatibility",  "09_phi_square",
      "10_ks_numeric",
  };
  CHECK(failed == expected);
}

TEST_CASE("corrupting the multiplier-3 similarity spares the numeric check") {
  SuiteInputs in = ksim::default_suite_inputs();
  in.psi_p3.matrix.at(0, 0) += Rat(1);
  auto failed = failing_checks(ksim::verify_paper_suite(in, fast_options()));
  std::set<std::string> expected = {
      "02_p3_matrices",          "03_eigenspace_signatures",
      "04_locus_dimensions",     "07_clifford_functoriality",
      "08_trace_compatibility",  "09_phi_square",
  };
  CHECK(failed == expected);
}

TEST_CASE("failing reports carry witnesses and serialize") {
  SuiteInputs in = ksim::default_suite_inputs();
  in.psi_p2.matrix.at(0, 0) += Rat(1);
  for (const VerificationReport& r : ksim::verify_paper_suite(in, fast_options())) {
    if (r.pass) continue;
    INFO(r.check);
    CHECK_FALSE(r.witness.is_null());
    json j = r.to_json(true);
    CHECK(j.at("pass") == false);
    CHECK(j.contains("witness"));
    CHECK(j.contains("timing_ms"));
  }
}

TEST_CASE("runner converts thrown errors into failing reports") {
  SuiteInputs in = ksim::default_suite_inputs();
  SuiteOptions opt = fast_options();

  VerificationReport kind_trap = ksim::run_suite_check(
      "custom_error",
      [](const SuiteInputs&, const SuiteOptions&) -> VerificationReport {
        ksim::fail(ksim::errk::dimension_mismatch, "synthetic");
      },
      in, opt);
  CHECK(kind_trap.check == "custom_error");
  CHECK_FALSE(kind_trap.pass);
  CHECK(kind_trap.witness.at("error") == ksim::errk::dimension_mismatch);
  CHECK(kind_trap.timing_ms >= 0.0);

  VerificationReport generic_trap = ksim::run_suite_check(
      "custom_generic",
      [](const SuiteInputs&, const SuiteOptions&) -> VerificationReport {
        throw std::runtime_error("plain");
      },
      in, opt);
  CHECK_FALSE(generic_trap.pass);
  CHECK(generic_trap.witness.at("error") == "unexpected_exception");
}

TEST_CASE("coordinate restriction keeps the multiplier") {
  SuiteInputs in = ksim::default_suite_inputs();
  ksim::Similarity sub = ksim::sub_similarity(in.psi_p2, {0, 1}, "head");
  CHECK(sub.source.dim == 2);
  CHECK(sub.multiplier == Rat(2));
  CHECK(sub.source.label == "head");
  CHECK(sub.source.gram.at(0, 0) == Rat(1));
  CHECK(sub.source.gram.at(1, 1) == Rat(-1));

  // a subset straddling a block boundary is not carried into itself
  try {
    ksim::sub_similarity(in.psi_p2, {0, 1, 2}, "bad");
    FAIL("expected a rejection");
  } catch (const ksim::error& e) {
    CHECK(e.kind() == ksim::errk::not_a_similarity);
  }
}

#pragma once

#include <json.hpp>

#include <string>

#include "ksim/errors.hpp"
#include "ksim/rational.hpp"

namespace ksim {

using json = nlohmann::json;

// Pass/fail certificate for one checked identity.  Timing is kept out of the
// default serialization so identical runs stay byte-identical.
struct VerificationReport {
  std::string check;
  bool pass = true;
  std::string digest;              // fnv1a-64 of the canonical input JSON
  json details = json::object();   // seeds, tolerances, residuals, counts...
  json witness;                    // required when pass == false
  double timing_ms = -1.0;         // < 0 means unset

  void set_inputs(const json& inputs) { digest = hex64(fnv1a64(inputs.dump())); }

  void fail_with(json w) {
    pass = false;
    witness = std::move(w);
  }

  json to_json(bool with_timing = false) const {
    require(pass || !witness.is_null(), errk::precondition_failed,
            "failing report '" + check + "' lacks a witness");
    json j;
    j["check"] = check;
    j["pass"] = pass;
    j["digest"] = digest;
    if (!details.empty()) j["details"] = details;
    if (!witness.is_null()) j["witness"] = witness;
    if (with_timing && timing_ms >= 0) j["timing_ms"] = timing_ms;
    return j;
  }

  static VerificationReport from_json(const json& j) {
    VerificationReport r;
    r.check = j.at("check").get<std::string>();
    r.pass = j.at("pass").get<bool>();
    r.digest = j.value("digest", "");
    if (j.contains("details")) r.details = j.at("details");
    if (j.contains("witness")) r.witness = j.at("witness");
    if (j.contains("timing_ms")) r.timing_ms = j.at("timing_ms").get<double>();
    return r;
  }
};

// Deterministic generator for sampled property checks (seeded, recorded).
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    // splitmix64: stable across platforms, unlike std distributions
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long below(long n) { return (long)(next() % (uint64_t)n); }
  // nonzero rational with small numerator/denominator
  Rat small_rat(long h = 9) {
    long num = below(2 * h + 1) - h;
    if (num == 0) num = 1;
    return Rat(num, below(h) + 1);
  }
  Rat small_rat_or_zero(long h = 9) {
    long num = below(2 * h + 1) - h;
    return Rat(num, below(h) + 1);
  }
  double unit_double() { return (double)(next() >> 11) / (double)(1ull << 53); }
};

}  // namespace ksim

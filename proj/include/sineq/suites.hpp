#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sineq/manifest.hpp"

namespace sineq {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  long long elapsed_ms = 0;  // stderr diagnostics only, never serialized
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

// The ten acceptance checks, at the tolerances they are stated with.
// Deterministic for a given seed, independent of the thread count.
[[nodiscard]] CheckResult criterion_closed_form_fixture();
[[nodiscard]] CheckResult criterion_phi_signs();
[[nodiscard]] CheckResult criterion_lemma1(std::uint64_t seed);
[[nodiscard]] CheckResult criterion_convexity(std::uint64_t seed);
[[nodiscard]] CheckResult criterion_derivative(std::uint64_t seed);
[[nodiscard]] CheckResult criterion_sweep(std::uint64_t seed, int threads);
[[nodiscard]] CheckResult criterion_transport(std::uint64_t seed);
[[nodiscard]] CheckResult criterion_moments(std::uint64_t seed, int threads);
[[nodiscard]] CheckResult criterion_oracles(std::uint64_t seed, int threads);
[[nodiscard]] CheckResult criterion_search(std::uint64_t seed, int threads);

/// Suites: core = {fixture, derivative, sweep, transport, oracles},
/// lemmas = {phi signs, lemma1, convexity}, moments, search.
[[nodiscard]] SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                                    int threads);

[[nodiscard]] std::vector<std::string> suite_names();

[[nodiscard]] nlohmann::ordered_json suite_to_json(const SuiteResult& result,
                                                   const RunManifest& manifest);

}  // namespace sineq

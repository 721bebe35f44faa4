#pragma once

#include <string>

#include "json.hpp"
#include "sineq/extremal_search.hpp"
#include "sineq/ideals.hpp"
#include "sineq/manifest.hpp"
#include "sineq/measures.hpp"
#include "sineq/moments.hpp"
#include "sineq/s_inequality.hpp"

namespace sineq {

// Measure JSON: {"family":"nu_p","p":0.5} | {"family":"mu_p_alpha","p":..,"alpha":..}
//             | {"family":"weibull","alpha":..} | {"family":"gamma","q":..}
[[nodiscard]] nlohmann::ordered_json measure_to_json(const MeasureSpec& m);
[[nodiscard]] MeasureSpec measure_from_json(const nlohmann::json& j);

// Ideal JSON: {"type":"step2d","breakpoints":[..],"heights":[..]} with "inf"
// for ∞ | {"type":"boxes","dim":n,"corners":[[..],..]} | {"type":"lq_ball",
// "dim":n,"s":..,"r":..}
[[nodiscard]] nlohmann::ordered_json ideal_to_json(const Ideal& ideal);
[[nodiscard]] Ideal ideal_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::ordered_json norm_to_json(const UnconditionalNorm& norm);
[[nodiscard]] UnconditionalNorm norm_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::ordered_json report_to_json(const VerificationReport& report,
                                                    const MeasureSpec& m,
                                                    const Ideal& ideal,
                                                    const RunManifest& manifest);

/// CSV table with columns family,params,ideal_id,t,lhs,rhs,margin (17
/// significant digits, preceded by '#'-prefixed manifest lines).
[[nodiscard]] std::string report_to_csv(const VerificationReport& report,
                                        const MeasureSpec& m, const std::string& ideal_id,
                                        const RunManifest& manifest);

[[nodiscard]] nlohmann::ordered_json search_result_to_json(const SearchResult& result,
                                                           const MeasureSpec& m,
                                                           const RunManifest& manifest);

/// Manifest block serialized as leading '#' comment lines for CSV outputs.
[[nodiscard]] std::string manifest_csv_prelude(const RunManifest& manifest);

}  // namespace sineq

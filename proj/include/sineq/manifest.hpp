#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sineq {

inline constexpr const char* kToolVersion = "sineq 0.1.0";

/// 17-significant-digit float formatting ('.' decimal, no locale); used for
/// every CSV cell so reports reproduce bit-faithfully.
[[nodiscard]] std::string format_g17(double value);

/// FNV-1a 64-bit content digest, hex encoded.
[[nodiscard]] std::string fnv1a_hex(std::string_view bytes);

/// Reproducibility header embedded verbatim in every output artifact.
/// Deterministic by construction: equal manifests imply byte-identical
/// outputs (wall-clock is reported on stderr, never serialized).
struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> input_digests;

  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Writes content to path, creating parent directories; throws on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace sineq

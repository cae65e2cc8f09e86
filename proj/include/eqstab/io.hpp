#pragma once

// Output plumbing: fixed float formatting, FNV-1a manifest hashes, atomic
// file writes and small JSON helpers.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eqstab/numeric.hpp"

namespace eqstab {

using Json = nlohmann::json;

inline constexpr std::string_view kToolVersion = "0.1.0";

// %.17g; "inf", "-inf", "nan" for non-finite values
std::string format_g17(double x);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t h);

// Hash of the canonical (sorted-key, compact) dump of the resolved config.
std::string manifest_hash(const Json& resolved_config);

// Writes via a temporary sibling file and rename.
void write_atomic(const std::filesystem::path& path, std::string_view content);

// Pretty dump with a trailing newline; non-finite doubles become strings.
std::string dump_json(const Json& j);
Json json_number(double x);

Json complex_to_json(cplx z);  // [re, im]
// Accepts a number or an [re, im] pair. Throws ConfigError.
cplx complex_from_json(const Json& j, std::string_view what);

Json read_json_file(const std::filesystem::path& path);  // ConfigError on failure

}  // namespace eqstab

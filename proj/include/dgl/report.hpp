// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dgl/laplacian.hpp"

#include <string>
#include <utility>
#include <vector>

// vendored single-header nlohmann/json
#include "json.hpp"

namespace dgl {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* report_schema = "dgl/1";

using json = nlohmann::ordered_json;

// Reports print floating point at 12 significant digits; round12 snaps a
// double to that decimal grid so JSON serialization emits the same bytes.
double round12(double v);
std::string fmt12(double v);

std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& s);
std::string file_sha256(const std::string& path); // throws validation_error

// Common envelope: schema, version, solver settings, input digests.
json report_envelope(const SolveSettings& s,
                     const std::vector<std::pair<std::string, std::string>>& input_paths,
                     std::uint64_t seed = 0, std::size_t threads = 1);

} // namespace dgl

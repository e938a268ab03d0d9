#pragma once

// JSON reading and writing of ScenarioConfig.
//
// Keys carry their unit as a suffix (_s, _m, _mps, _hz, _db, _dbm, _deg).
// Omitted keys keep their defaults, unknown keys are rejected, and an empty
// document yields the default configuration.

#include <filesystem>
#include <string>
#include <string_view>

#include "hetbeam/config.hpp"

namespace hetbeam {

/// Throws ConfigError: parse errors carry the 1-based line, validation
/// errors the dotted key path.
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a file; an unreadable file is a parse error.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Pretty-printed JSON holding every field; parse_config(to_json_text(c)) == c.
std::string to_json_text(const ScenarioConfig& config);

void save_config(const ScenarioConfig& config, const std::filesystem::path& path);

}  // namespace hetbeam

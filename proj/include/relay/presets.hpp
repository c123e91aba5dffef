#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "relay/scenario.hpp"

namespace relay {

/// Names of the built-in scenarios (the files shipped under scenarios/), sorted.
std::vector<std::string_view> preset_names();

std::optional<std::string_view> preset_text(std::string_view name);

/// Parses a built-in scenario. ParseError (line 0) for an unknown name.
Scenario load_preset(std::string_view name);

}  // namespace relay

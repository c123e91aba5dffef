#include "relay/presets.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "relay/error.hpp"

namespace relay {

namespace {

struct Preset {
  std::string_view name;
  std::string_view text;
};

constexpr Preset kPresets[] = {
#include "presets_data.inc"
};

}  // namespace

std::vector<std::string_view> preset_names() {
  std::vector<std::string_view> names;
  for (const auto& p : kPresets) names.push_back(p.name);
  return names;
}

std::optional<std::string_view> preset_text(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p.text;
  }
  return std::nullopt;
}

Scenario load_preset(std::string_view name) {
  const auto text = preset_text(name);
  if (!text) {
    throw ParseError(fmt::format("preset:{}", name), 0, "",
                     fmt::format("unknown preset (known: {})", fmt::join(preset_names(), ", ")));
  }
  return parse_scenario(*text, fmt::format("preset:{}", name));
}

}  // namespace relay

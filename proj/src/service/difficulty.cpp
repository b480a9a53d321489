#include "gauntlet/service/difficulty.hpp"

#include <algorithm>

#include "gauntlet/core/error.hpp"

namespace gauntlet::service {

namespace {
constexpr std::array<std::string_view, 4> kNames = {"easy", "moderate", "difficult", "always_on"};
}

std::string_view to_string(DifficultyLevel level) { return kNames.at(static_cast<std::size_t>(level)); }

DifficultyLevel difficulty_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == s) return static_cast<DifficultyLevel>(i);
  }
  throw ConfigError("unknown difficulty level: " + std::string(s));
}

void DifficultyTable::validate() const {
  for (const auto& k : levels) {
    if (!(k.double_prompt_probability >= 0.0 && k.double_prompt_probability <= 1.0)) {
      throw ConfigError("double_prompt_probability outside [0, 1]");
    }
    if (!(k.flexibility_scale > 0.0 && k.flexibility_scale <= 1.0)) {
      throw ConfigError("flexibility_scale outside (0, 1]");
    }
  }
}

double threat_score(const ClientProfile& p) {
  double s = 0.0;
  if (p.webdriver) s += 0.4;
  if (p.headless) s += 0.4;
  if (p.plugin_count == 0) s += 0.2;
  if (p.keypress_events == 0 && p.scroll_events == 0 && p.touch_events == 0) s += 0.2;
  return std::min(s, 1.0);
}

DifficultyKnobs escalate(const DifficultyKnobs& base, double score) {
  const double s = std::clamp(score, 0.0, 1.0);
  return {base.double_prompt_probability + s * (1.0 - base.double_prompt_probability),
          base.flexibility_scale * (1.0 - 0.5 * s)};
}

}  // namespace gauntlet::service

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace gauntlet {

enum class IpTag : std::uint8_t { Regular, Academic, Vpn, Tor };
enum class DeviceType : std::uint8_t { Desktop, Mobile };

std::string_view to_string(IpTag tag);
IpTag ip_tag_from_string(std::string_view s);

/// Browser/device signals a client reports when opening a session.
struct ClientProfile {
  IpTag ip_tag = IpTag::Regular;
  std::string browser_family = "Firefox";
  std::string browser_version = "65.0";
  std::string os_family = "Linux";
  DeviceType device_type = DeviceType::Desktop;
  int screen_width = 1920;
  int screen_height = 1080;
  int plugin_count = 3;
  bool webdriver = false;
  bool headless = false;
  bool touch_support = false;
  bool canvas_support = true;
  bool wasm_support = true;
  int keypress_events = 12;
  int scroll_events = 4;
  int touch_events = 0;

  friend bool operator==(const ClientProfile&, const ClientProfile&) = default;

  /// Regular desktop browser with navigator properties patched to look human.
  static ClientProfile regular_browser();
  /// Browser driven by automation software with default settings.
  static ClientProfile automation_default();
  /// Headless automation: webdriver set, no plugins, no input events.
  static ClientProfile headless_automation();
};

nlohmann::json to_json(const ClientProfile& profile);
/// Strict: every field must be present with the right type; counts >= 0.
ClientProfile profile_from_json(const nlohmann::json& j);

}  // namespace gauntlet

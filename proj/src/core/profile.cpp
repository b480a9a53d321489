#include "gauntlet/core/profile.hpp"

#include <array>

#include "gauntlet/core/error.hpp"

namespace gauntlet {

namespace {
constexpr std::array<std::string_view, 4> kIpTagNames = {"regular", "academic", "vpn", "tor"};

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("profile: missing field ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("profile: wrong type for ") + key);
  }
}

int count_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw FormatError(std::string("profile: ") + key + " must be an integer");
  }
  const auto v = j.at(key).get<std::int64_t>();
  if (v < 0 || v > 1'000'000'000) throw FormatError(std::string("profile: ") + key + " out of range");
  return static_cast<int>(v);
}

bool bool_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_boolean()) {
    throw FormatError(std::string("profile: ") + key + " must be a boolean");
  }
  return j.at(key).get<bool>();
}
}  // namespace

std::string_view to_string(IpTag tag) { return kIpTagNames[static_cast<std::size_t>(tag)]; }

IpTag ip_tag_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kIpTagNames.size(); ++i) {
    if (kIpTagNames[i] == s) return static_cast<IpTag>(i);
  }
  throw FormatError("unknown ip_tag: " + std::string(s));
}

ClientProfile ClientProfile::regular_browser() { return ClientProfile{}; }

ClientProfile ClientProfile::automation_default() {
  ClientProfile p;
  p.webdriver = true;
  p.plugin_count = 0;
  p.screen_width = 1366;
  p.screen_height = 768;
  return p;
}

ClientProfile ClientProfile::headless_automation() {
  ClientProfile p = automation_default();
  p.headless = true;
  p.keypress_events = 0;
  p.scroll_events = 0;
  p.touch_events = 0;
  return p;
}

nlohmann::json to_json(const ClientProfile& p) {
  return {
      {"ip_tag", to_string(p.ip_tag)},
      {"browser_family", p.browser_family},
      {"browser_version", p.browser_version},
      {"os_family", p.os_family},
      {"device_type", p.device_type == DeviceType::Desktop ? "desktop" : "mobile"},
      {"screen_resolution", {p.screen_width, p.screen_height}},
      {"plugin_count", p.plugin_count},
      {"webdriver", p.webdriver},
      {"headless", p.headless},
      {"touch_support", p.touch_support},
      {"canvas_support", p.canvas_support},
      {"wasm_support", p.wasm_support},
      {"event_counts", {{"keypress", p.keypress_events}, {"scroll", p.scroll_events}, {"touch", p.touch_events}}},
  };
}

ClientProfile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("profile must be an object");
  ClientProfile p;
  p.ip_tag = ip_tag_from_string(field<std::string>(j, "ip_tag"));
  p.browser_family = field<std::string>(j, "browser_family");
  p.browser_version = field<std::string>(j, "browser_version");
  p.os_family = field<std::string>(j, "os_family");
  const auto device = field<std::string>(j, "device_type");
  if (device == "desktop") {
    p.device_type = DeviceType::Desktop;
  } else if (device == "mobile") {
    p.device_type = DeviceType::Mobile;
  } else {
    throw FormatError("profile: device_type must be desktop or mobile");
  }
  if (!j.contains("screen_resolution") || !j["screen_resolution"].is_array() || j["screen_resolution"].size() != 2 ||
      !j["screen_resolution"][0].is_number_integer() || !j["screen_resolution"][1].is_number_integer()) {
    throw FormatError("profile: screen_resolution must be [w, h]");
  }
  p.screen_width = j["screen_resolution"][0].get<int>();
  p.screen_height = j["screen_resolution"][1].get<int>();
  if (p.screen_width < 0 || p.screen_height < 0) throw FormatError("profile: negative screen size");
  p.plugin_count = count_field(j, "plugin_count");
  p.webdriver = bool_field(j, "webdriver");
  p.headless = bool_field(j, "headless");
  p.touch_support = bool_field(j, "touch_support");
  p.canvas_support = bool_field(j, "canvas_support");
  p.wasm_support = bool_field(j, "wasm_support");
  if (!j.contains("event_counts") || !j["event_counts"].is_object()) {
    throw FormatError("profile: event_counts must be an object");
  }
  const auto& ev = j["event_counts"];
  p.keypress_events = count_field(ev, "keypress");
  p.scroll_events = count_field(ev, "scroll");
  p.touch_events = count_field(ev, "touch");
  return p;
}

}  // namespace gauntlet

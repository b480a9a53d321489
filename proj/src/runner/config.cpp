#include "gauntlet/runner/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

namespace gauntlet::runner {

using nlohmann::json;

namespace {

/// Walks one JSON object, type-checking each known key and rejecting the rest.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  [[nodiscard]] bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }
  const json& raw(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }
  [[nodiscard]] std::string path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void number(const char* key, double& out) {
    if (!has(key)) return;
    const auto& v = j_[key];
    if (!v.is_number()) throw ConfigError(path(key) + " must be a number");
    out = v.get<double>();
  }
  void integer(const char* key, int& out) {
    if (!has(key)) return;
    const auto& v = j_[key];
    if (!v.is_number_integer()) throw ConfigError(path(key) + " must be an integer");
    const auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      throw ConfigError(path(key) + " out of range");
    }
    out = static_cast<int>(x);
  }
  void count(const char* key, std::size_t& out) {
    if (!has(key)) return;
    const auto& v = j_[key];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw ConfigError(path(key) + " must be a non-negative integer");
    out = v.get<std::size_t>();
  }
  void millis(const char* key, Millis& out) {
    if (!has(key)) return;
    const auto& v = j_[key];
    if (!v.is_number_integer()) throw ConfigError(path(key) + " must be an integer (ms)");
    out = Millis{v.get<std::int64_t>()};
  }
  void boolean(const char* key, bool& out) {
    if (!has(key)) return;
    const auto& v = j_[key];
    if (!v.is_boolean()) throw ConfigError(path(key) + " must be a boolean");
    out = v.get<bool>();
  }
  void string(const char* key, std::string& out) {
    if (!has(key)) return;
    const auto& v = j_[key];
    if (!v.is_string()) throw ConfigError(path(key) + " must be a string");
    out = v.get<std::string>();
  }
  void numbers(const char* key, std::vector<double>& out) {
    if (!has(key)) return;
    const auto& v = j_[key];
    if (!v.is_array()) throw ConfigError(path(key) + " must be an array of numbers");
    out.clear();
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(path(key) + " must be an array of numbers");
      out.push_back(x.get<double>());
    }
  }
  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.contains(key)) throw ConfigError("unknown key: " + path(key.c_str()));
    }
  }

 private:
  [[nodiscard]] std::string where() const { return path_.empty() ? "config" : path_; }
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

constexpr std::array<std::pair<ConditionClass, const char*>, 3> kPolicyKeys = {{
    {ConditionClass::AllCorrectPlusWrong, "all_correct_plus_wrong"},
    {ConditionClass::MissingOne, "missing_one"},
    {ConditionClass::MissingOnePlusWrong, "missing_one_plus_wrong"},
}};

json policy_json(const GradePolicy& p) {
  json out;
  for (auto [type, name] : {std::pair{PromptType::Single, "single"}, std::pair{PromptType::Double, "double"}}) {
    for (auto [c, key] : kPolicyKeys) out[name][key] = p.probability(type, c);
  }
  return out;
}

GradePolicy parse_policy(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j == "flexible") return GradePolicy::flexible();
    if (j == "strict") return GradePolicy::strict();
    throw ConfigError(path + " must be \"flexible\", \"strict\" or an object");
  }
  GradePolicy p = GradePolicy::flexible();
  Reader r(j, path);
  for (auto [type, name] : {std::pair{PromptType::Single, "single"}, std::pair{PromptType::Double, "double"}}) {
    if (!r.has(name)) continue;
    Reader row(r.raw(name), r.path(name));
    for (auto [c, key] : kPolicyKeys) {
      double v = p.probability(type, c);
      row.number(key, v);
      p.set(type, c, v);
    }
    row.finish();
  }
  r.finish();
  return p;
}

json profile_json(const ClientProfile& p) { return to_json(p); }

ClientProfile preset_profile(std::string_view name, const std::string& path) {
  if (name == "regular") return ClientProfile::regular_browser();
  if (name == "automation") return ClientProfile::automation_default();
  if (name == "headless") return ClientProfile::headless_automation();
  throw ConfigError(path + ": unknown profile preset " + std::string(name));
}

/// A preset name, or an object of profile fields over an optional "preset".
ClientProfile parse_profile(const json& j, const std::string& path) {
  if (j.is_string()) return preset_profile(j.get<std::string>(), path);
  if (!j.is_object()) throw ConfigError(path + " must be a preset name or an object");
  ClientProfile base = ClientProfile::regular_browser();
  json fields = j;
  if (fields.contains("preset")) {
    if (!fields["preset"].is_string()) throw ConfigError(path + ".preset must be a string");
    base = preset_profile(fields["preset"].get<std::string>(), path);
    fields.erase("preset");
  }
  json merged = to_json(base);
  for (const auto& [key, value] : fields.items()) {
    if (!merged.contains(key)) throw ConfigError("unknown key: " + path + "." + key);
    if (key == "event_counts" && value.is_object()) {
      for (const auto& [ek, ev] : value.items()) {
        if (!merged[key].contains(ek)) throw ConfigError("unknown key: " + path + ".event_counts." + ek);
        merged[key][ek] = ev;
      }
    } else {
      merged[key] = value;
    }
  }
  try {
    return profile_from_json(merged);
  } catch (const FormatError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json service_json(const service::ServiceConfig& s) {
  json table;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto level = static_cast<service::DifficultyLevel>(i);
    const auto& k = s.difficulty_table.at(level);
    table[std::string(service::to_string(level))] = {{"double_prompt_probability", k.double_prompt_probability},
                                                     {"flexibility_scale", k.flexibility_scale}};
  }
  const double amplitude = s.synth.patterns.empty() ? 0.0 : s.synth.patterns.front().amplitude;
  return {{"categories", s.categories.names()},
          {"difficulty", service::to_string(s.difficulty)},
          {"difficulty_table", table},
          {"adaptive", s.adaptive},
          {"flag_threshold", s.flag_threshold},
          {"flagged_sessions_earn", s.flagged_sessions_earn},
          {"policy", policy_json(s.policy)},
          {"tiles_per_round", s.shape.tiles_per_round},
          {"target_weights", s.shape.target_weights},
          {"reuse_probability", s.reuse_probability},
          {"payload_ttl_ms", s.payload_ttl.count()},
          {"answer_ttl_ms", s.answer_ttl.count()},
          {"session_ttl_ms", s.session_ttl.count()},
          {"token_ttl_ms", s.token_ttl.count()},
          {"rate_limit",
           {{"min_submit_gap_ms", s.limits.min_submit_gap.count()},
            {"concurrency_cap", s.limits.concurrency_cap},
            {"ip_window_ms", s.limits.ip_window.count()},
            {"ip_max_requests", s.limits.ip_max_requests}}},
          {"hmt_rate_pico", s.hmt_rate},
          {"site_secret", s.site_secret},
          {"synth",
           {{"amplitude", amplitude}, {"background_ratio", s.synth.background_ratio}, {"noise_ratio", s.synth.noise_ratio}}}};
}

void parse_service(const json& j, service::ServiceConfig& s) {
  Reader r(j, "service");
  if (r.has("categories")) {
    const auto& v = r.raw("categories");
    try {
      s.categories = CategorySet(v.get<std::vector<std::string>>());
    } catch (const json::exception&) {
      throw ConfigError("service.categories must be an array of strings");
    }
  }
  if (r.has("difficulty")) {
    const auto& v = r.raw("difficulty");
    if (!v.is_string()) throw ConfigError("service.difficulty must be a string");
    s.difficulty = service::difficulty_from_string(v.get<std::string>());
  }
  if (r.has("difficulty_table")) {
    Reader t(r.raw("difficulty_table"), "service.difficulty_table");
    for (std::size_t i = 0; i < 4; ++i) {
      const auto level = static_cast<service::DifficultyLevel>(i);
      const std::string name(service::to_string(level));
      if (!t.has(name.c_str())) continue;
      Reader k(t.raw(name.c_str()), t.path(name.c_str()));
      auto& knobs = s.difficulty_table.levels[i];
      k.number("double_prompt_probability", knobs.double_prompt_probability);
      k.number("flexibility_scale", knobs.flexibility_scale);
      k.finish();
    }
    t.finish();
  }
  r.boolean("adaptive", s.adaptive);
  r.number("flag_threshold", s.flag_threshold);
  r.boolean("flagged_sessions_earn", s.flagged_sessions_earn);
  if (r.has("policy")) s.policy = parse_policy(r.raw("policy"), "service.policy");
  r.integer("tiles_per_round", s.shape.tiles_per_round);
  r.numbers("target_weights", s.shape.target_weights);
  r.number("reuse_probability", s.reuse_probability);
  r.millis("payload_ttl_ms", s.payload_ttl);
  r.millis("answer_ttl_ms", s.answer_ttl);
  r.millis("session_ttl_ms", s.session_ttl);
  r.millis("token_ttl_ms", s.token_ttl);
  if (r.has("rate_limit")) {
    Reader l(r.raw("rate_limit"), "service.rate_limit");
    l.millis("min_submit_gap_ms", s.limits.min_submit_gap);
    l.integer("concurrency_cap", s.limits.concurrency_cap);
    l.millis("ip_window_ms", s.limits.ip_window);
    l.integer("ip_max_requests", s.limits.ip_max_requests);
    l.finish();
  }
  if (r.has("hmt_rate_pico")) {
    const auto& v = r.raw("hmt_rate_pico");
    if (!v.is_number_integer()) throw ConfigError("service.hmt_rate_pico must be an integer");
    s.hmt_rate = v.get<service::Pico>();
  }
  r.string("site_secret", s.site_secret);
  double amplitude = 40.0;
  if (r.has("synth")) {
    Reader y(r.raw("synth"), "service.synth");
    y.number("amplitude", amplitude);
    y.number("background_ratio", s.synth.background_ratio);
    y.number("noise_ratio", s.synth.noise_ratio);
    y.finish();
  }
  r.finish();
  const double bg = s.synth.background_ratio;
  const double noise = s.synth.noise_ratio;
  s.synth = tiles::SynthSpec::defaults(s.categories.size());
  for (auto& p : s.synth.patterns) p.amplitude = amplitude;
  s.synth.background_ratio = bg;
  s.synth.noise_ratio = noise;
}

json backend_json(const BackendConfig& b) {
  return {{"kind", b.kind},
          {"diagonal", b.diagonal},
          {"per_category", b.per_category},
          {"dropout", b.noise.dropout},
          {"distractor_rate", b.noise.distractor_rate},
          {"score_jitter", b.noise.score_jitter},
          {"remote_host", b.remote_host},
          {"remote_port", b.remote_port},
          {"remote_path", b.remote_path}};
}

void parse_backend(const json& j, BackendConfig& b) {
  Reader r(j, "solver.backend");
  r.string("kind", b.kind);
  r.number("diagonal", b.diagonal);
  if (r.has("per_category")) {
    Reader pc(r.raw("per_category"), "solver.backend.per_category");
    b.per_category.clear();
    for (const auto& [name, v] : r.raw("per_category").items()) {
      double d = 0.0;
      pc.number(name.c_str(), d);
      b.per_category[name] = d;
    }
    pc.finish();
  }
  r.number("dropout", b.noise.dropout);
  r.number("distractor_rate", b.noise.distractor_rate);
  r.number("score_jitter", b.noise.score_jitter);
  r.string("remote_host", b.remote_host);
  r.integer("remote_port", b.remote_port);
  r.string("remote_path", b.remote_path);
  r.finish();
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  json variants = json::array();
  for (const auto& p : c.run.variants) variants.push_back(profile_json(p));
  json difficulties = json::array();
  for (auto d : c.run.difficulties) difficulties.push_back(service::to_string(d));
  return {{"seed", c.seed},
          {"scenario", c.scenario},
          {"output_dir", c.output_dir},
          {"clock", c.simulated_clock ? "simulated" : "wall"},
          {"service", service_json(c.service)},
          {"solver",
           {{"backend", backend_json(c.backend)},
            {"tau", c.tau},
            {"latencies_ms",
             {{"page", c.latencies.page.count()},
              {"download", c.latencies.download.count()},
              {"solve", c.latencies.solve.count()},
              {"submit", c.latencies.submit.count()}}},
            {"submit_pacing_ms", c.submit_pacing.count()},
            {"persist_payloads", c.persist_payloads},
            {"profile", profile_json(c.profile)}}},
          {"run",
           {{"sessions", c.run.sessions},
            {"concurrency", c.run.concurrency},
            {"iterations", c.run.iterations},
            {"session_gap_ms", c.run.session_gap.count()},
            {"trials_per_row", c.run.trials_per_row},
            {"corpus",
             {{"total_draws", c.run.corpus.total_draws},
              {"clusters", c.run.corpus.clusters},
              {"redundant", c.run.corpus.redundant}}},
            {"variants", variants},
            {"difficulties", difficulties}}},
          {"network", {{"host", c.network.host}, {"port", c.network.port}}}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  Reader r(j, "");
  if (r.has("seed")) {
    const auto& v = r.raw("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ConfigError("seed must be a non-negative integer");
    }
    c.seed = v.get<std::uint64_t>();
  }
  r.string("scenario", c.scenario);
  r.string("output_dir", c.output_dir);
  if (r.has("clock")) {
    const auto& v = r.raw("clock");
    if (v != "simulated" && v != "wall") throw ConfigError("clock must be \"simulated\" or \"wall\"");
    c.simulated_clock = v == "simulated";
  }
  if (r.has("service")) parse_service(r.raw("service"), c.service);
  if (r.has("solver")) {
    Reader s(r.raw("solver"), "solver");
    if (s.has("backend")) parse_backend(s.raw("backend"), c.backend);
    s.integer("tau", c.tau);
    if (s.has("latencies_ms")) {
      Reader l(s.raw("latencies_ms"), "solver.latencies_ms");
      l.millis("page", c.latencies.page);
      l.millis("download", c.latencies.download);
      l.millis("solve", c.latencies.solve);
      l.millis("submit", c.latencies.submit);
      l.finish();
    }
    s.millis("submit_pacing_ms", c.submit_pacing);
    s.boolean("persist_payloads", c.persist_payloads);
    if (s.has("profile")) c.profile = parse_profile(s.raw("profile"), "solver.profile");
    s.finish();
  }
  if (r.has("run")) {
    Reader u(r.raw("run"), "run");
    u.integer("sessions", c.run.sessions);
    u.integer("concurrency", c.run.concurrency);
    u.integer("iterations", c.run.iterations);
    u.millis("session_gap_ms", c.run.session_gap);
    u.integer("trials_per_row", c.run.trials_per_row);
    if (u.has("corpus")) {
      Reader k(u.raw("corpus"), "run.corpus");
      k.count("total_draws", c.run.corpus.total_draws);
      k.count("clusters", c.run.corpus.clusters);
      k.count("redundant", c.run.corpus.redundant);
      k.finish();
    }
    if (u.has("variants")) {
      const auto& v = u.raw("variants");
      if (!v.is_array()) throw ConfigError("run.variants must be an array");
      c.run.variants.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        c.run.variants.push_back(parse_profile(v[i], "run.variants[" + std::to_string(i) + "]"));
      }
    }
    if (u.has("difficulties")) {
      const auto& v = u.raw("difficulties");
      if (!v.is_array()) throw ConfigError("run.difficulties must be an array");
      c.run.difficulties.clear();
      for (const auto& d : v) {
        if (!d.is_string()) throw ConfigError("run.difficulties must hold level names");
        c.run.difficulties.push_back(service::difficulty_from_string(d.get<std::string>()));
      }
    }
    u.finish();
  }
  if (r.has("network")) {
    Reader n(r.raw("network"), "network");
    n.string("host", c.network.host);
    n.integer("port", c.network.port);
    n.finish();
  }
  r.finish();
  return c;
}

void validate(const ExperimentConfig& c) {
  if (std::ranges::find(kScenarios, c.scenario) == kScenarios.end()) {
    throw ConfigError("unknown scenario: " + c.scenario);
  }
  if (c.output_dir.empty()) throw ConfigError("output_dir must not be empty");
  c.service.validate();
  static const std::set<std::string> kinds = {"identity", "confusion", "multilabel", "remote"};
  if (!kinds.contains(c.backend.kind)) throw ConfigError("solver.backend.kind must be identity, confusion, multilabel or remote");
  if (!(c.backend.diagonal >= 0.0 && c.backend.diagonal <= 1.0)) throw ConfigError("solver.backend.diagonal outside [0, 1]");
  for (const auto& [name, d] : c.backend.per_category) {
    if (!c.service.categories.find(name)) throw ConfigError("solver.backend.per_category: unknown category " + name);
    if (!(d >= 0.0 && d <= 1.0)) throw ConfigError("solver.backend.per_category." + name + " outside [0, 1]");
  }
  for (double v : {c.backend.noise.dropout, c.backend.noise.distractor_rate, c.backend.noise.score_jitter}) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("solver.backend noise rates must lie in [0, 1]");
  }
  if (c.tau < 0 || c.tau > 64) throw ConfigError("solver.tau must be in [0, 64]");
  for (auto l : {c.latencies.page, c.latencies.download, c.latencies.solve, c.latencies.submit, c.submit_pacing}) {
    if (l.count() < 0) throw ConfigError("solver latencies must be >= 0");
  }
  if (c.run.sessions < 0) throw ConfigError("run.sessions must be >= 0");
  if (c.run.concurrency < 1) throw ConfigError("run.concurrency must be >= 1");
  if (c.run.iterations < 1) throw ConfigError("run.iterations must be >= 1");
  if (c.run.session_gap.count() < 0) throw ConfigError("run.session_gap_ms must be >= 0");
  if (c.run.trials_per_row < 1) throw ConfigError("run.trials_per_row must be >= 1");
  if (c.network.port < 0 || c.network.port > 65535) throw ConfigError("network.port outside [0, 65535]");
}

json scenario_preset(std::string_view scenario) {
  if (scenario == "campaign") {
    return {{"output_dir", "runs/campaign"}, {"run", {{"sessions", 270}}}, {"solver", {{"persist_payloads", true}}}};
  }
  if (scenario == "flexibility") {
    return {{"output_dir", "runs/flexibility"}, {"run", {{"trials_per_row", 10000}}}};
  }
  if (scenario == "ip-study") {
    return {{"output_dir", "runs/ip-study"},
            {"solver", {{"backend", {{"diagonal", 0.965}}}}},
            {"run",
             {{"sessions", 200},
              {"session_gap_ms", 30000},
              {"variants", json::array({{{"ip_tag", "academic"}}, {{"ip_tag", "vpn"}}, {{"ip_tag", "tor"}}})}}}};
  }
  if (scenario == "adaptability") {
    return {{"output_dir", "runs/adaptability"},
            {"solver", {{"backend", {{"diagonal", 0.965}}}}},
            {"run",
             {{"sessions", 100},
              {"variants", json::array({"regular", "automation", "headless"})}}}};
  }
  if (scenario == "blocking") {
    return {{"output_dir", "runs/blocking"},
            {"solver", {{"backend", {{"diagonal", 0.965}}}}},
            {"run", {{"sessions", 400}, {"session_gap_ms", 1000}, {"difficulties", {"moderate", "difficult"}}}}};
  }
  if (scenario == "concurrency") {
    return {{"output_dir", "runs/concurrency"},
            {"service", {{"rate_limit", {{"concurrency_cap", 25}}}}},
            {"run", {{"sessions", 50}, {"concurrency", 50}, {"iterations", 10}, {"session_gap_ms", 2000}}}};
  }
  if (scenario == "dedup") {
    return {{"output_dir", "runs/dedup"}};
  }
  if (scenario == "oracle") {
    return {{"output_dir", "runs/oracle"}};
  }
  throw ConfigError("unknown scenario: " + std::string(scenario));
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) throw ConfigError("seed must be an unsigned 64-bit integer");
  return v;
}

ExperimentConfig resolve_config(std::string_view scenario, const json& file,
                                std::optional<std::uint64_t> seed_override, const char* env_seed) {
  json merged = to_json(ExperimentConfig{});
  merged.merge_patch(scenario_preset(scenario));
  if (!file.is_null()) {
    if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
    // Validate the file on its own first so unknown keys are reported against it.
    (void)config_from_json(file);
    merged.merge_patch(file);
  }
  merged["scenario"] = std::string(scenario);
  ExperimentConfig c = config_from_json(merged);
  if (env_seed != nullptr && *env_seed != '\0') c.seed = parse_seed(env_seed);
  if (seed_override) c.seed = *seed_override;
  c.service.seed = c.seed;
  validate(c);
  return c;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
  }
}

}  // namespace gauntlet::runner

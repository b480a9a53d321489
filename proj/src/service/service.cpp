#include "gauntlet/service/service.hpp"

#include <algorithm>

namespace gauntlet::service {

using nlohmann::json;

void ServiceConfig::validate() const {
  if (categories.size() < 2) throw ConfigError("at least two categories are needed");
  if (synth.patterns.size() != categories.size()) throw ConfigError("synth patterns must match the category count");
  synth.validate();
  shape.validate();
  difficulty_table.validate();
  limits.validate();
  if (payload_ttl.count() <= 0 || answer_ttl.count() <= 0 || session_ttl.count() <= 0 || token_ttl.count() <= 0) {
    throw ConfigError("ttls must be > 0");
  }
  if (!(reuse_probability >= 0.0 && reuse_probability < 1.0)) throw ConfigError("reuse_probability must be in [0, 1)");
  if (!(flag_threshold >= 0.0 && flag_threshold <= 1.0)) throw ConfigError("flag_threshold outside [0, 1]");
  if (hmt_rate < 0) throw ConfigError("hmt rate must be >= 0");
  if (site_secret.empty()) throw ConfigError("site_secret must not be empty");
}

namespace {

ServiceConfig validated(ServiceConfig c) {
  c.validate();
  return c;
}

}  // namespace

Service::Service(ServiceConfig config)
    : config_(validated(std::move(config))),
      factory_(config_.categories, config_.shape),
      pool_(config_.synth, config_.categories.size(), config_.reuse_probability, Rng::stream(config_.seed, "pool")),
      ip_window_(config_.limits),
      minter_(mix_seed(config_.seed, name_hash("token"))),
      tokens_(config_.site_secret, config_.token_ttl),
      ledger_(config_.hmt_rate, config_.flagged_sessions_earn),
      session_ids_(Rng::stream(config_.seed, "session")),
      challenge_root_(Rng::stream(config_.seed, "challenge")),
      grade_root_(Rng::stream(config_.seed, "grade")) {}

Service::Session& Service::find_session(const std::string& id) {
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiError(404, "unknown session");
  return it->second;
}

void Service::close(Session& s) {
  s.closed = true;
  s.active.reset();
  open_.erase(s.id);
}

std::size_t Service::open_sessions_locked(Millis now) const {
  std::size_t n = 0;
  for (const auto& id : open_) {
    if (now - sessions_.at(id).created_at < config_.session_ttl) ++n;
  }
  return n;
}

std::size_t Service::open_sessions(Millis now) const {
  std::lock_guard lock(mu_);
  return open_sessions_locked(now);
}

void Service::require_ip(IpTag tag, Millis now) const {
  if (!ip_window_.would_admit(tag, now)) throw ApiError(429, std::string(wire::kTooManyRequestsMessage));
}

std::string Service::create_session(const ClientProfile& profile, Millis now) {
  std::lock_guard lock(mu_);
  require_ip(profile.ip_tag, now);
  if (open_sessions_locked(now) >= static_cast<std::size_t>(config_.limits.concurrency_cap)) {
    throw ApiError(429, std::string(wire::kTooManyRequestsMessage));
  }
  ip_window_.admit(profile.ip_tag, now);
  std::string id = "s" + random_id(session_ids_);
  while (sessions_.contains(id)) id = "s" + random_id(session_ids_);
  Session s;
  s.id = id;
  s.profile = profile;
  s.created_at = now;
  s.threat = threat_score(profile);
  s.flagged = s.threat >= config_.flag_threshold;
  fingerprints_.push_back({id, now, profile, s.threat, s.flagged});
  sessions_.emplace(id, std::move(s));
  open_.insert(id);
  return id;
}

json Service::issue_challenge(const std::string& session_id, Millis now) {
  Challenge copy;
  {
    std::lock_guard lock(mu_);
    auto& s = find_session(session_id);
    require_ip(s.profile.ip_tag, now);
    if (s.closed) throw ApiError(409, "session closed");
    if (now - s.created_at >= config_.session_ttl) throw ApiError(410, "session expired");
    if (s.active && now < s.active->deadline) throw ApiError(409, "challenge already active");
    ip_window_.admit(s.profile.ip_tag, now);

    DifficultyKnobs knobs = config_.difficulty_table.at(config_.difficulty);
    if (config_.adaptive) knobs = escalate(knobs, s.threat);
    auto active = std::make_unique<Active>();
    active->serial = challenge_serial_++;
    Rng rng = challenge_root_.fork(active->serial);
    active->challenge = factory_.make(pool_, rng, knobs, now, config_.payload_ttl);
    active->next_round = 0;
    active->deadline = now + config_.answer_ttl;
    copy = active->challenge;
    s.active = std::move(active);
  }
  // Encoding touches only the immutable copy, so it runs outside the lock.
  return wire::encode_round(copy, 0, config_.payload_ttl.count());
}

AnswerResult Service::answer(const std::string& session_id, const std::string& challenge_id,
                             const std::vector<std::vector<std::string>>& selections, Millis now) {
  Challenge next_copy;
  std::size_t next_index = 0;
  {
    std::lock_guard lock(mu_);
    auto& s = find_session(session_id);
    require_ip(s.profile.ip_tag, now);
    if (s.last_submit_at && !submit_gap_ok(config_.limits, *s.last_submit_at, now)) {
      throw ApiError(429, std::string(wire::kRateLimitedMessage));
    }
    if (s.closed) throw ApiError(409, "session closed");
    if (!s.active || s.active->challenge.challenge_id != challenge_id) throw ApiError(409, "no such active challenge");
    auto& a = *s.active;
    if (now >= a.deadline) {
      ip_window_.admit(s.profile.ip_tag, now);
      close(s);
      throw ApiError(410, "challenge expired");
    }
    const std::size_t round = a.next_round;
    if (selections.size() != round + 1) throw ApiError(400, "selections must hold one list per served round");
    for (std::size_t r = 0; r < round; ++r) {
      if (selections[r] != a.answered[r]) throw ApiError(400, "earlier rounds may not be changed");
    }
    try {
      (void)condition_of(a.challenge.rounds[round], a.challenge.target, a.challenge.prompt_type, selections[round]);
    } catch (const InvalidSelection& e) {
      throw ApiError(400, e.what());
    }

    ip_window_.admit(s.profile.ip_tag, now);
    s.last_submit_at = now;
    a.answered.push_back(selections[round]);
    a.next_round = round + 1;

    if (a.next_round < a.challenge.rounds.size()) {
      next_copy = a.challenge;
      next_index = a.next_round;
    } else {
      Rng rng = grade_root_.fork(a.serial);
      Selection sel{a.challenge.challenge_id, a.answered};
      const auto decision = grade_challenge(a.challenge, sel, config_.policy, rng);
      decisions_.push_back({s.id, a.challenge.challenge_id, a.challenge.target, a.challenge.prompt_type,
                            decision.conditions, decision.classes, decision.probability, decision.pass});
      AnswerResult result;
      result.status = decision.pass ? AnswerResult::Status::Pass : AnswerResult::Status::Fail;
      if (decision.pass) {
        s.verified = true;
        result.token = minter_.mint();
        tokens_.insert(result.token, s.id, now);
        ledger_.credit(true, s.flagged);
      }
      close(s);
      return result;
    }
  }
  AnswerResult result;
  result.status = AnswerResult::Status::Next;
  result.next_round = wire::encode_round(next_copy, next_index, config_.payload_ttl.count());
  return result;
}

wire::VerifyResponse Service::siteverify(std::string_view secret, std::string_view token, Millis now) {
  std::lock_guard lock(mu_);
  return tokens_.verify(secret, token, now);
}

json Service::ledger_json() const {
  std::lock_guard lock(mu_);
  return {{"hmt_balance", to_hmt(ledger_.balance())},
          {"hmt_balance_decimal", format_hmt(ledger_.balance())},
          {"hmt_balance_pico", ledger_.balance()},
          {"per_solve_rate_pico", ledger_.per_solve_rate()},
          {"solves", ledger_.solves()},
          {"credited_solves", ledger_.credited()}};
}

Pico Service::hmt_balance() const {
  std::lock_guard lock(mu_);
  return ledger_.balance();
}

std::uint64_t Service::solves() const {
  std::lock_guard lock(mu_);
  return ledger_.solves();
}

std::vector<FingerprintEntry> Service::fingerprints() const {
  std::lock_guard lock(mu_);
  return fingerprints_;
}

std::vector<DecisionRecord> Service::decisions() const {
  std::lock_guard lock(mu_);
  return decisions_;
}

std::vector<tiles::DrawRecord> Service::pool_draw_log() const {
  std::lock_guard lock(mu_);
  return pool_.draw_log();
}

json Service::state_snapshot() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  ids.reserve(sessions_.size());
  for (const auto& [id, _] : sessions_) ids.push_back(id);
  std::ranges::sort(ids);
  json sessions = json::array();
  for (const auto& id : ids) {
    const auto& s = sessions_.at(id);
    json a = nullptr;
    if (s.active) {
      a = {{"challenge_id", s.active->challenge.challenge_id},
           {"next_round", s.active->next_round},
           {"answered", s.active->answered},
           {"deadline", s.active->deadline.count()}};
    }
    sessions.push_back({{"id", id},
                        {"verified", s.verified},
                        {"closed", s.closed},
                        {"last_submit_at", s.last_submit_at ? json(s.last_submit_at->count()) : json(nullptr)},
                        {"active", a}});
  }
  return {{"sessions", sessions},
          {"open", open_.size()},
          {"challenge_serial", challenge_serial_},
          {"pool_slots", pool_.slots().size()},
          {"pool_draws", pool_.draw_log().size()},
          {"tokens", tokens_.size()},
          {"tokens_consumed", tokens_.consumed()},
          {"hmt_balance_pico", ledger_.balance()},
          {"solves", ledger_.solves()},
          {"ip_window", ip_window_.sizes()},
          {"fingerprints", fingerprints_.size()},
          {"decisions", decisions_.size()}};
}

}  // namespace gauntlet::service

#include "gauntlet/solver/solver.hpp"

#include <fstream>
#include <thread>

#include "gauntlet/hashkit/phash.hpp"

namespace gauntlet::solver {

CategoryId parse_prompt(std::string_view prompt, const CategorySet& categories) {
  for (std::string_view lead : {"containing an ", "containing a "}) {
    if (const auto pos = prompt.rfind(lead); pos != std::string_view::npos) {
      auto name = prompt.substr(pos + lead.size());
      while (!name.empty() && (name.back() == '.' || name.back() == ' ')) name.remove_suffix(1);
      if (const auto id = categories.find(name)) return *id;
      throw FormatError("prompt names an unknown category: " + std::string(name));
    }
  }
  throw FormatError("unrecognized prompt: " + std::string(prompt));
}

SolverSession::SolverSession(const SolverConfig& config, wire::Transport& transport,
                             const classifiers::Labeler& labeler, DedupCache& cache, std::uint64_t index, Rng rng,
                             bool simulated)
    : config_(config), client_(transport), labeler_(labeler), cache_(cache), rng_(rng), simulated_(simulated) {
  record_.index = index;
  record_.ip_tag = std::string(to_string(config.profile.ip_tag));
}

void SolverSession::enter(Stage stage, Millis now) {
  const auto spent = (now - mark_).count();
  switch (stage_) {
    case Stage::Acquire:
      record_.timings.acquire += spent;
      break;
    case Stage::Solve:
      record_.timings.solve += spent;
      break;
    case Stage::Submit:
      record_.timings.submit_verify += spent;
      break;
  }
  stage_ = stage;
  mark_ = now;
}

std::optional<Millis> SolverSession::finish(Outcome outcome, std::string message, Millis now) {
  enter(stage_, now);
  record_.outcome = outcome;
  record_.message = std::move(message);
  record_.total_ms = (now - started_).count();
  state_ = State::Done;
  return std::nullopt;
}

void SolverSession::persist(const wire::ChallengeView& view) const {
  if (!config_.payload_dir) return;
  for (const auto& t : view.tiles) {
    write_pgm(*config_.payload_dir /
                  (view.challenge_id + "-r" + std::to_string(view.round) + "-" + t.tile_id + ".pgm"),
              t.image);
  }
}

void SolverSession::classify_round(const wire::ChallengeView& view) {
  std::vector<std::string> chosen;
  for (const auto& t : view.tiles) {
    const auto hash = hashkit::phash64(t.image);
    TileDecision d;
    d.round = view.round;
    d.tile_id = t.tile_id;
    d.phash = hash.bits;
    classifiers::CategoryMask mask;
    if (const auto hit = cache_.lookup(hash)) {
      mask = *hit;
      d.cached = true;
      ++record_.cache_hits;
    } else {
      // Per-tile substream: a cache hit elsewhere never shifts this tile's draws.
      Rng tile_rng = rng_.fork(record_.tiles.size());
      mask = labeler_.label(t.image, tile_rng);
      cache_.store(hash, mask);
      ++record_.backend_calls;
    }
    d.labels = mask.bits;
    d.selected = mask.contains(target_);
    if (d.selected) chosen.push_back(t.tile_id);
    record_.tiles.push_back(std::move(d));
  }
  record_.selected_per_round.push_back(static_cast<int>(chosen.size()));
  selections_.push_back(std::move(chosen));
}

std::optional<Millis> SolverSession::step(Millis now) {
  try {
    switch (state_) {
      case State::Start:
        started_ = now;
        mark_ = now;
        record_.session_id = client_.open_session(config_.profile);
        state_ = State::Fetch;
        return after(now, config_.latencies.page);

      case State::Fetch:
        view_ = client_.fetch_challenge(record_.session_id);
        record_.challenge_id = view_.challenge_id;
        record_.rounds = 1;
        received_at_ = now;
        persist(view_);
        state_ = State::Solve;
        return after(now, config_.latencies.download);

      case State::Solve:
        if ((now - received_at_).count() > view_.expires_in_ms) return finish(Outcome::Error, "payload expired", now);
        enter(Stage::Solve, now);
        target_ = parse_prompt(view_.prompt_text, config_.categories);
        record_.target = config_.categories.name(target_);
        classify_round(view_);
        state_ = State::SubmitWait;
        return after(now, config_.latencies.solve);

      case State::SubmitWait:
        enter(Stage::Submit, now);
        state_ = State::Submit;
        return after(now, config_.latencies.submit);

      case State::Submit: {
        if (last_submit_ && now - *last_submit_ < config_.submit_pacing) return *last_submit_ + config_.submit_pacing;
        last_submit_ = now;
        auto reply = client_.answer(record_.session_id, view_.challenge_id, selections_);
        switch (reply.status) {
          case AnswerReply::Status::Next:
            view_ = std::move(*reply.next);
            ++record_.rounds;
            received_at_ = now;
            persist(view_);
            enter(Stage::Acquire, now);
            state_ = State::Solve;
            return after(now, config_.latencies.download);
          case AnswerReply::Status::Fail:
            return finish(Outcome::Fail, "", now);
          case AnswerReply::Status::Pass:
            record_.token = reply.token;
            if (config_.self_verify) record_.verified = client_.siteverify(config_.site_secret, reply.token).success;
            return finish(Outcome::Pass, "", now);
        }
        return finish(Outcome::Error, "unreachable", now);
      }

      case State::Done:
        return std::nullopt;
    }
  } catch (const Blocked& e) {
    return finish(Outcome::Blocked, e.what(), now);
  } catch (const Error& e) {
    return finish(Outcome::Error, e.what(), now);
  }
  return std::nullopt;
}

SessionRecord run_simulated(SolverSession& session, SimClock& clock) {
  auto wake = session.step(clock.now());
  while (wake) {
    if (*wake > clock.now()) clock.set(*wake);
    wake = session.step(clock.now());
  }
  return session.record();
}

SessionRecord run_wall(SolverSession& session, const Clock& clock) {
  auto wake = session.step(clock.now());
  while (wake) {
    const auto now = clock.now();
    if (*wake > now) std::this_thread::sleep_for(*wake - now);
    wake = session.step(clock.now());
  }
  return session.record();
}

}  // namespace gauntlet::solver
